#include "nsch/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace nsch {

namespace {

constexpr char kMagic[5] = {'N', 'S', 'C', 'H', '1'};

template <typename U>
void put_le(std::ostream& out, U v) {
  char bytes[sizeof(U)];
  for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, sizeof(U));
}

template <typename U>
U get_le(std::istream& in, const char* what) {
  unsigned char bytes[sizeof(U)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(U))) {
    throw FormatError(std::string("snapshot truncated while reading ") + what);
  }
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(bytes[i]) << (8 * i);
  return v;
}

void put_values(std::ostream& out, const GridArray<double>& a) {
  for (Eigen::Index j2 = 0; j2 < a.cols(); ++j2) {
    for (Eigen::Index j1 = 0; j1 < a.rows(); ++j1) put_le(out, std::bit_cast<std::uint64_t>(a(j1, j2)));
  }
}

GridArray<double> get_values(std::istream& in, std::uint32_t n, const char* what) {
  GridArray<double> a(n, n);
  for (std::uint32_t j2 = 0; j2 < n; ++j2) {
    for (std::uint32_t j1 = 0; j1 < n; ++j1) a(j1, j2) = std::bit_cast<double>(get_le<std::uint64_t>(in, what));
  }
  return a;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream f(path, mode);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace

Snapshot snapshot_of(const SimState& s) {
  Snapshot snap;
  snap.n = static_cast<std::uint32_t>(s.grid().size());
  snap.t = s.t;
  snap.theta = inverse_transform(s.theta);
  snap.u1 = inverse_transform(s.u.u1);
  snap.u2 = inverse_transform(s.u.u2);
  return snap;
}

SimState state_from_snapshot(const Snapshot& snap) {
  const Grid g(static_cast<int>(snap.n));
  SimState s(forward_transform(g, snap.theta),
             VectorField(forward_transform(g, snap.u1), forward_transform(g, snap.u2)));
  s.t = snap.t;
  return s;
}

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  const auto n = static_cast<Eigen::Index>(snap.n);
  for (const auto* a : {&snap.theta, &snap.u1, &snap.u2}) {
    if (a->rows() != n || a->cols() != n) throw DataError("snapshot arrays do not match N");
  }
  out.write(kMagic, sizeof(kMagic));
  put_le(out, kSnapshotVersion);
  put_le(out, snap.n);
  put_le(out, std::bit_cast<std::uint64_t>(snap.t));
  put_values(out, snap.theta);
  put_values(out, snap.u1);
  put_values(out, snap.u2);
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  auto f = open_out(path, std::ios::out | std::ios::binary);
  write_snapshot(f, snap);
  finish(f, path);
}

Snapshot read_snapshot(std::istream& in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic))) throw FormatError("snapshot truncated while reading magic");
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw FormatError("not a snapshot file: bad magic");
  const auto version = get_le<std::uint16_t>(in, "version");
  if (version != kSnapshotVersion) {
    throw FormatError("unsupported snapshot version " + std::to_string(version) + " (reader supports " +
                      std::to_string(kSnapshotVersion) + ")");
  }
  Snapshot snap;
  snap.n = get_le<std::uint32_t>(in, "N");
  if (snap.n < 8 || snap.n % 2 != 0 || snap.n > 65536) {
    throw FormatError("snapshot grid size " + std::to_string(snap.n) + " is invalid");
  }
  snap.t = std::bit_cast<double>(get_le<std::uint64_t>(in, "t"));
  snap.theta = get_values(in, snap.n, "theta");
  snap.u1 = get_values(in, snap.n, "u1");
  snap.u2 = get_values(in, snap.n, "u2");
  return snap;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open snapshot '" + path + "'");
  try {
    return read_snapshot(f);
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_csv_header(std::ostream& out) {
  const auto& names = record_field_names();
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const DiagnosticsRecord& r) {
  char buf[64];
  auto num = [&](double v, bool last = false) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf << (last ? '\n' : ',');
  };
  num(r.t);
  num(r.mass);
  num(r.E_kin);
  num(r.E_free);
  num(r.E_total);
  num(r.dissipation);
  num(r.theta_min);
  num(r.theta_max);
  num(r.delta);
  num(r.grad_mu_l2);
  num(r.mean_phi);
  num(r.sobolev_h1_theta);
  num(r.sobolev_h1_u);
  num(r.d0eps_norm);
  out << r.clamp_events << ',';
  num(r.energy_residual, true);
}

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  write_csv_header(out);
  for (const auto& r : records) write_csv_row(out, r);
}

void write_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records) {
  auto f = open_out(path);
  write_csv(f, records);
  finish(f, path);
}

std::vector<DiagnosticsRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("CSV is empty");
  std::ostringstream expected;
  write_csv_header(expected);
  if (line + '\n' != expected.str()) throw FormatError("CSV header does not match the diagnostics record layout");
  std::vector<DiagnosticsRecord> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != record_field_names().size()) {
      throw FormatError("CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) + " fields");
    }
    try {
      DiagnosticsRecord r;
      double* dst[] = {&r.t,          &r.mass,     &r.E_kin,      &r.E_free,           &r.E_total,
                       &r.dissipation, &r.theta_min, &r.theta_max, &r.delta,            &r.grad_mu_l2,
                       &r.mean_phi,   &r.sobolev_h1_theta, &r.sobolev_h1_u, &r.d0eps_norm};
      for (std::size_t i = 0; i < 14; ++i) *dst[i] = std::stod(cells[i]);
      r.clamp_events = std::stoull(cells[14]);
      r.energy_residual = std::stod(cells[15]);
      out.push_back(r);
    } catch (const std::logic_error&) {
      throw FormatError("CSV line " + std::to_string(lineno) + " has a malformed number");
    }
  }
  return out;
}

std::uint8_t heatmap_pixel(double s) {
  const double v = std::floor((s + 1.0) / 2.0 * 255.0 + 0.5);
  if (!(v > 0.0)) return 0;
  if (v > 255.0) return 255;
  return static_cast<std::uint8_t>(v);
}

void write_heatmap(std::ostream& out, const ScalarField& theta) {
  const GridArray<double> v = inverse_transform(theta);
  const auto n = v.rows();
  out << "P5\n" << n << ' ' << n << "\n255\n";
  std::string row(static_cast<std::size_t>(n), '\0');
  for (Eigen::Index j2 = 0; j2 < n; ++j2) {
    for (Eigen::Index j1 = 0; j1 < n; ++j1) row[j1] = static_cast<char>(heatmap_pixel(v(j1, j2)));
    out.write(row.data(), n);
  }
}

void write_heatmap(const std::string& path, const ScalarField& theta) {
  auto f = open_out(path, std::ios::out | std::ios::binary);
  write_heatmap(f, theta);
  finish(f, path);
}

}  // namespace nsch
