#include "nsch/initial_conditions.hpp"

#include <numbers>
#include <random>
#include <sstream>

namespace nsch {

namespace {

void require_representable(const Grid& g, int k1, int k2, const std::string& what) {
  const int h = g.size() / 2;
  if (std::abs(k1) >= h || std::abs(k2) >= h) {
    throw ConfigError(what + ": wavevector (" + std::to_string(k1) + ", " + std::to_string(k2) +
                      ") is not resolved below the Nyquist wavenumber of N = " + std::to_string(g.size()));
  }
}

}  // namespace

std::vector<ModeSpec> parse_modes(const std::string& text) {
  std::vector<ModeSpec> out;
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',' || c == ';') c = ' ';
  }
  std::istringstream in(cleaned);
  std::string item;
  while (in >> item) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = item.find(':', start);
      parts.push_back(item.substr(start, colon - start));
      if (colon == std::string::npos) break;
      start = colon + 1;
    }
    if (parts.size() < 3 || parts.size() > 4) {
      throw ConfigError("mode entry '" + item + "' must be k1:k2:a_cos[:a_sin]");
    }
    try {
      std::size_t used = 0;
      ModeSpec m;
      m.k1 = std::stoi(parts[0], &used);
      if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
      m.k2 = std::stoi(parts[1], &used);
      if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
      m.a_cos = std::stod(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
      if (parts.size() == 4) {
        m.a_sin = std::stod(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
      }
      out.push_back(m);
    } catch (const std::logic_error&) {
      throw ConfigError("mode entry '" + item + "' has a malformed number");
    }
  }
  if (out.empty()) throw ConfigError("mode list is empty");
  return out;
}

ScalarField modes_field(const Grid& grid, const std::vector<ModeSpec>& modes) {
  ScalarField f(grid);
  for (const ModeSpec& m : modes) {
    if (m.k1 == 0 && m.k2 == 0) throw ConfigError("the zero mode would give theta a nonzero mean");
    require_representable(grid, m.k1, m.k2, "mode list");
    const std::complex<double> c(0.5 * m.a_cos, -0.5 * m.a_sin);
    f.at(m.k1, m.k2) += c;
    f.at(-m.k1, -m.k2) += std::conj(c);
  }
  return f;
}

ScalarField rescale_linf(const ScalarField& f, double target) {
  const double sup = linf_norm(f, 2);
  if (!(sup > 0.0)) throw PreconditionError("cannot rescale the zero field");
  ScalarField out = (target / sup) * f;
  // rounding may land a few ulps above target; callers compare with <=
  for (int i = 0; i < 8 && linf_norm(out, 2) > target; ++i) out *= 1.0 - 0x1.0p-52;
  return out;
}

ScalarField random_band_raw(const Grid& grid, std::uint64_t seed, int band) {
  if (band < 1) throw ConfigError("random band must be >= 1");
  require_representable(grid, band, 0, "random band");
  std::mt19937_64 rng(seed);
  ScalarField f(grid);
  // Upper half plane in a fixed order: k2 = 0 with k1 > 0, then k2 > 0.
  for (int k2 = 0; k2 <= band; ++k2) {
    for (int k1 = -band; k1 <= band; ++k1) {
      if (k2 == 0 && k1 <= 0) continue;
      if (k1 * k1 + k2 * k2 > band * band) continue;
      const double re = 2.0 * unit_double(rng()) - 1.0;
      const double im = 2.0 * unit_double(rng()) - 1.0;
      const std::complex<double> c(re, im);
      f.at(k1, k2) = c;
      f.at(-k1, -k2) = std::conj(c);
    }
  }
  return f;
}

ScalarField random_band(const Grid& grid, std::uint64_t seed, int band, double target_linf) {
  return rescale_linf(random_band_raw(grid, seed, band), target_linf);
}

ScalarField two_bubble(const Grid& grid, double width, double target_linf) {
  if (!(width > 0.0)) throw ConfigError("bubble width must be positive");
  constexpr double pi = std::numbers::pi;
  struct Disc {
    double c1, c2, r;
  };
  const Disc discs[2] = {{pi - 1.2, pi, 1.0}, {pi + 1.2, pi, 0.7}};
  auto periodic = [](double d) {
    d = std::fmod(std::abs(d), 2.0 * pi);
    return std::min(d, 2.0 * pi - d);
  };
  ScalarField f = from_function(grid, [&](double x1, double x2) {
    double v = -1.0;
    for (const Disc& d : discs) {
      const double dist = std::hypot(periodic(x1 - d.c1), periodic(x2 - d.c2));
      v += 1.0 + std::tanh((d.r - dist) / (std::numbers::sqrt2 * width));
    }
    return v;
  });
  f.coeffs()(0, 0) = 0.0;
  return rescale_linf(f, target_linf);
}

VectorField initial_velocity(const Grid& grid, VelocityKind kind, double amplitude, std::uint64_t seed, int band) {
  switch (kind) {
    case VelocityKind::zero:
      return VectorField(grid);
    case VelocityKind::taylor_green: {
      ScalarField u1 = from_function(grid, [&](double x1, double x2) { return amplitude * std::sin(x1) * std::cos(x2); });
      ScalarField u2 = from_function(grid, [&](double x1, double x2) { return -amplitude * std::cos(x1) * std::sin(x2); });
      return VectorField(std::move(u1), std::move(u2));
    }
    case VelocityKind::random_band: {
      // Stream-function draws come from a decorrelated seed so theta and u
      // never share a stream.
      const ScalarField psi = random_band_raw(grid, seed ^ 0x9E3779B97F4A7C15ULL, band);
      VectorField u(derivative(psi, 1), -derivative(psi, 0));
      const double sup = std::max(linf_norm(u.u1, 2), linf_norm(u.u2, 2));
      return (amplitude / sup) * u;
    }
  }
  throw ConfigError("unknown velocity kind");
}

}  // namespace nsch
