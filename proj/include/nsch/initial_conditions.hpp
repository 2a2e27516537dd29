#pragma once

// Initial-condition presets. Random draws use std::mt19937_64 with a
// hand-rolled conversion to double, so streams agree across standard
// libraries, and are generated in an N-independent wavevector order so
// the same seed yields the same field on every grid that resolves it.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nsch/spectral.hpp"

namespace nsch {

/// a_cos cos(n.x) + a_sin sin(n.x).
struct ModeSpec {
  int k1 = 0;
  int k2 = 0;
  double a_cos = 0.0;
  double a_sin = 0.0;
};

/// Parses "k1:k2:a_cos[:a_sin]" entries separated by commas or whitespace.
std::vector<ModeSpec> parse_modes(const std::string& text);

ScalarField modes_field(const Grid& grid, const std::vector<ModeSpec>& modes);

/// Rescales f so that its maximum over the 2x grid equals target, never above it.
ScalarField rescale_linf(const ScalarField& f, double target);

/// Mean-zero field with independent uniform coefficients on 1 <= |n| <= band.
ScalarField random_band_raw(const Grid& grid, std::uint64_t seed, int band);

/// random_band_raw rescaled to ||.||_inf = target_linf on the 2x grid.
ScalarField random_band(const Grid& grid, std::uint64_t seed, int band, double target_linf);

/// Two tanh-profile discs, projected to mean zero and rescaled to target_linf.
ScalarField two_bubble(const Grid& grid, double width, double target_linf);

enum class VelocityKind { zero, taylor_green, random_band };

/// Divergence-free velocity; random_band derives it from a random stream
/// function and scales to ||u||_inf ~ amplitude.
VectorField initial_velocity(const Grid& grid, VelocityKind kind, double amplitude, std::uint64_t seed, int band);

/// 53-bit uniform double in [0, 1) from one 64-bit draw.
inline double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace nsch
