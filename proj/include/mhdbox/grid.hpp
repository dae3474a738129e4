#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

namespace mhdbox {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Periodic box discretization: n points per axis on [0, l)^3, samples stored
// x-fastest.  Mode index i on an axis carries the signed integer frequency
// m = i for i < n/2 and m = i - n otherwise; the physical wavenumber is
// (2*pi/l) * m.  The dealias mask keeps modes with 3*|m_i| < n on every axis
// (the 2/3 rule), so quadratic products of masked fields are alias-free on
// the retained modes.
struct Grid {
  int n = 0;
  double l = kTwoPi;
  double k0 = 1.0;                   // 2*pi/l
  std::vector<int> freq;             // per-axis signed frequency, size n
  std::vector<std::uint8_t> dealias; // per-mode mask, size n^3

  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }
  std::size_t idx(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) +
           static_cast<std::size_t>(n) * (static_cast<std::size_t>(iy) +
                                          static_cast<std::size_t>(n) * iz);
  }
  double cell_volume() const {
    double h = l / n;
    return h * h * h;
  }
  double volume() const { return l * l * l; }
  // squared integer frequency of a mode
  long msq(int ix, int iy, int iz) const {
    long mx = freq[ix], my = freq[iy], mz = freq[iz];
    return mx * mx + my * my + mz * mz;
  }
};

using GridPtr = std::shared_ptr<const Grid>;

// n must be even and >= 4; l > 0.  Throws std::invalid_argument otherwise.
GridPtr make_grid(int n, double l = kTwoPi);

}  // namespace mhdbox
