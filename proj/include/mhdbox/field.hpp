#pragma once

#include <array>
#include <complex>
#include <vector>

#include "mhdbox/grid.hpp"

namespace mhdbox {

using cplx = std::complex<double>;

// Complex Fourier coefficients of a real scalar field.  Convention: the
// forward transform is the plain unnormalized DFT (sum of samples against
// e^{-ik.x}); the inverse divides by n^3.  A real field keeps Hermitian
// symmetry a[-k] = conj(a[k]).
struct ScalarFieldK {
  GridPtr grid;
  std::vector<cplx> a;

  ScalarFieldK() = default;
  explicit ScalarFieldK(GridPtr g) : grid(std::move(g)), a(grid->size()) {}
};

// Real samples of a scalar field on the grid, x-fastest.
struct ScalarFieldR {
  GridPtr grid;
  std::vector<double> v;

  ScalarFieldR() = default;
  explicit ScalarFieldR(GridPtr g) : grid(std::move(g)), v(grid->size(), 0.0) {}
};

struct VectorFieldK {
  std::array<ScalarFieldK, 3> c;

  VectorFieldK() = default;
  explicit VectorFieldK(const GridPtr& g)
      : c{ScalarFieldK(g), ScalarFieldK(g), ScalarFieldK(g)} {}
  const GridPtr& grid() const { return c[0].grid; }
  ScalarFieldK& operator[](int i) { return c[i]; }
  const ScalarFieldK& operator[](int i) const { return c[i]; }
};

struct VectorFieldR {
  std::array<ScalarFieldR, 3> c;

  VectorFieldR() = default;
  explicit VectorFieldR(const GridPtr& g)
      : c{ScalarFieldR(g), ScalarFieldR(g), ScalarFieldR(g)} {}
  const GridPtr& grid() const { return c[0].grid; }
  ScalarFieldR& operator[](int i) { return c[i]; }
  const ScalarFieldR& operator[](int i) const { return c[i]; }
};

void require_same_grid(const GridPtr& a, const GridPtr& b);

}  // namespace mhdbox
