#include "mhdbox/grid.hpp"

#include <stdexcept>

#include "mhdbox/field.hpp"

namespace mhdbox {

GridPtr make_grid(int n, double l) {
  if (n < 4 || n % 2 != 0) {
    throw std::invalid_argument("grid size must be an even integer >= 4, got " +
                                std::to_string(n));
  }
  if (!(l > 0.0)) {
    throw std::invalid_argument("box length must be positive");
  }
  auto g = std::make_shared<Grid>();
  g->n = n;
  g->l = l;
  g->k0 = kTwoPi / l;
  g->freq.resize(n);
  for (int i = 0; i < n; ++i) {
    g->freq[i] = (i < n / 2) ? i : i - n;
  }
  g->dealias.assign(g->size(), 0);
  // keep |m_i| < n/3 on every axis (integer form: 3|m_i| < n)
  std::vector<std::uint8_t> axis_keep(n);
  for (int i = 0; i < n; ++i) {
    axis_keep[i] = (3 * std::abs(g->freq[i]) < n) ? 1 : 0;
  }
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        g->dealias[g->idx(ix, iy, iz)] =
            axis_keep[ix] & axis_keep[iy] & axis_keep[iz];
      }
    }
  }
  return g;
}

void require_same_grid(const GridPtr& a, const GridPtr& b) {
  if (a.get() != b.get()) {
    throw std::invalid_argument("fields live on different grids");
  }
}

}  // namespace mhdbox
