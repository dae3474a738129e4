#include "mhdbox/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhdbox {

namespace {

constexpr cplx kImag{0.0, 1.0};

// shared loop over modes; fn(index, kx, ky, kz) with physical wavenumbers
template <typename Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n;
  for (int iz = 0; iz < n; ++iz) {
    const double kz = g.k0 * g.freq[iz];
    for (int iy = 0; iy < n; ++iy) {
      const double ky = g.k0 * g.freq[iy];
      std::size_t base = g.idx(0, iy, iz);
      for (int ix = 0; ix < n; ++ix) {
        fn(base + ix, g.k0 * g.freq[ix], ky, kz);
      }
    }
  }
}

}  // namespace

VectorFieldK curl(const VectorFieldK& v) {
  VectorFieldK out(v.grid());
  const Grid& g = *v.grid();
  for_each_mode(g, [&](std::size_t i, double kx, double ky, double kz) {
    const cplx vx = v[0].a[i], vy = v[1].a[i], vz = v[2].a[i];
    out[0].a[i] = kImag * (ky * vz - kz * vy);
    out[1].a[i] = kImag * (kz * vx - kx * vz);
    out[2].a[i] = kImag * (kx * vy - ky * vx);
  });
  return out;
}

ScalarFieldK divergence(const VectorFieldK& v) {
  ScalarFieldK out(v.grid());
  for_each_mode(*v.grid(), [&](std::size_t i, double kx, double ky, double kz) {
    out.a[i] = kImag * (kx * v[0].a[i] + ky * v[1].a[i] + kz * v[2].a[i]);
  });
  return out;
}

ScalarFieldK derivative(const ScalarFieldK& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("derivative axis must be 0..2");
  ScalarFieldK out(f.grid);
  for_each_mode(*f.grid, [&](std::size_t i, double kx, double ky, double kz) {
    const double k = axis == 0 ? kx : (axis == 1 ? ky : kz);
    out.a[i] = kImag * k * f.a[i];
  });
  return out;
}

VectorFieldK leray_project(const VectorFieldK& v) {
  VectorFieldK out(v.grid());
  for_each_mode(*v.grid(), [&](std::size_t i, double kx, double ky, double kz) {
    const double ksq = kx * kx + ky * ky + kz * kz;
    if (ksq == 0.0) {
      out[0].a[i] = v[0].a[i];
      out[1].a[i] = v[1].a[i];
      out[2].a[i] = v[2].a[i];
      return;
    }
    const cplx kdotv = (kx * v[0].a[i] + ky * v[1].a[i] + kz * v[2].a[i]) / ksq;
    out[0].a[i] = v[0].a[i] - kx * kdotv;
    out[1].a[i] = v[1].a[i] - ky * kdotv;
    out[2].a[i] = v[2].a[i] - kz * kdotv;
  });
  return out;
}

VectorFieldK biot_savart(const VectorFieldK& w) {
  const double norm = l2_norm(w);
  const cplx mean[3] = {w[0].a[0], w[1].a[0], w[2].a[0]};
  const double mean_mag = std::sqrt(std::norm(mean[0]) + std::norm(mean[1]) +
                                    std::norm(mean[2])) /
                          static_cast<double>(w.grid()->size());
  if (mean_mag > 1e-10 * std::max(norm, 1e-300)) {
    throw std::invalid_argument("vorticity with a nonzero mean mode cannot be inverted");
  }
  VectorFieldK out(w.grid());
  for_each_mode(*w.grid(), [&](std::size_t i, double kx, double ky, double kz) {
    const double ksq = kx * kx + ky * ky + kz * kz;
    if (ksq == 0.0) {
      out[0].a[i] = out[1].a[i] = out[2].a[i] = cplx{0.0, 0.0};
      return;
    }
    const cplx wx = w[0].a[i], wy = w[1].a[i], wz = w[2].a[i];
    out[0].a[i] = kImag * (ky * wz - kz * wy) / ksq;
    out[1].a[i] = kImag * (kz * wx - kx * wz) / ksq;
    out[2].a[i] = kImag * (kx * wy - ky * wx) / ksq;
  });
  return out;
}

ScalarFieldK riesz(int axis, const ScalarFieldK& f) {
  if (axis < 1 || axis > 3) throw std::invalid_argument("riesz axis must be 1..3");
  ScalarFieldK out(f.grid);
  for_each_mode(*f.grid, [&](std::size_t i, double kx, double ky, double kz) {
    const double kk = std::sqrt(kx * kx + ky * ky + kz * kz);
    if (kk == 0.0) {
      out.a[i] = cplx{0.0, 0.0};
      return;
    }
    const double k = axis == 1 ? kx : (axis == 2 ? ky : kz);
    out.a[i] = -kImag * (k / kk) * f.a[i];
  });
  return out;
}

ScalarFieldK lambda_s(const ScalarFieldK& f, double s) {
  ScalarFieldK out(f.grid);
  for_each_mode(*f.grid, [&](std::size_t i, double kx, double ky, double kz) {
    out.a[i] = std::pow(1.0 + kx * kx + ky * ky + kz * kz, 0.5 * s) * f.a[i];
  });
  return out;
}

VectorFieldK lambda_s(const VectorFieldK& f, double s) {
  VectorFieldK out;
  for (int i = 0; i < 3; ++i) out.c[i] = lambda_s(f[i], s);
  return out;
}

void dealias(ScalarFieldK& f) {
  const auto& mask = f.grid->dealias;
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    if (!mask[i]) f.a[i] = cplx{0.0, 0.0};
  }
}

void dealias(VectorFieldK& f) {
  for (int i = 0; i < 3; ++i) dealias(f[i]);
}

double lp_norm(const ScalarFieldR& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  for (double x : f.v) acc += std::pow(std::abs(x), p);
  return std::pow(f.grid->cell_volume() * acc, 1.0 / p);
}

double lp_norm(const VectorFieldR& f, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm requires p >= 1");
  const std::size_t sz = f[0].v.size();
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < sz; ++i) {
      const double mag2 = f[0].v[i] * f[0].v[i] + f[1].v[i] * f[1].v[i] +
                          f[2].v[i] * f[2].v[i];
      m = std::max(m, mag2);
    }
    return std::sqrt(m);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < sz; ++i) {
    const double mag = std::sqrt(f[0].v[i] * f[0].v[i] + f[1].v[i] * f[1].v[i] +
                                 f[2].v[i] * f[2].v[i]);
    acc += std::pow(mag, p);
  }
  return std::pow(f.grid()->cell_volume() * acc, 1.0 / p);
}

double l2_norm(const ScalarFieldK& f) {
  double acc = 0.0;
  for (const cplx& z : f.a) acc += std::norm(z);
  const double n3 = static_cast<double>(f.grid->size());
  return std::sqrt(f.grid->cell_volume() * acc / n3);
}

double l2_norm(const VectorFieldK& f) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double c = l2_norm(f[i]);
    acc += c * c;
  }
  return std::sqrt(acc);
}

double grad_l2_norm(const VectorFieldK& f) {
  double acc = 0.0;
  for_each_mode(*f.grid(), [&](std::size_t i, double kx, double ky, double kz) {
    const double ksq = kx * kx + ky * ky + kz * kz;
    acc += ksq * (std::norm(f[0].a[i]) + std::norm(f[1].a[i]) + std::norm(f[2].a[i]));
  });
  const double n3 = static_cast<double>(f.grid()->size());
  return std::sqrt(f.grid()->cell_volume() * acc / n3);
}

double inner_l2(const VectorFieldR& a, const VectorFieldR& b) {
  require_same_grid(a.grid(), b.grid());
  double acc = 0.0;
  const std::size_t sz = a[0].v.size();
  for (std::size_t i = 0; i < sz; ++i) {
    acc += a[0].v[i] * b[0].v[i] + a[1].v[i] * b[1].v[i] + a[2].v[i] * b[2].v[i];
  }
  return a.grid()->cell_volume() * acc;
}

VectorFieldR convect(const VectorFieldR& a, const VectorFieldK& f) {
  require_same_grid(a.grid(), f.grid());
  VectorFieldR out(a.grid());
  const std::size_t sz = out[0].v.size();
  for (int i = 0; i < 3; ++i) {
    for (int axis = 0; axis < 3; ++axis) {
      ScalarFieldR d = inverse_transform(derivative(f[i], axis));
      for (std::size_t x = 0; x < sz; ++x) out[i].v[x] += a[axis].v[x] * d.v[x];
    }
  }
  return out;
}

void axpy(double alpha, const ScalarFieldK& x, ScalarFieldK& y) {
  for (std::size_t i = 0; i < y.a.size(); ++i) y.a[i] += alpha * x.a[i];
}

void axpy(double alpha, const VectorFieldK& x, VectorFieldK& y) {
  for (int i = 0; i < 3; ++i) axpy(alpha, x[i], y[i]);
}

void scale(ScalarFieldK& f, double alpha) {
  for (cplx& z : f.a) z *= alpha;
}

void scale(VectorFieldK& f, double alpha) {
  for (int i = 0; i < 3; ++i) scale(f[i], alpha);
}

ScalarFieldR multiply(const ScalarFieldR& a, const ScalarFieldR& b) {
  require_same_grid(a.grid, b.grid);
  ScalarFieldR out(a.grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}

}  // namespace mhdbox
