#include "mhdbox/lpaley.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mhdbox {

namespace {

// smooth monotone step: 1 for r <= 0, 0 for r >= 1
double psi_step(double r) {
  if (r <= 0.0) return 1.0;
  if (r >= 1.0) return 0.0;
  const double ga = std::exp(-1.0 / r);
  const double gb = std::exp(-1.0 / (1.0 - r));
  return gb / (ga + gb);
}

std::vector<double> sample_radial(const Grid& g, double scale,
                                  double (*profile)(double)) {
  std::vector<double> mask(g.size());
  const int n = g.n;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double kk = g.k0 * std::sqrt(static_cast<double>(g.msq(ix, iy, iz)));
        mask[g.idx(ix, iy, iz)] = profile(kk * scale);
      }
    }
  }
  return mask;
}

ScalarFieldK apply_mask(const ScalarFieldK& f, const std::vector<double>& mask) {
  ScalarFieldK out(f.grid);
  for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] = mask[i] * f.a[i];
  return out;
}

double lq_of_terms(const std::vector<double>& terms, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  double acc = 0.0;
  for (double t : terms) acc += std::pow(t, q);
  return std::pow(acc, 1.0 / q);
}

std::vector<std::array<int, 3>> multi_indices(int order) {
  std::vector<std::array<int, 3>> out;
  for (int a = 0; a <= order; ++a) {
    for (int b = 0; b <= order - a; ++b) {
      out.push_back({a, b, order - a - b});
    }
  }
  return out;
}

}  // namespace

double chi_profile(double r) { return psi_step((std::abs(r) - 1.0) * 3.0); }

double phi_profile(double r) { return chi_profile(r / 2.0) - chi_profile(r); }

DyadicPartition build_partition(const GridPtr& grid) {
  const Grid& g = *grid;
  // smallest / largest retained nonzero wavenumber
  long msq_min = std::numeric_limits<long>::max();
  long msq_max = 0;
  const int n = g.n;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        if (!g.dealias[g.idx(ix, iy, iz)]) continue;
        const long m2 = g.msq(ix, iy, iz);
        if (m2 == 0) continue;
        msq_min = std::min(msq_min, m2);
        msq_max = std::max(msq_max, m2);
      }
    }
  }
  if (msq_max == 0) {
    throw std::invalid_argument("grid retains no nonzero mode; cannot host a dyadic shell");
  }
  const double k_min = g.k0 * std::sqrt(static_cast<double>(msq_min));
  const double k_max = g.k0 * std::sqrt(static_cast<double>(msq_max));

  DyadicPartition part;
  part.grid = grid;
  part.j_min = static_cast<int>(std::floor(std::log2(k_min * 3.0 / 8.0)));
  part.j_max = static_cast<int>(std::ceil(std::log2(k_max * 4.0 / 3.0)));
  part.chi_mask = sample_radial(g, std::ldexp(1.0, -part.j_min), &chi_profile);
  part.phi_masks.reserve(static_cast<std::size_t>(part.shell_count()));
  for (int j = part.j_min; j <= part.j_max; ++j) {
    part.phi_masks.push_back(sample_radial(g, std::ldexp(1.0, -j), &phi_profile));
  }
  return part;
}

ScalarFieldK project_shell(const ScalarFieldK& f, const DyadicPartition& part, int j) {
  require_same_grid(f.grid, part.grid);
  if (!part.in_range(j)) {
    throw std::invalid_argument("shell index " + std::to_string(j) +
                                " outside partition range [" +
                                std::to_string(part.j_min) + ", " +
                                std::to_string(part.j_max) + "]");
  }
  return apply_mask(f, part.phi_mask(j));
}

VectorFieldK project_shell(const VectorFieldK& f, const DyadicPartition& part, int j) {
  VectorFieldK out;
  for (int i = 0; i < 3; ++i) out.c[i] = project_shell(f[i], part, j);
  return out;
}

ScalarFieldK project_low(const ScalarFieldK& f, const DyadicPartition& part) {
  require_same_grid(f.grid, part.grid);
  return apply_mask(f, part.chi_mask);
}

VectorFieldK project_low(const VectorFieldK& f, const DyadicPartition& part) {
  VectorFieldK out;
  for (int i = 0; i < 3; ++i) out.c[i] = project_low(f[i], part);
  return out;
}

ScalarFieldK project_ball(const ScalarFieldK& f, const GridPtr& grid, int j) {
  require_same_grid(f.grid, grid);
  auto mask = sample_radial(*grid, std::ldexp(1.0, -(j + 1)), &chi_profile);
  return apply_mask(f, mask);
}

double shell_kernel_constant(const DyadicPartition& part) {
  double best = 0.0;
  for (int j = part.j_min; j <= part.j_max; ++j) {
    ScalarFieldK mask_field(part.grid);
    const auto& mask = part.phi_mask(j);
    for (std::size_t i = 0; i < mask.size(); ++i) mask_field.a[i] = mask[i];
    ScalarFieldR kernel = inverse_transform(mask_field);
    double l1 = 0.0;
    for (double x : kernel.v) l1 += std::abs(x);
    best = std::max(best, l1);
  }
  return best;
}

double besov_norm(const ScalarFieldK& f, const NormRequest& r, const DyadicPartition& part) {
  require_same_grid(f.grid, part.grid);
  if (r.p < 1.0 || r.q < 1.0) throw std::invalid_argument("besov_norm requires p, q >= 1");
  std::vector<double> terms;
  for (int j = part.j_min; j <= part.j_max; ++j) {
    if (!r.homogeneous && j < 0) continue;
    const double block = lp_norm(inverse_transform(project_shell(f, part, j)), r.p);
    terms.push_back(std::pow(2.0, r.s * j) * block);
  }
  double value = lq_of_terms(terms, r.q);
  if (!r.homogeneous) {
    auto low_mask = sample_radial(*f.grid, 1.0, &chi_profile);
    value += lp_norm(inverse_transform(apply_mask(f, low_mask)), r.p);
  }
  return value;
}

double besov_norm(const VectorFieldK& f, const NormRequest& r, const DyadicPartition& part) {
  require_same_grid(f.grid(), part.grid);
  if (r.p < 1.0 || r.q < 1.0) throw std::invalid_argument("besov_norm requires p, q >= 1");
  std::vector<double> terms;
  for (int j = part.j_min; j <= part.j_max; ++j) {
    if (!r.homogeneous && j < 0) continue;
    const double block = lp_norm(inverse_transform(project_shell(f, part, j)), r.p);
    terms.push_back(std::pow(2.0, r.s * j) * block);
  }
  double value = lq_of_terms(terms, r.q);
  if (!r.homogeneous) {
    auto low_mask = sample_radial(*f.grid(), 1.0, &chi_profile);
    VectorFieldK low;
    for (int i = 0; i < 3; ++i) low.c[i] = apply_mask(f[i], low_mask);
    value += lp_norm(inverse_transform(low), r.p);
  }
  return value;
}

double sobolev_norm(const ScalarFieldK& f, double s) { return l2_norm(lambda_s(f, s)); }

double sobolev_norm(const VectorFieldK& f, double s) { return l2_norm(lambda_s(f, s)); }

namespace {

template <typename FieldT>
double bernstein_ratio_impl(const FieldT& f, int j, int order, double p, double q,
                            const DyadicPartition& part) {
  if (p > q) throw std::invalid_argument("bernstein_ratio requires p <= q");
  if (p < 1.0 || q < 1.0) throw std::invalid_argument("bernstein_ratio requires p, q >= 1");
  FieldT block = project_shell(f, part, j);
  const double denom_norm = lp_norm(inverse_transform(block), p);
  if (denom_norm == 0.0) {
    throw std::invalid_argument("shell block vanishes; the ratio is undefined");
  }
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double scale = std::pow(2.0, j * order + 3.0 * j * (inv_p - inv_q));
  double best = 0.0;
  for (const auto& alpha : multi_indices(order)) {
    FieldT d = block;
    if constexpr (std::is_same_v<FieldT, ScalarFieldK>) {
      for (int axis = 0; axis < 3; ++axis) {
        for (int rep = 0; rep < alpha[axis]; ++rep) d = derivative(d, axis);
      }
    } else {
      for (int comp = 0; comp < 3; ++comp) {
        for (int axis = 0; axis < 3; ++axis) {
          for (int rep = 0; rep < alpha[axis]; ++rep) {
            d.c[comp] = derivative(d.c[comp], axis);
          }
        }
      }
    }
    best = std::max(best, lp_norm(inverse_transform(d), q));
  }
  return best / (scale * denom_norm);
}

}  // namespace

double bernstein_ratio(const ScalarFieldK& f, int j, int order, double p, double q,
                       const DyadicPartition& part) {
  return bernstein_ratio_impl(f, j, order, p, q, part);
}

double bernstein_ratio(const VectorFieldK& f, int j, int order, double p, double q,
                       const DyadicPartition& part) {
  return bernstein_ratio_impl(f, j, order, p, q, part);
}

CommutatorReport commutator_residual(const ScalarFieldK& f, const ScalarFieldK& g,
                                     double s, const CommutatorExponents& exps) {
  require_same_grid(f.grid, g.grid);
  ScalarFieldR fr = inverse_transform(f);
  ScalarFieldR gr = inverse_transform(g);

  ScalarFieldK fg = transform(multiply(fr, gr));
  dealias(fg);
  ScalarFieldK lambda_fg = lambda_s(fg, s);

  ScalarFieldK lambda_g = lambda_s(g, s);
  ScalarFieldK f_lambda_g = transform(multiply(fr, inverse_transform(lambda_g)));
  dealias(f_lambda_g);

  CommutatorReport rep;
  rep.residual = ScalarFieldK(f.grid);
  for (std::size_t i = 0; i < rep.residual.a.size(); ++i) {
    rep.residual.a[i] = lambda_fg.a[i] - f_lambda_g.a[i];
  }
  rep.residual_lp = lp_norm(inverse_transform(rep.residual), exps.p);

  VectorFieldR grad_f(f.grid);
  for (int axis = 0; axis < 3; ++axis) {
    grad_f.c[axis] = inverse_transform(derivative(f, axis));
  }
  rep.grad_f_p1 = lp_norm(grad_f, exps.p1);
  rep.g_hs1_p2 = lp_norm(inverse_transform(lambda_s(g, s - 1.0)), exps.p2);
  rep.f_hs_p3 = lp_norm(inverse_transform(lambda_s(f, s)), exps.p3);
  rep.g_p4 = lp_norm(gr, exps.p4);
  rep.bracket = rep.grad_f_p1 * rep.g_hs1_p2 + rep.f_hs_p3 * rep.g_p4;
  rep.ratio = rep.bracket > 0.0 ? rep.residual_lp / rep.bracket : 0.0;
  return rep;
}

}  // namespace mhdbox
