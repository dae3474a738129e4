#include "mhdbox/monitor.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mhdbox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// L^p of the 3x3 gradient tensor with pointwise Frobenius magnitude
double grad_lp_norm(const VectorFieldK& f, double p) {
  const GridPtr& g = f.grid();
  std::vector<double> frob_sq(g->size(), 0.0);
  for (int i = 0; i < 3; ++i) {
    for (int axis = 0; axis < 3; ++axis) {
      ScalarFieldR d = inverse_transform(derivative(f[i], axis));
      for (std::size_t x = 0; x < frob_sq.size(); ++x) frob_sq[x] += d.v[x] * d.v[x];
    }
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : frob_sq) m = std::max(m, v);
    return std::sqrt(m);
  }
  double acc = 0.0;
  for (double v : frob_sq) acc += std::pow(v, 0.5 * p);
  return std::pow(g->cell_volume() * acc, 1.0 / p);
}

// trapezoid of getter over [t_lo, last record]; linear interpolation at the
// left window edge
template <typename Getter>
double window_integral(std::span<const DiagnosticRecord> recs, double t_lo, Getter get) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const double ta = recs[i].t, tb = recs[i + 1].t;
    if (tb <= t_lo) continue;
    double va = get(recs[i]);
    double a = ta;
    if (ta < t_lo) {
      const double th = (t_lo - ta) / (tb - ta);
      va = (1.0 - th) * va + th * get(recs[i + 1]);
      a = t_lo;
    }
    acc += 0.5 * (va + get(recs[i + 1])) * (tb - a);
  }
  return acc;
}

void require_window(std::span<const DiagnosticRecord> recs, double eps) {
  if (recs.size() < 2) throw std::invalid_argument("need at least two records");
  if (!(eps > 0.0)) throw std::invalid_argument("window length must be positive");
  const double t_end = recs.back().t;
  const double t_lo = t_end - eps;
  const double slack = 1e-9 * std::max(1.0, std::abs(t_end));
  if (recs.front().t > t_lo + slack) {
    throw std::invalid_argument("records do not cover the requested window");
  }
}

}  // namespace

DiagnosticRecord record(const MhdState& s, const DyadicPartition& part,
                        const MonitorConfig& mc, const SolverParams& params) {
  require_same_grid(s.grid(), part.grid);
  DiagnosticRecord r;
  r.t = s.t;
  r.finite = state_finite(s);
  r.diss_accum = s.diss_accum;

  VectorFieldK w_hat = curl(s.u_hat);
  VectorFieldK j_hat = curl(s.b_hat);

  r.l2_u = l2_norm(s.u_hat);
  r.l2_b = l2_norm(s.b_hat);
  r.l2_w = l2_norm(w_hat);
  r.l2_j = l2_norm(j_hat);
  r.grad_u_l2 = grad_l2_norm(s.u_hat);
  r.grad_b_l2 = grad_l2_norm(s.b_hat);
  r.diss_rate = params.nu * r.grad_u_l2 * r.grad_u_l2 +
                params.eta * r.grad_b_l2 * r.grad_b_l2;

  VectorFieldR w_phys = inverse_transform(w_hat);
  r.sup_w = lp_norm(w_phys, kInf);

  r.shell_sup.resize(static_cast<std::size_t>(part.shell_count()));
  for (int j = part.j_min; j <= part.j_max; ++j) {
    VectorFieldK blk = project_shell(w_hat, part, j);
    r.shell_sup[static_cast<std::size_t>(j - part.j_min)] =
        lp_norm(inverse_transform(blk), kInf);
  }
  r.besov0_inf_w = 0.0;
  for (double v : r.shell_sup) r.besov0_inf_w = std::max(r.besov0_inf_w, v);

  for (double sexp : mc.s_list) {
    r.hs_u.push_back(sobolev_norm(s.u_hat, sexp));
    r.hs_b.push_back(sobolev_norm(s.b_hat, sexp));
  }

  r.aux_p = mc.aux_p;
  VectorFieldR u_phys = inverse_transform(s.u_hat);
  r.lp_u = lp_norm(u_phys, mc.aux_p);
  r.lp_grad_u = grad_lp_norm(s.u_hat, mc.aux_p);
  r.lp_curl_u = lp_norm(w_phys, mc.aux_p);

  auto ok = [](double v) { return std::isfinite(v); };
  r.finite = r.finite && ok(r.l2_u) && ok(r.l2_b) && ok(r.sup_w) && ok(r.lp_u);
  return r;
}

BkmReport bkm_delta(std::span<const DiagnosticRecord> records, double eps) {
  require_window(records, eps);
  const std::size_t shells = records.front().shell_sup.size();
  BkmReport rep;
  rep.eps = eps;
  rep.t_end = records.back().t;
  const double t_lo = rep.t_end - eps;
  rep.per_shell.resize(shells);
  rep.delta = -1.0;
  for (std::size_t sidx = 0; sidx < shells; ++sidx) {
    rep.per_shell[sidx] = window_integral(
        records, t_lo, [sidx](const DiagnosticRecord& r) { return r.shell_sup[sidx]; });
    if (rep.per_shell[sidx] > rep.delta) {
      rep.delta = rep.per_shell[sidx];
      rep.argmax_shell = static_cast<int>(sidx);
    }
  }
  rep.int_besov = window_integral(
      records, t_lo, [](const DiagnosticRecord& r) { return r.besov0_inf_w; });
  rep.int_supw =
      window_integral(records, t_lo, [](const DiagnosticRecord& r) { return r.sup_w; });
  return rep;
}

std::vector<BkmReport> bkm_ladder(std::span<const DiagnosticRecord> records,
                                  std::span<const double> eps_ladder) {
  std::vector<BkmReport> out;
  out.reserve(eps_ladder.size());
  for (double eps : eps_ladder) out.push_back(bkm_delta(records, eps));
  return out;
}

std::optional<std::string> admissibility_violation(int which, double p, double q) {
  if (p < 1.0 || q < 1.0) return "exponents must satisfy p, q >= 1";
  const double sum = (std::isinf(q) ? 0.0 : 2.0 / q) + (std::isinf(p) ? 0.0 : 3.0 / p);
  const double tol = 1e-12;
  switch (which) {
    case 0:
      if (!(p > 3.0)) return "velocity integral requires 3 < p <= inf";
      if (sum > 1.0 + tol) return "velocity integral requires 2/q + 3/p <= 1";
      return std::nullopt;
    case 1:
      if (!(p > 1.5)) return "gradient integral requires 3/2 < p <= inf";
      if (sum > 2.0 + tol) return "gradient integral requires 2/q + 3/p <= 2";
      return std::nullopt;
    case 2:
      if (!(p > 1.5) || std::isinf(p)) return "vorticity integral requires 3/2 < p < inf";
      if (sum > 2.0 + tol) return "vorticity integral requires 2/q + 3/p <= 2";
      return std::nullopt;
    default:
      throw std::invalid_argument("criterion selector must be 0, 1 or 2");
  }
}

AuxiliaryReport auxiliary_criteria(std::span<const DiagnosticRecord> records,
                                   double p, double q) {
  if (records.size() < 2) throw std::invalid_argument("need at least two records");
  if (std::abs(records.front().aux_p - p) > 1e-9 && !std::isinf(p)) {
    throw std::invalid_argument(
        "records were collected with a different L^p exponent than requested");
  }
  AuxiliaryReport rep;
  rep.p = p;
  rep.q = q;
  rep.velocity_rejected = admissibility_violation(0, p, q);
  rep.gradient_rejected = admissibility_violation(1, p, q);
  rep.vorticity_rejected = admissibility_violation(2, p, q);

  const double t_lo = records.front().t;
  auto pow_q = [q](double v) { return std::isinf(q) ? v : std::pow(v, q); };
  if (!rep.velocity_rejected) {
    rep.int_u_pq = window_integral(
        records, t_lo, [&](const DiagnosticRecord& r) { return pow_q(r.lp_u); });
  }
  if (!rep.gradient_rejected) {
    rep.int_grad_u_pq = window_integral(
        records, t_lo, [&](const DiagnosticRecord& r) { return pow_q(r.lp_grad_u); });
  }
  if (!rep.vorticity_rejected) {
    rep.int_curl_u_pq = window_integral(
        records, t_lo, [&](const DiagnosticRecord& r) { return pow_q(r.lp_curl_u); });
  }
  rep.int_besov0_inf = window_integral(
      records, t_lo, [](const DiagnosticRecord& r) { return r.besov0_inf_w; });
  rep.int_sup_w =
      window_integral(records, t_lo, [](const DiagnosticRecord& r) { return r.sup_w; });
  return rep;
}

EnergyBudget energy_budget(std::span<const DiagnosticRecord> records) {
  if (records.empty()) throw std::invalid_argument("no records");
  EnergyBudget out;
  const double e0 = records.front().l2_u * records.front().l2_u +
                    records.front().l2_b * records.front().l2_b;
  const double d0 = records.front().diss_accum;
  out.residual.reserve(records.size());
  for (const auto& r : records) {
    const double e = r.l2_u * r.l2_u + r.l2_b * r.l2_b;
    const double res = e0 - e - 2.0 * (r.diss_accum - d0);
    out.residual.push_back(res);
    if (std::abs(res) > out.max_abs) {
      out.max_abs = std::abs(res);
      out.sign_at_max = res > 0.0 ? 1 : (res < 0.0 ? -1 : 0);
    }
  }
  return out;
}

GronwallReport gronwall_quantities(const DiagnosticRecord& rec, double C,
                                   double nu, double eta) {
  if (!(C > 0.0) || !(nu > 0.0) || !(eta > 0.0)) {
    throw std::invalid_argument("gronwall_quantities requires positive C, nu, eta");
  }
  GronwallReport rep;
  rep.C = C;
  rep.E = rec.l2_w + rec.l2_j;
  const double log_plus = std::log(std::numbers::e + C * rep.E / std::min(nu, eta));
  rep.N = static_cast<int>(std::floor(2.0 / std::numbers::ln2 * log_plus)) + 1;
  rep.Z = std::log(rep.E + std::numbers::e);
  return rep;
}

CancellationReport cancellation_checks(const MhdState& s, const SolverParams& p) {
  const GridPtr& g = s.grid();
  VectorFieldK w_hat = curl(s.u_hat);
  VectorFieldK j_hat = curl(s.b_hat);
  VectorFieldR u = inverse_transform(s.u_hat);
  VectorFieldR b = inverse_transform(s.b_hat);
  VectorFieldR w = inverse_transform(w_hat);
  VectorFieldR j = inverse_transform(j_hat);

  const double sup_u = lp_norm(u, kInf);
  const double sup_b = lp_norm(b, kInf);
  const double l2w = l2_norm(w_hat), l2j = l2_norm(j_hat);
  const double gw = grad_l2_norm(w_hat), gj = grad_l2_norm(j_hat);

  CancellationReport rep;
  {
    const double val = inner_l2(convect(u, w_hat), w);
    const double scale = sup_u * gw * l2w;
    rep.adv_w = scale > 0.0 ? std::abs(val) / scale : std::abs(val);
  }
  {
    const double val = inner_l2(convect(u, j_hat), j);
    const double scale = sup_u * gj * l2j;
    rep.adv_j = scale > 0.0 ? std::abs(val) / scale : std::abs(val);
  }
  {
    const double val = inner_l2(convect(b, j_hat), w) + inner_l2(convect(b, w_hat), j);
    const double scale = sup_b * (gj * l2w + gw * l2j);
    rep.mixed = scale > 0.0 ? std::abs(val) / scale : std::abs(val);
  }
  rep.term_i = inner_l2(convect(w, s.u_hat), w);
  rep.term_ii = inner_l2(convect(j, s.u_hat), j);
  rep.term_iii = -(inner_l2(convect(j, s.b_hat), w) + inner_l2(convect(w, s.b_hat), j));
  {
    // T(b,u) . J with T_i = eps_{ilm} (d_l b . d_m u)
    VectorFieldR twist(g);
    std::array<std::array<ScalarFieldR, 3>, 3> du, db;
    for (int i = 0; i < 3; ++i) {
      for (int axis = 0; axis < 3; ++axis) {
        du[i][axis] = inverse_transform(derivative(s.u_hat[i], axis));
        db[i][axis] = inverse_transform(derivative(s.b_hat[i], axis));
      }
    }
    const std::size_t sz = g->size();
    for (std::size_t x = 0; x < sz; ++x) {
      double dot[3][3];
      for (int lrow = 0; lrow < 3; ++lrow) {
        for (int mcol = 0; mcol < 3; ++mcol) {
          dot[lrow][mcol] = db[0][lrow].v[x] * du[0][mcol].v[x] +
                            db[1][lrow].v[x] * du[1][mcol].v[x] +
                            db[2][lrow].v[x] * du[2][mcol].v[x];
        }
      }
      twist[0].v[x] = dot[1][2] - dot[2][1];
      twist[1].v[x] = dot[2][0] - dot[0][2];
      twist[2].v[x] = dot[0][1] - dot[1][0];
    }
    rep.term_iv = inner_l2(twist, j);
  }
  rep.enstrophy_rate = rep.term_i + rep.term_ii + rep.term_iii + 2.0 * rep.term_iv -
                       p.nu * gw * gw - p.eta * gj * gj;
  return rep;
}

HsGrowthReport hs_growth_check(std::span<const DiagnosticRecord> records,
                               double s, const MonitorConfig& mc, double slack) {
  if (records.empty()) throw std::invalid_argument("no records");
  auto find_s = [&](double target) -> std::size_t {
    for (std::size_t i = 0; i < mc.s_list.size(); ++i) {
      if (std::abs(mc.s_list[i] - target) < 1e-12) return i;
    }
    throw std::invalid_argument("requested s is not in the recorded s list");
  };
  const std::size_t is = find_s(s);
  const std::size_t i1 = find_s(1.0);

  HsGrowthReport rep;
  rep.s = s;
  auto lhs = [&](const DiagnosticRecord& r) {
    return r.hs_u[is] * r.hs_u[is] + r.hs_b[is] * r.hs_b[is];
  };
  rep.c0 = slack * lhs(records.front());
  const double t0 = records.front().t;
  double sup_h1_quartic = 0.0;
  rep.max_ratio = 0.0;
  for (const auto& r : records) {
    const double h1sq = r.hs_u[i1] * r.hs_u[i1] + r.hs_b[i1] * r.hs_b[i1];
    sup_h1_quartic = std::max(sup_h1_quartic, h1sq * h1sq);
    const double bound = rep.c0 * std::exp((r.t - t0) * sup_h1_quartic);
    if (bound > 0.0) {
      rep.max_ratio = std::max(rep.max_ratio, lhs(r) / bound);
    } else if (lhs(r) > 0.0) {
      rep.max_ratio = kInf;
    }
  }
  rep.holds = rep.max_ratio <= 1.0 + 1e-9;
  return rep;
}

}  // namespace mhdbox
