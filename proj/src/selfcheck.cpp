#include "mhdbox/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <iostream>
#include <random>

#include "mhdbox/lpaley.hpp"
#include "mhdbox/monitor.hpp"
#include "mhdbox/solver.hpp"

namespace mhdbox {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
}

ScalarFieldR random_real(const GridPtr& g, std::mt19937_64& rng) {
  ScalarFieldR f(g);
  for (double& v : f.v) v = uniform_pm1(rng);
  return f;
}

// random dealiased scalar field
ScalarFieldK random_scalar_k(const GridPtr& g, std::mt19937_64& rng) {
  ScalarFieldK f = transform(random_real(g, rng));
  dealias(f);
  return f;
}

// random dealiased divergence-free vector field, unit L2
VectorFieldK random_divfree(const GridPtr& g, std::mt19937_64& rng) {
  VectorFieldK f(g);
  for (int c = 0; c < 3; ++c) f.c[c] = random_scalar_k(g, rng);
  f = leray_project(f);
  for (int c = 0; c < 3; ++c) f[c].a[0] = cplx{0.0, 0.0};
  const double n = l2_norm(f);
  if (n > 0) scale(f, 1.0 / n);
  return f;
}

struct Harness {
  std::ostream& out;
  bool all_ok = true;

  void check(const std::string& name, double value, double bound) {
    const bool ok = value <= bound;
    all_ok = all_ok && ok;
    out << (ok ? "ok   " : "FAIL ") << name << "  (" << value << " vs " << bound
        << ")\n";
  }
  void check_flag(const std::string& name, bool ok) {
    all_ok = all_ok && ok;
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
  }
};

}  // namespace

bool run_verification_probes(std::ostream& out) {
  Harness h{out};
  std::mt19937_64 rng(20260810ULL);

  auto grid16 = make_grid(16);
  auto grid32 = make_grid(32);
  auto part16 = build_partition(grid16);
  auto part32 = build_partition(grid32);

  // partition of unity on retained modes
  {
    double worst = 0.0;
    const Grid& g = *grid16;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!g.dealias[i]) continue;
      double sum = part16.chi_mask[i];
      for (const auto& m : part16.phi_masks) sum += m[i];
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    h.check("partition: chi + sum(phi) = 1 on retained modes", worst, 1e-14);
  }

  // reconstruction from blocks
  {
    ScalarFieldK f = random_scalar_k(grid16, rng);
    ScalarFieldK sum = project_low(f, part16);
    for (int j = part16.j_min; j <= part16.j_max; ++j) {
      ScalarFieldK blk = project_shell(f, part16, j);
      for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += blk.a[i];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sum.a.size(); ++i) {
      num += std::norm(sum.a[i] - f.a[i]);
      den += std::norm(f.a[i]);
    }
    h.check("partition: block reconstruction", std::sqrt(num / den), 1e-13);
  }

  // shell block equals ball difference
  {
    ScalarFieldK f = random_scalar_k(grid16, rng);
    const int j = 1;
    ScalarFieldK delta = project_shell(f, part16, j);
    ScalarFieldK sj = project_ball(f, grid16, j);
    ScalarFieldK sjm1 = project_ball(f, grid16, j - 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.a.size(); ++i) {
      worst = std::max(worst, std::abs(delta.a[i] - (sj.a[i] - sjm1.a[i])));
    }
    h.check("partition: shell = ball(j) - ball(j-1)", worst, 1e-14);
  }

  // transform round trip
  {
    ScalarFieldR f = random_real(grid16, rng);
    ScalarFieldR back = inverse_transform(transform(f));
    double worst = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i) {
      worst = std::max(worst, std::abs(back.v[i] - f.v[i]));
    }
    h.check("transform: round trip", worst, 1e-12);
  }

  // Parseval
  {
    ScalarFieldR f = random_real(grid16, rng);
    const double phys = lp_norm(f, 2.0);
    const double spec = l2_norm(transform(f));
    h.check("transform: Parseval", std::abs(phys - spec) / phys, 1e-12);
  }

  // projector output is divergence-free
  {
    VectorFieldK v(grid16);
    for (int c = 0; c < 3; ++c) v.c[c] = random_scalar_k(grid16, rng);
    VectorFieldK pv = leray_project(v);
    h.check("projector: divergence of projection",
            l2_norm(divergence(pv)) / l2_norm(pv), 1e-13);
  }

  // curl inversion on mean-free divergence-free fields
  {
    VectorFieldK u = random_divfree(grid16, rng);
    VectorFieldK back = biot_savart(curl(u));
    VectorFieldK diff = back;
    axpy(-1.0, u, diff);
    h.check("inversion: velocity from vorticity", l2_norm(diff) / l2_norm(u), 1e-12);
  }

  // Riesz transforms compose to -identity on mean-free fields
  {
    ScalarFieldK f = random_scalar_k(grid16, rng);
    f.a[0] = cplx{0.0, 0.0};
    ScalarFieldK sum(grid16);
    for (int axis = 1; axis <= 3; ++axis) {
      ScalarFieldK rr = riesz(axis, riesz(axis, f));
      for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += rr.a[i];
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < sum.a.size(); ++i) {
      num += std::norm(sum.a[i] + f.a[i]);
      den += std::norm(f.a[i]);
    }
    h.check("riesz: sum of squares = -identity", std::sqrt(num / den), 1e-12);
  }

  // shell derivative bound, first order, sup norms
  {
    double worst = 0.0;
    for (const auto& pp : {std::pair{grid16, part16}, std::pair{grid32, part32}}) {
      ScalarFieldK f = random_scalar_k(pp.first, rng);
      for (int j = pp.second.j_min; j <= pp.second.j_max; ++j) {
        ScalarFieldK blk = project_shell(f, pp.second, j);
        bool nonzero = false;
        for (const cplx& z : blk.a) {
          if (std::abs(z) != 0.0) { nonzero = true; break; }
        }
        if (!nonzero) continue;
        worst = std::max(worst, bernstein_ratio(f, j, 1, kInf, kInf, pp.second));
      }
    }
    h.check("shells: first-order derivative ratio <= 8/3", worst, 8.0 / 3.0 + 1e-9);
  }

  // commutator two-mode closed form
  {
    const GridPtr& g = grid16;
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const int kx = 1 + static_cast<int>((rng() % 3));
      const int ly = 1 + static_cast<int>((rng() % 3));
      const double s = 0.5 + 2.0 * (static_cast<double>(rng() % 1000) / 1000.0);
      ScalarFieldR fr(g), gr2(g);
      const int n = g->n;
      for (int iz = 0; iz < n; ++iz) {
        for (int iy = 0; iy < n; ++iy) {
          const double y = g->l * iy / n;
          for (int ix = 0; ix < n; ++ix) {
            const double x = g->l * ix / n;
            fr.v[g->idx(ix, iy, iz)] = std::cos(kx * x);
            gr2.v[g->idx(ix, iy, iz)] = std::cos(ly * y);
          }
        }
      }
      CommutatorReport rep = commutator_residual(transform(fr), transform(gr2), s);
      // orthogonal wavevectors: residual concentrates on the four modes
      // (+-kx, +-ly) with coefficient ((1+kx^2+ly^2)^{s/2} - (1+ly^2)^{s/2})/4
      const double lam_kl = std::pow(1.0 + kx * kx + ly * ly, 0.5 * s);
      const double lam_l = std::pow(1.0 + static_cast<double>(ly) * ly, 0.5 * s);
      // residual = (lam_kl - lam_l) cos(kx x) cos(ly y)
      const double expect = 0.5 * (lam_kl - lam_l) * std::sqrt(g->volume());
      const double got = l2_norm(rep.residual);
      worst = std::max(worst, std::abs(got - expect) / std::max(expect, 1e-300));
    }
    h.check("commutator: two-mode closed form", worst, 1e-12);
  }

  // advection cancellations on a random dealiased state
  {
    MhdState s(grid32);
    s.u_hat = random_divfree(grid32, rng);
    s.b_hat = random_divfree(grid32, rng);
    SolverParams p;
    p.nu = p.eta = 0.01;
    p.dt = 1e-3;
    p.t_end = 1e-3;
    CancellationReport rep = cancellation_checks(s, p);
    h.check("cancellation: (u.grad)w . w", rep.adv_w, 1e-11);
    h.check("cancellation: (u.grad)J . J", rep.adv_j, 1e-11);
    h.check("cancellation: mixed (b.grad) pairing", rep.mixed, 1e-11);

    VorticityResidual vr = vorticity_system_residual(s, p);
    h.check("curled system: route residual (w)", vr.residual_w, 1e-10);
    h.check("curled system: route residual (J)", vr.residual_j, 1e-10);

    NonlinearTerms nl = nonlinear_terms(s);
    const double neutrality =
        std::abs(inner_l2(inverse_transform(nl.du), inverse_transform(s.u_hat)) +
                 inner_l2(inverse_transform(nl.db), inverse_transform(s.b_hat)));
    const double scU = l2_norm(s.u_hat), scB = l2_norm(s.b_hat);
    h.check("nonlinearity: energy neutrality",
            neutrality / (scU * scU + scB * scB), 1e-11);
  }

  // shell-count arithmetic
  {
    DiagnosticRecord r;
    r.l2_w = 0.0;
    r.l2_j = 0.0;
    GronwallReport g = gronwall_quantities(r, 1.0, 1.0, 1.0);
    h.check_flag("shell count N(E=0, C=1, nu=eta=1) = 3", g.N == 3);
    h.check_flag("damping window Z(E=0) = 1", std::abs(g.Z - 1.0) < 1e-15);
  }

  // exact diffusive decay of a curl-eigenfield pair
  {
    SolverParams p;
    p.nu = p.eta = 0.01;
    p.dt = 0.05;
    p.t_end = 0.25;
    MhdState s = initial_condition("aligned(abc)", 1.0, grid16);
    const double e0 = l2_norm(s.u_hat);
    for (int i = 0; i < 5; ++i) s = step(s, p);
    const double expect = std::exp(-p.nu * s.t) * e0;
    h.check("integrator: aligned curl-eigenfield decay",
            std::abs(l2_norm(s.u_hat) - expect) / expect, 1e-10);
  }

  out << (h.all_ok ? "all probes passed\n" : "probe failures detected\n");
  return h.all_ok;
}

}  // namespace mhdbox
