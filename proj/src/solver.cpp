#include "mhdbox/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "mhdbox/errors.hpp"

namespace mhdbox {

namespace {

constexpr double kDtFloor = 1e-8;  // velocity floor of the CFL suggestion

double uniform_pm1(std::mt19937_64& rng) {
  // top 53 bits to a double in [0,1), mapped to [-1,1); identical on every
  // platform for a given seed
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

// physical samples of every component
VectorFieldR to_physical(const VectorFieldK& f) { return inverse_transform(f); }

// d[i][j] = physical samples of d_j f_i
using DerivTensor = std::array<std::array<ScalarFieldR, 3>, 3>;
DerivTensor derivative_tensor(const VectorFieldK& f) {
  DerivTensor d;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      d[i][j] = inverse_transform(derivative(f[i], j));
    }
  }
  return d;
}

// (a . grad) f assembled pointwise from physical samples
VectorFieldR advect(const VectorFieldR& a, const DerivTensor& df, const GridPtr& g) {
  VectorFieldR out(g);
  const std::size_t sz = g->size();
  for (int i = 0; i < 3; ++i) {
    double* o = out[i].v.data();
    for (std::size_t x = 0; x < sz; ++x) {
      o[x] = a[0].v[x] * df[i][0].v[x] + a[1].v[x] * df[i][1].v[x] +
             a[2].v[x] * df[i][2].v[x];
    }
  }
  return out;
}

void fill_physical(MhdState& s, const VectorFieldR& u, const VectorFieldR& b) {
  s.u_hat = transform(u);
  s.b_hat = transform(b);
  dealias(s.u_hat);
  dealias(s.b_hat);
  s.u_hat = leray_project(s.u_hat);
  s.b_hat = leray_project(s.b_hat);
}

// per-mode integrating factors exp(-coef |k|^2 dt)
std::vector<double> decay_factors(const Grid& g, double coef, double dt) {
  std::vector<double> e(g.size());
  const int n = g.n;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double ksq = g.k0 * g.k0 * static_cast<double>(g.msq(ix, iy, iz));
        e[g.idx(ix, iy, iz)] = std::exp(-coef * ksq * dt);
      }
    }
  }
  return e;
}

void mul_factors(VectorFieldK& f, const std::vector<double>& e) {
  for (int i = 0; i < 3; ++i) {
    for (std::size_t x = 0; x < f[i].a.size(); ++x) f[i].a[x] *= e[x];
  }
}

VectorFieldK scaled_copy(const VectorFieldK& f, const std::vector<double>& e) {
  VectorFieldK out = f;
  mul_factors(out, e);
  return out;
}

double dissipation_rate(const VectorFieldK& u, const VectorFieldK& b,
                        const SolverParams& p) {
  const double gu = grad_l2_norm(u);
  const double gb = grad_l2_norm(b);
  return p.nu * gu * gu + p.eta * gb * gb;
}

}  // namespace

void validate_params(const SolverParams& p) {
  if (!(p.nu > 0.0) || !(p.eta > 0.0)) {
    throw std::invalid_argument(
        "ideal MHD is not supported: both the viscosity and the magnetic "
        "diffusivity must be strictly positive");
  }
  if (!(p.dt > 0.0)) throw std::invalid_argument("time step must be positive");
}

MhdState ic_kolmogorov(const GridPtr& grid, double amplitude) {
  MhdState s(grid);
  VectorFieldR u(grid), b(grid);
  const int n = grid->n;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      const double y = grid->l * iy / n;
      for (int ix = 0; ix < n; ++ix) {
        u[0].v[grid->idx(ix, iy, iz)] = amplitude * std::sin(y);
      }
    }
  }
  fill_physical(s, u, b);
  return s;
}

MhdState ic_abc(const GridPtr& grid, double amplitude) {
  MhdState s(grid);
  VectorFieldR u(grid), b(grid);
  const int n = grid->n;
  for (int iz = 0; iz < n; ++iz) {
    const double z = grid->l * iz / n;
    for (int iy = 0; iy < n; ++iy) {
      const double y = grid->l * iy / n;
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid->l * ix / n;
        const std::size_t id = grid->idx(ix, iy, iz);
        u[0].v[id] = amplitude * (std::sin(z) + std::cos(y));
        u[1].v[id] = amplitude * (std::sin(x) + std::cos(z));
        u[2].v[id] = amplitude * (std::sin(y) + std::cos(x));
      }
    }
  }
  fill_physical(s, u, b);
  return s;
}

MhdState ic_taylor_green(const GridPtr& grid, double amplitude) {
  MhdState s(grid);
  VectorFieldR u(grid), b(grid);
  const int n = grid->n;
  for (int iz = 0; iz < n; ++iz) {
    const double z = grid->l * iz / n;
    for (int iy = 0; iy < n; ++iy) {
      const double y = grid->l * iy / n;
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid->l * ix / n;
        const std::size_t id = grid->idx(ix, iy, iz);
        u[0].v[id] = amplitude * std::sin(x) * std::cos(y) * std::cos(z);
        u[1].v[id] = -amplitude * std::cos(x) * std::sin(y) * std::cos(z);
      }
    }
  }
  fill_physical(s, u, b);
  return s;
}

MhdState ic_orszag_tang_3d(const GridPtr& grid, double amplitude) {
  MhdState s(grid);
  VectorFieldR u(grid), b(grid);
  const int n = grid->n;
  const double beta = 0.8;  // magnetic-to-kinetic amplitude ratio
  for (int iz = 0; iz < n; ++iz) {
    const double z = grid->l * iz / n;
    for (int iy = 0; iy < n; ++iy) {
      const double y = grid->l * iy / n;
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid->l * ix / n;
        const std::size_t id = grid->idx(ix, iy, iz);
        u[0].v[id] = amplitude * (-2.0 * std::sin(y));
        u[1].v[id] = amplitude * (2.0 * std::sin(x));
        b[0].v[id] = amplitude * beta * (-2.0 * std::sin(2.0 * y) + std::sin(z));
        b[1].v[id] = amplitude * beta * (2.0 * std::sin(x) + std::sin(z));
        b[2].v[id] = amplitude * beta * (std::sin(x) + std::sin(y));
      }
    }
  }
  fill_physical(s, u, b);
  return s;
}

MhdState ic_random_band(const GridPtr& grid, int j, std::uint64_t seed, double amplitude) {
  // populate the |k| range where only shell j is active (its multiplier is
  // identically 1 there), so the state is single-shell by construction
  const Grid& g = *grid;
  const int n = g.n;
  const double lo = (4.0 / 3.0) * std::ldexp(1.0, j);
  const double hi = 2.0 * std::ldexp(1.0, j);

  MhdState s(grid);
  std::mt19937_64 rng(seed);
  bool any = false;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const std::size_t id = g.idx(ix, iy, iz);
        if (!g.dealias[id]) continue;
        const double kk = g.k0 * std::sqrt(static_cast<double>(g.msq(ix, iy, iz)));
        if (kk < lo || kk > hi) continue;
        // mirror index of -k on the lattice
        const int jx = ix == 0 ? 0 : n - ix;
        const int jy = iy == 0 ? 0 : n - iy;
        const int jz = iz == 0 ? 0 : n - iz;
        const std::size_t mirror = g.idx(jx, jy, jz);
        if (mirror < id) continue;  // handled from the partner
        any = true;
        for (int comp = 0; comp < 3; ++comp) {
          const double re = uniform_pm1(rng);
          const double im = (mirror == id) ? 0.0 : uniform_pm1(rng);
          s.u_hat[comp].a[id] = cplx{re, im};
          s.u_hat[comp].a[mirror] = cplx{re, -im};
        }
      }
    }
  }
  if (!any) {
    throw std::invalid_argument("dyadic shell " + std::to_string(j) +
                                " holds no retained mode on this grid");
  }
  s.u_hat = leray_project(s.u_hat);
  const double norm = l2_norm(s.u_hat);
  if (norm > 0.0) {
    const double f = amplitude / norm;
    scale(s.u_hat, f);
  }
  return s;
}

MhdState initial_condition(const std::string& name, double amplitude, const GridPtr& grid) {
  std::string t;
  for (char c : name) {
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  }
  if (t == "kolmogorov") return ic_kolmogorov(grid, amplitude);
  if (t == "abc") return ic_abc(grid, amplitude);
  if (t == "taylor_green") return ic_taylor_green(grid, amplitude);
  if (t == "orszag_tang_3d") return ic_orszag_tang_3d(grid, amplitude);
  if (t.starts_with("aligned(") && t.ends_with(")")) {
    MhdState s = initial_condition(t.substr(8, t.size() - 9), amplitude, grid);
    s.b_hat = s.u_hat;
    return s;
  }
  if (t.starts_with("random_band(") && t.ends_with(")")) {
    const std::string args = t.substr(12, t.size() - 13);
    const auto comma = args.find(',');
    if (comma != std::string::npos) {
      try {
        const int j = std::stoi(args.substr(0, comma));
        const std::uint64_t seed = std::stoull(args.substr(comma + 1));
        return ic_random_band(grid, j, seed, amplitude);
      } catch (const std::logic_error&) {
        // falls through to the unknown-name error
      }
    }
  }
  throw std::invalid_argument("unknown initial condition \"" + name + "\"");
}

NonlinearTerms nonlinear_terms(const MhdState& s) {
  const GridPtr& g = s.grid();
  VectorFieldR u = to_physical(s.u_hat);
  VectorFieldR b = to_physical(s.b_hat);
  DerivTensor du = derivative_tensor(s.u_hat);
  DerivTensor db = derivative_tensor(s.b_hat);

  VectorFieldR u_adv_u = advect(u, du, g);   // (u.grad)u
  VectorFieldR b_adv_b = advect(b, db, g);   // (b.grad)b
  VectorFieldR u_adv_b = advect(u, db, g);   // (u.grad)b
  VectorFieldR b_adv_u = advect(b, du, g);   // (b.grad)u

  NonlinearTerms out;
  VectorFieldR momentum(g), induction(g);
  const std::size_t sz = g->size();
  for (int i = 0; i < 3; ++i) {
    for (std::size_t x = 0; x < sz; ++x) {
      momentum[i].v[x] = -u_adv_u[i].v[x] + b_adv_b[i].v[x];
      induction[i].v[x] = -u_adv_b[i].v[x] + b_adv_u[i].v[x];
    }
  }
  out.du = transform(momentum);
  out.db = transform(induction);
  dealias(out.du);
  dealias(out.db);
  out.du = leray_project(out.du);
  return out;
}

NonlinearTerms rhs(const MhdState& s, const SolverParams& p) {
  NonlinearTerms out = nonlinear_terms(s);
  const Grid& g = *s.grid();
  const int n = g.n;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const std::size_t id = g.idx(ix, iy, iz);
        const double ksq = g.k0 * g.k0 * static_cast<double>(g.msq(ix, iy, iz));
        for (int c = 0; c < 3; ++c) {
          out.du[c].a[id] -= p.nu * ksq * s.u_hat[c].a[id];
          out.db[c].a[id] -= p.eta * ksq * s.b_hat[c].a[id];
        }
      }
    }
  }
  return out;
}

MhdState step(const MhdState& s, const SolverParams& p) {
  validate_params(p);
  const GridPtr& g = s.grid();
  const double dt = p.dt;
  const auto eu_half = decay_factors(*g, p.nu, 0.5 * dt);
  const auto eu_full = decay_factors(*g, p.nu, dt);
  const auto eb_half = decay_factors(*g, p.eta, 0.5 * dt);
  const auto eb_full = decay_factors(*g, p.eta, dt);

  // stage 1
  NonlinearTerms k1 = nonlinear_terms(s);
  const double d1 = dissipation_rate(s.u_hat, s.b_hat, p);

  // stage 2: E_half (v + dt/2 k1)
  MhdState s2(g);
  s2.u_hat = s.u_hat;
  axpy(0.5 * dt, k1.du, s2.u_hat);
  mul_factors(s2.u_hat, eu_half);
  s2.b_hat = s.b_hat;
  axpy(0.5 * dt, k1.db, s2.b_hat);
  mul_factors(s2.b_hat, eb_half);
  NonlinearTerms k2 = nonlinear_terms(s2);
  const double d2 = dissipation_rate(s2.u_hat, s2.b_hat, p);

  // stage 3: E_half v + dt/2 k2
  MhdState s3(g);
  s3.u_hat = scaled_copy(s.u_hat, eu_half);
  axpy(0.5 * dt, k2.du, s3.u_hat);
  s3.b_hat = scaled_copy(s.b_hat, eb_half);
  axpy(0.5 * dt, k2.db, s3.b_hat);
  NonlinearTerms k3 = nonlinear_terms(s3);
  const double d3 = dissipation_rate(s3.u_hat, s3.b_hat, p);

  // stage 4: E_full v + dt E_half k3
  MhdState s4(g);
  s4.u_hat = scaled_copy(s.u_hat, eu_full);
  {
    VectorFieldK tmp = scaled_copy(k3.du, eu_half);
    axpy(dt, tmp, s4.u_hat);
  }
  s4.b_hat = scaled_copy(s.b_hat, eb_full);
  {
    VectorFieldK tmp = scaled_copy(k3.db, eb_half);
    axpy(dt, tmp, s4.b_hat);
  }
  NonlinearTerms k4 = nonlinear_terms(s4);
  const double d4 = dissipation_rate(s4.u_hat, s4.b_hat, p);

  // combine: E_full v + dt/6 (E_full k1 + 2 E_half (k2 + k3) + k4)
  MhdState out(g);
  out.u_hat = scaled_copy(s.u_hat, eu_full);
  {
    VectorFieldK acc = scaled_copy(k1.du, eu_full);
    VectorFieldK mid = k2.du;
    axpy(1.0, k3.du, mid);
    mul_factors(mid, eu_half);
    axpy(2.0, mid, acc);
    axpy(1.0, k4.du, acc);
    axpy(dt / 6.0, acc, out.u_hat);
  }
  out.b_hat = scaled_copy(s.b_hat, eb_full);
  {
    VectorFieldK acc = scaled_copy(k1.db, eb_full);
    VectorFieldK mid = k2.db;
    axpy(1.0, k3.db, mid);
    mul_factors(mid, eb_half);
    axpy(2.0, mid, acc);
    axpy(1.0, k4.db, acc);
    axpy(dt / 6.0, acc, out.b_hat);
  }
  // divergence cleanup (the update is divergence-free up to rounding)
  out.u_hat = leray_project(out.u_hat);
  out.b_hat = leray_project(out.b_hat);
  out.t = s.t + dt;
  out.diss_accum = s.diss_accum + (dt / 6.0) * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
  if (!state_finite(out)) {
    throw BlowupError(out.t, "non-finite state detected at t = " + std::to_string(out.t));
  }
  return out;
}

double suggest_dt(const MhdState& s, const SolverParams& p) {
  const double umax = lp_norm(to_physical(s.u_hat), std::numeric_limits<double>::infinity());
  const double bmax = lp_norm(to_physical(s.b_hat), std::numeric_limits<double>::infinity());
  const double speed = std::max({umax, bmax, kDtFloor});
  const double h = s.grid()->l / s.grid()->n;
  return std::min(p.cfl_c * h / speed, p.dt_max);
}

VorticityResidual vorticity_system_residual(const MhdState& s, const SolverParams& p) {
  const GridPtr& g = s.grid();
  NonlinearTerms full = rhs(s, p);
  VectorFieldK route_a_w = curl(full.du);
  VectorFieldK route_a_j = curl(full.db);

  VectorFieldK w_hat = curl(s.u_hat);
  VectorFieldK j_hat = curl(s.b_hat);
  VectorFieldR u = to_physical(s.u_hat);
  VectorFieldR b = to_physical(s.b_hat);
  VectorFieldR w = to_physical(w_hat);
  VectorFieldR j = to_physical(j_hat);
  DerivTensor du = derivative_tensor(s.u_hat);
  DerivTensor db = derivative_tensor(s.b_hat);
  DerivTensor dw = derivative_tensor(w_hat);
  DerivTensor dj = derivative_tensor(j_hat);

  const std::size_t sz = g->size();
  VectorFieldR rb_w(g), rb_j(g);
  {
    VectorFieldR u_adv_w = advect(u, dw, g);
    VectorFieldR w_adv_u = advect(w, du, g);
    VectorFieldR b_adv_j = advect(b, dj, g);
    VectorFieldR j_adv_b = advect(j, db, g);
    for (int i = 0; i < 3; ++i) {
      for (std::size_t x = 0; x < sz; ++x) {
        rb_w[i].v[x] = -u_adv_w[i].v[x] + w_adv_u[i].v[x] + b_adv_j[i].v[x] -
                       j_adv_b[i].v[x];
      }
    }
  }
  {
    VectorFieldR u_adv_j = advect(u, dj, g);
    VectorFieldR j_adv_u = advect(j, du, g);
    VectorFieldR b_adv_w = advect(b, dw, g);
    VectorFieldR w_adv_b = advect(w, db, g);
    // twist source rows: T_i = eps_{ilm} (d_l b . d_m u)
    for (std::size_t x = 0; x < sz; ++x) {
      double dot[3][3];
      for (int lrow = 0; lrow < 3; ++lrow) {
        for (int mcol = 0; mcol < 3; ++mcol) {
          dot[lrow][mcol] = db[0][lrow].v[x] * du[0][mcol].v[x] +
                            db[1][lrow].v[x] * du[1][mcol].v[x] +
                            db[2][lrow].v[x] * du[2][mcol].v[x];
        }
      }
      const double twist[3] = {dot[1][2] - dot[2][1], dot[2][0] - dot[0][2],
                               dot[0][1] - dot[1][0]};
      for (int i = 0; i < 3; ++i) {
        rb_j[i].v[x] = -u_adv_j[i].v[x] + j_adv_u[i].v[x] + b_adv_w[i].v[x] -
                       w_adv_b[i].v[x] + 2.0 * twist[i];
      }
    }
  }
  VectorFieldK route_b_w = transform(rb_w);
  VectorFieldK route_b_j = transform(rb_j);
  dealias(route_b_w);
  dealias(route_b_j);
  // dissipative parts (identical in both routes by construction)
  const Grid& gr = *g;
  const int n = gr.n;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const std::size_t id = gr.idx(ix, iy, iz);
        const double ksq = gr.k0 * gr.k0 * static_cast<double>(gr.msq(ix, iy, iz));
        for (int c = 0; c < 3; ++c) {
          route_b_w[c].a[id] -= p.nu * ksq * w_hat[c].a[id];
          route_b_j[c].a[id] -= p.eta * ksq * j_hat[c].a[id];
        }
      }
    }
  }

  auto rel_residual = [](const VectorFieldK& a, const VectorFieldK& bb) {
    VectorFieldK diff = a;
    axpy(-1.0, bb, diff);
    const double denom = l2_norm(a);
    const double num = l2_norm(diff);
    return denom > 0.0 ? num / denom : num;
  };
  VorticityResidual res;
  res.residual_w = rel_residual(route_a_w, route_b_w);
  res.residual_j = rel_residual(route_a_j, route_b_j);
  return res;
}

bool state_finite(const MhdState& s) {
  for (int c = 0; c < 3; ++c) {
    for (const cplx& z : s.u_hat[c].a) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    for (const cplx& z : s.b_hat[c].a) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

}  // namespace mhdbox
