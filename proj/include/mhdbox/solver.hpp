#pragma once

#include <cstdint>
#include <string>

#include "mhdbox/field.hpp"
#include "mhdbox/spectral.hpp"

namespace mhdbox {

// Divergence-free spectral pair (velocity, magnetic field) at time t.
// diss_accum carries the running integral of nu*||grad u||_2^2 +
// eta*||grad b||_2^2, advanced by the same Runge-Kutta stages as the fields
// so the discrete energy budget closes at the integrator's order.
struct MhdState {
  VectorFieldK u_hat;
  VectorFieldK b_hat;
  double t = 0.0;
  double diss_accum = 0.0;

  MhdState() = default;
  explicit MhdState(const GridPtr& g) : u_hat(g), b_hat(g) {}
  const GridPtr& grid() const { return u_hat.grid(); }
};

struct SolverParams {
  double nu = 0.0;        // kinematic viscosity, > 0
  double eta = 0.0;       // magnetic diffusivity, > 0
  double dt = 0.0;
  double t_end = 0.0;
  double cfl_c = 0.5;     // safety factor of suggest_dt
  double dt_max = 0.1;    // cap of suggest_dt
  double omega_ceiling = 1.0e6;  // sup-vorticity level treated as blow-up
};

// Both diffusivities must be strictly positive; the ideal (inviscid,
// non-resistive) system is not supported.  Throws std::invalid_argument.
void validate_params(const SolverParams& p);

// Named divergence-free initial states.  Accepted names:
//   kolmogorov | abc | taylor_green | orszag_tang_3d
//   aligned(<name>)          -- u0 = b0 = velocity of <name>
//   random_band(<j>,<seed>)  -- u0 random, supported on dyadic shell j
// Unknown names throw std::invalid_argument.
MhdState initial_condition(const std::string& name, double amplitude, const GridPtr& grid);

MhdState ic_kolmogorov(const GridPtr& grid, double amplitude);
MhdState ic_abc(const GridPtr& grid, double amplitude);
MhdState ic_taylor_green(const GridPtr& grid, double amplitude);
MhdState ic_orszag_tang_3d(const GridPtr& grid, double amplitude);
MhdState ic_random_band(const GridPtr& grid, int j, std::uint64_t seed, double amplitude);

// Dealiased nonlinear terms:
//   nu_hat = LerayProject(-(u.grad)u + (b.grad)b)
//   nb_hat = -(u.grad)b + (b.grad)u
struct NonlinearTerms {
  VectorFieldK du;
  VectorFieldK db;
};
NonlinearTerms nonlinear_terms(const MhdState& s);

// Full right side including dissipation:
//   du = LerayProject(-(u.grad)u + (b.grad)b) + nu Laplace u
//   db = -(u.grad)b + (b.grad)u + eta Laplace b
NonlinearTerms rhs(const MhdState& s, const SolverParams& p);

// One integrating-factor RK4 step: the dissipative terms are treated exactly
// through e^{-nu |k|^2 dt} / e^{-eta |k|^2 dt}, the nonlinear terms through
// classical RK4 stages.  Throws BlowupError when the result is non-finite.
MhdState step(const MhdState& s, const SolverParams& p);

// CFL-style suggestion: cfl_c * (l/n) / max(||u||_inf, ||b||_inf, floor),
// capped at dt_max.
double suggest_dt(const MhdState& s, const SolverParams& p);

// Consistency of the curled system: route A takes the curl of the momentum /
// induction right sides; route B evaluates the expanded vorticity and
// current-density equations (with the 2T(b,u) source).  Returns relative L2
// residuals (absolute when the denominator vanishes).
struct VorticityResidual {
  double residual_w = 0.0;
  double residual_j = 0.0;
};
VorticityResidual vorticity_system_residual(const MhdState& s, const SolverParams& p);

// True when every coefficient of both fields is finite.
bool state_finite(const MhdState& s);

}  // namespace mhdbox
