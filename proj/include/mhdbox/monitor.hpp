#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mhdbox/lpaley.hpp"
#include "mhdbox/solver.hpp"

namespace mhdbox {

// Per-snapshot norms and shell diagnostics.
struct DiagnosticRecord {
  double t = 0.0;
  bool finite = true;
  double l2_u = 0.0, l2_b = 0.0;
  double l2_w = 0.0, l2_j = 0.0;        // vorticity / current density L2
  double sup_w = 0.0;                   // ||curl u||_inf (grid max)
  double grad_u_l2 = 0.0, grad_b_l2 = 0.0;
  double diss_rate = 0.0;               // nu ||grad u||^2 + eta ||grad b||^2
  double diss_accum = 0.0;              // integrator-accumulated dissipation
  std::vector<double> hs_u, hs_b;       // H^s norms for the configured s list
  double aux_p = 0.0;                   // exponent of the three entries below
  double lp_u = 0.0, lp_grad_u = 0.0, lp_curl_u = 0.0;
  double besov0_inf_w = 0.0;            // sup_j of shell_sup
  std::vector<double> shell_sup;        // ||shell_j(curl u)||_inf per shell
};

struct MonitorConfig {
  std::vector<double> s_list = {1.0, 2.0};
  double aux_p = 4.0;   // exponent recorded for the integral criteria
};

DiagnosticRecord record(const MhdState& s, const DyadicPartition& part,
                        const MonitorConfig& mc, const SolverParams& params);

// Shell-wise window integrals of the vorticity sup-norms.
struct BkmReport {
  double eps = 0.0;                     // window length
  double t_end = 0.0;                   // window is [t_end - eps, t_end]
  double delta = 0.0;                   // sup over shells of the integrals
  int argmax_shell = 0;                 // j attaining the sup
  std::vector<double> per_shell;        // integral per shell, j_min-first
  int j_min = 0;
  // comparison triple: delta <= int_besov <= kernel_const * int_sup
  double int_besov = 0.0;               // integral of sup_j ||shell_j w||_inf
  double int_supw = 0.0;                // integral of ||w||_inf
};

// Trapezoidal integrals over [t_end - eps, t_end] where t_end is the last
// record's time.  Records must cover the window.
BkmReport bkm_delta(std::span<const DiagnosticRecord> records, double eps);

// The same report for a ladder of window lengths.
std::vector<BkmReport> bkm_ladder(std::span<const DiagnosticRecord> records,
                                  std::span<const double> eps_ladder);

// Integral criteria on the time series: int ||u||_p^q, int ||grad u||_p^q,
// int ||curl u||_p^q, plus the shell-based and sup-norm integrals.
// Admissibility of (p,q):
//   velocity integral:   2/q + 3/p <= 1 and 3 < p <= inf
//   gradient integral:   2/q + 3/p <= 2 and 3/2 < p <= inf
//   vorticity integral:  2/q + 3/p <= 2 and 3/2 < p < inf
struct AuxiliaryReport {
  double p = 0.0, q = 0.0;
  std::optional<std::string> velocity_rejected;   // violated constraint, if any
  std::optional<std::string> gradient_rejected;
  std::optional<std::string> vorticity_rejected;
  double int_u_pq = 0.0;        // valid when velocity_rejected is empty
  double int_grad_u_pq = 0.0;
  double int_curl_u_pq = 0.0;
  double int_besov0_inf = 0.0;
  double int_sup_w = 0.0;
};

AuxiliaryReport auxiliary_criteria(std::span<const DiagnosticRecord> records,
                                   double p, double q);

// Returns the violated constraint for one of the three criteria, or nothing.
// which: 0 velocity, 1 gradient, 2 vorticity.
std::optional<std::string> admissibility_violation(int which, double p, double q);

// Energy budget residual against the first record:
//   residual(t) = E(t0) - E(t) - 2 * (D(t) - D(t0)),  E = ||u||^2 + ||b||^2.
struct EnergyBudget {
  std::vector<double> residual;
  double max_abs = 0.0;
  int sign_at_max = 0;
};
EnergyBudget energy_budget(std::span<const DiagnosticRecord> records);

// Shell-count and damping-window quantities of the enstrophy estimate:
//   E = ||w||_2 + ||J||_2
//   N = floor( (2/ln 2) * ln(e + C E / min(nu,eta)) ) + 1
//   Z = ln(E + e)
struct GronwallReport {
  double E = 0.0;
  int N = 1;
  double Z = 1.0;
  double C = 1.0;
};
GronwallReport gronwall_quantities(const DiagnosticRecord& rec, double C,
                                   double nu, double eta);

// The three integrals that vanish for divergence-free fields, reported as
// residuals relative to their Cauchy-Schwarz scale, plus the enstrophy
// balance assembled from the I + II + III + 2 IV split minus dissipation.
struct CancellationReport {
  double adv_w = 0.0;    // |(u.grad)w . w| / (||u||_inf ||grad w|| ||w||)
  double adv_j = 0.0;    // |(u.grad)J . J| / (||u||_inf ||grad J|| ||J||)
  double mixed = 0.0;    // |(b.grad)J.w + (b.grad)w.J| / scale
  double term_i = 0.0;   // (w.grad)u . w
  double term_ii = 0.0;  // (J.grad)u . J
  double term_iii = 0.0; // -((J.grad)b.w + (w.grad)b.J)
  double term_iv = 0.0;  // T(b,u) . J
  double enstrophy_rate = 0.0;  // I + II + III + 2 IV - dissipation
};
CancellationReport cancellation_checks(const MhdState& s, const SolverParams& p);

// Pointwise-in-time check of
//   ||u||_{H^s}^2 + ||b||_{H^s}^2 <= C0 exp(t sup_{t'<=t} ||(u,b)||_{H^1}^4)
// with C0 = slack * (value at the first record).  s must be in the recorded
// s list.
struct HsGrowthReport {
  double s = 0.0;
  double c0 = 0.0;
  double max_ratio = 0.0;   // max over records of lhs / bound
  bool holds = false;
};
HsGrowthReport hs_growth_check(std::span<const DiagnosticRecord> records,
                               double s, const MonitorConfig& mc,
                               double slack = 1.0);

}  // namespace mhdbox
