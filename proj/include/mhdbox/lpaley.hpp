#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mhdbox/field.hpp"
#include "mhdbox/spectral.hpp"

namespace mhdbox {

// Radial profile of the low-pass cutoff: 1 on |xi| <= 1, 0 on |xi| >= 4/3,
// smooth monotone bridge in between.
double chi_profile(double r);

// Shell profile phi(xi) = chi(xi/2) - chi(xi); supported on 1 <= |xi| <= 8/3
// and identically 1 on 4/3 <= |xi| <= 2.
double phi_profile(double r);

// Dyadic partition of unity sampled on the grid's wavenumber lattice.
//
// chi_mask holds chi(2^{-j_min}|k|); phi_masks[j - j_min] holds
// phi(2^{-j}|k|).  The shell range covers every retained nonzero mode, and
// chi_mask + sum_j phi_masks == 1 on each retained mode.
struct DyadicPartition {
  GridPtr grid;
  int j_min = 0;
  int j_max = -1;
  std::vector<double> chi_mask;
  std::vector<std::vector<double>> phi_masks;

  int shell_count() const { return j_max - j_min + 1; }
  bool in_range(int j) const { return j >= j_min && j <= j_max; }
  const std::vector<double>& phi_mask(int j) const {
    return phi_masks[static_cast<std::size_t>(j - j_min)];
  }
};

DyadicPartition build_partition(const GridPtr& grid);

// Shell block: multiplier phi(2^{-j}|k|).  j must be in range.
ScalarFieldK project_shell(const ScalarFieldK& f, const DyadicPartition& part, int j);
VectorFieldK project_shell(const VectorFieldK& f, const DyadicPartition& part, int j);

// Low block: multiplier chi(2^{-j_min}|k|).  Together with the shells it
// reconstructs the identity on retained modes.
ScalarFieldK project_low(const ScalarFieldK& f, const DyadicPartition& part);
VectorFieldK project_low(const VectorFieldK& f, const DyadicPartition& part);

// Ball block S_j: multiplier chi(2^{-(j+1)}|k|), so that the shell block at j
// equals S_j - S_{j-1}.  Any j is accepted (the mask is evaluated directly).
ScalarFieldK project_ball(const ScalarFieldK& f, const GridPtr& grid, int j);

// max_j sum_y |kernel_j(y)| where kernel_j is the physical-space convolution
// kernel of the shell multiplier at j.  By Young's inequality this bounds
// ||shell block||_inf / ||f||_inf on the grid.
double shell_kernel_constant(const DyadicPartition& part);

struct NormRequest {
  double s = 0.0;
  double p = 2.0;        // may be infinity
  double q = 2.0;        // may be infinity
  bool homogeneous = true;
};

// Besov norm: l^q over shells of 2^{js} ||shell block of f||_p.  The
// homogeneous variant sums every shell in range; the inhomogeneous variant
// adds ||chi(D) f||_p and restricts the l^q sum to j >= 0.
double besov_norm(const ScalarFieldK& f, const NormRequest& r, const DyadicPartition& part);
double besov_norm(const VectorFieldK& f, const NormRequest& r, const DyadicPartition& part);

// || (I - Laplace)^{s/2} f ||_2, evaluated spectrally.
double sobolev_norm(const ScalarFieldK& f, double s);
double sobolev_norm(const VectorFieldK& f, double s);

// Empirical constant of the shell derivative inequality
// ||d^alpha (shell f)||_q <= C 2^{j k + 3 j (1/p - 1/q)} ||shell f||_p:
// returns the max over multi-indices |alpha| = order of the measured ratio.
// Requires p <= q and a nonvanishing shell block.
double bernstein_ratio(const ScalarFieldK& f, int j, int order, double p, double q,
                       const DyadicPartition& part);
double bernstein_ratio(const VectorFieldK& f, int j, int order, double p, double q,
                       const DyadicPartition& part);

// Commutator (I-Laplace)^{s/2}(fg) - f (I-Laplace)^{s/2} g with dealiased
// products, together with the norms entering the product-rule bound
// ||residual||_p <= C (||grad f||_{p1} ||g||_{H^{s-1,p2}} + ||f||_{H^{s,p3}} ||g||_{p4}).
struct CommutatorReport {
  ScalarFieldK residual;
  double residual_lp = 0.0;
  double grad_f_p1 = 0.0;
  double g_hs1_p2 = 0.0;
  double f_hs_p3 = 0.0;
  double g_p4 = 0.0;
  double bracket = 0.0;   // grad_f_p1 * g_hs1_p2 + f_hs_p3 * g_p4
  double ratio = 0.0;     // residual_lp / bracket (0 when bracket is 0)
};

struct CommutatorExponents {
  double p = 2.0;
  double p1 = 4.0, p2 = 4.0, p3 = 4.0, p4 = 4.0;
};

CommutatorReport commutator_residual(const ScalarFieldK& f, const ScalarFieldK& g,
                                     double s, const CommutatorExponents& exps = {});

}  // namespace mhdbox
