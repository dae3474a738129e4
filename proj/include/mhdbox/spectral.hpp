#pragma once

#include "mhdbox/fft.hpp"
#include "mhdbox/field.hpp"

namespace mhdbox {

// --- multiplier calculus on spectral fields -------------------------------

// (ik x v)_i per mode.
VectorFieldK curl(const VectorFieldK& v);

// ik . v per mode.
ScalarFieldK divergence(const VectorFieldK& v);

// d/dx_axis, axis in {0,1,2}.
ScalarFieldK derivative(const ScalarFieldK& f, int axis);

// Mode-wise v - k (k.v)/|k|^2 for k != 0; the k=0 mode passes through.
VectorFieldK leray_project(const VectorFieldK& v);

// Unique mean-free divergence-free u with curl(u) = w:
// u(k) = (ik x w(k)) / |k|^2, k != 0.  Rejects w with a nonzero mean mode
// (relative to the field's L2 size).
VectorFieldK biot_savart(const VectorFieldK& w);

// Riesz transform multiplier -i k_axis / |k| (k=0 mode mapped to 0).
// axis in {1,2,3} to match the usual R_1, R_2, R_3 naming.
ScalarFieldK riesz(int axis, const ScalarFieldK& f);

// Bessel potential (I - Laplace)^{s/2}: multiplier (1+|k|^2)^{s/2}.
ScalarFieldK lambda_s(const ScalarFieldK& f, double s);
VectorFieldK lambda_s(const VectorFieldK& f, double s);

// Zero every mode outside the grid's dealias mask.
void dealias(ScalarFieldK& f);
void dealias(VectorFieldK& f);

// --- norms and inner products ---------------------------------------------

// ((l/n)^3 sum |f|^p)^{1/p} for finite p; grid max for p = infinity.
// Vector fields use the pointwise Euclidean magnitude.  p >= 1 required.
double lp_norm(const ScalarFieldR& f, double p);
double lp_norm(const VectorFieldR& f, double p);

// L2 norm evaluated spectrally through Parseval (matches lp_norm(.,2) of the
// inverse transform to rounding).
double l2_norm(const ScalarFieldK& f);
double l2_norm(const VectorFieldK& f);

// sqrt(sum_axes ||d_axis f||_2^2), evaluated spectrally.
double grad_l2_norm(const VectorFieldK& f);

// (l/n)^3 sum_x a(x).b(x)
double inner_l2(const VectorFieldR& a, const VectorFieldR& b);

// (a.grad)f sampled in physical space (derivatives taken spectrally).
VectorFieldR convect(const VectorFieldR& a, const VectorFieldK& f);

// --- elementwise helpers ----------------------------------------------------

void axpy(double alpha, const ScalarFieldK& x, ScalarFieldK& y);  // y += alpha x
void axpy(double alpha, const VectorFieldK& x, VectorFieldK& y);
void scale(ScalarFieldK& f, double alpha);
void scale(VectorFieldK& f, double alpha);

// Pointwise product of real fields.
ScalarFieldR multiply(const ScalarFieldR& a, const ScalarFieldR& b);

}  // namespace mhdbox
