#pragma once

#include "mhdbox/field.hpp"

namespace mhdbox {

// Unnormalized forward DFT: a(k) = sum_x f(x) e^{-ik.x}.
ScalarFieldK transform(const ScalarFieldR& f);

// Inverse DFT, divides by n^3.  transform/inverse_transform round-trip to
// floating tolerance.
ScalarFieldR inverse_transform(const ScalarFieldK& f);

VectorFieldK transform(const VectorFieldR& f);
VectorFieldR inverse_transform(const VectorFieldK& f);

}  // namespace mhdbox
