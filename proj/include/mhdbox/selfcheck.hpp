#pragma once

#include <iosfwd>

namespace mhdbox {

// The `verify` subcommand: exercises the identity and inequality probes the
// library is built around (partition exactness, reconstruction, transform
// round trips, projector and inversion identities, shell derivative bounds,
// commutator closed forms, advection cancellations, the curled-system
// consistency and the shell-count arithmetic), printing one line per probe.
// Returns true when every probe passes.
bool run_verification_probes(std::ostream& out);

}  // namespace mhdbox
