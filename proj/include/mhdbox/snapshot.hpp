#pragma once

#include <cstdint>
#include <string>

#include "mhdbox/solver.hpp"

namespace mhdbox {

// Binary state snapshot.  Layout (little endian):
//   magic "MHDSNAP\0" (8 bytes)
//   u32 version (currently 1)
//   u32 n
//   f64 l, t, nu, eta
//   u32 field_count (6: u then b components)
//   field_count * n^3 f64 arrays, real-space samples, x-fastest
// The write/read round trip is bit-exact on the stored samples.
struct SnapshotHeader {
  std::uint32_t version = 1;
  std::uint32_t n = 0;
  double l = 0.0;
  double t = 0.0;
  double nu = 0.0;
  double eta = 0.0;
  std::uint32_t field_count = 6;
};

void write_snapshot(const MhdState& s, const SolverParams& p, const std::string& path);

struct SnapshotData {
  SnapshotHeader header;
  MhdState state;
};

// Throws SnapshotError with a distinct kind for bad magic, version mismatch,
// truncated payload and size mismatch.
SnapshotData read_snapshot(const std::string& path);

// Header-only read (used by `inspect`).
SnapshotHeader read_snapshot_header(const std::string& path);

// Checkpoint: a snapshot followed by the trailer
//   magic "MHDCKPT\0" (8 bytes), u64 step index, u64 config hash,
//   f64 accumulated dissipation.
// Resuming under a different config hash is refused.
struct CheckpointData {
  SnapshotData snapshot;
  std::uint64_t step = 0;
  std::uint64_t config_hash = 0;
};

void write_checkpoint(const MhdState& s, const SolverParams& p, std::uint64_t step,
                      std::uint64_t config_hash, const std::string& path);
CheckpointData read_checkpoint(const std::string& path);

// True when the file carries the checkpoint trailer.
bool is_checkpoint_file(const std::string& path);

}  // namespace mhdbox
