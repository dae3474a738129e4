#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mhdbox/config.hpp"

namespace mhdbox {

// Drives a configured run: steps the solver to t_end (or a blow-up halt),
// appends one row per cadence tick to <outdir>/records.tsv, writes the window
// reports, the Gronwall series, the energy budget summary and checkpoints.
// Returns an ExitStatus value.  When `resume` names a checkpoint, the state
// is restored from it (the config hash must match) and the records file is
// truncated back to the checkpoint row before appending.
int run(const RunConfig& config, std::ostream& log,
        const std::optional<std::string>& resume = std::nullopt);

// Offline re-analysis: parse a records file and recompute the window reports
// for the given ladder.
int analyze_records(const std::string& records_path,
                    const std::vector<double>& eps_ladder, std::ostream& out);

// Pretty-print a snapshot or checkpoint header plus basic norms.
int inspect_file(const std::string& path, std::ostream& out);

// Parsed back form of records.tsv (used by analyze and the tests).
struct RecordsFile {
  std::vector<std::string> columns;
  std::vector<DiagnosticRecord> records;
  int shell_j_min = 0;
};
RecordsFile parse_records_file(const std::string& path);

}  // namespace mhdbox
