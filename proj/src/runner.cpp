#include "mhdbox/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "mhdbox/errors.hpp"
#include "mhdbox/snapshot.hpp"

namespace mhdbox {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<std::string> header_columns(const RunConfig& cfg, const DyadicPartition& part) {
  std::vector<std::string> cols = {"t",         "finite",    "l2_u",     "l2_b",
                                   "l2_w",      "l2_j",      "sup_w",    "grad_u_l2",
                                   "grad_b_l2", "diss_rate", "diss_accum"};
  for (double s : cfg.s_list) cols.push_back("hsu_" + fmt_short(s));
  for (double s : cfg.s_list) cols.push_back("hsb_" + fmt_short(s));
  const std::string psuf = "_p" + fmt_short(cfg.aux_p);
  cols.push_back("lpu" + psuf);
  cols.push_back("lpgradu" + psuf);
  cols.push_back("lpcurlu" + psuf);
  cols.push_back("besov0inf_w");
  for (int j = part.j_min; j <= part.j_max; ++j) {
    cols.push_back("shell_" + std::to_string(j));
  }
  return cols;
}

std::string record_row(const DiagnosticRecord& r) {
  std::ostringstream os;
  os << fmt(r.t) << '\t' << (r.finite ? 1 : 0) << '\t' << fmt(r.l2_u) << '\t'
     << fmt(r.l2_b) << '\t' << fmt(r.l2_w) << '\t' << fmt(r.l2_j) << '\t'
     << fmt(r.sup_w) << '\t' << fmt(r.grad_u_l2) << '\t' << fmt(r.grad_b_l2) << '\t'
     << fmt(r.diss_rate) << '\t' << fmt(r.diss_accum);
  for (double v : r.hs_u) os << '\t' << fmt(v);
  for (double v : r.hs_b) os << '\t' << fmt(v);
  os << '\t' << fmt(r.lp_u) << '\t' << fmt(r.lp_grad_u) << '\t' << fmt(r.lp_curl_u);
  os << '\t' << fmt(r.besov0_inf_w);
  for (double v : r.shell_sup) os << '\t' << fmt(v);
  os << '\n';
  return os.str();
}

void print_bkm(const BkmReport& rep, int j_min, bool alert, std::ostream& out) {
  out << "window eps=" << fmt_short(rep.eps) << " t_end=" << fmt(rep.t_end)
      << " delta=" << fmt(rep.delta)
      << " argmax_j=" << (rep.argmax_shell + j_min)
      << " int_besov=" << fmt(rep.int_besov) << " int_supw=" << fmt(rep.int_supw)
      << " exceeds_alert=" << (alert ? 1 : 0) << "\n";
  for (std::size_t i = 0; i < rep.per_shell.size(); ++i) {
    out << "  shell " << (static_cast<int>(i) + j_min) << "\t"
        << fmt(rep.per_shell[i]) << "\n";
  }
}

// keep the header plus every row with t <= t_keep
void truncate_records_file(const std::string& path, double t_keep) {
  std::ifstream in(path);
  if (!in) return;
  std::vector<std::string> kept;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      kept.push_back(line);
      first = false;
      continue;
    }
    if (line.empty()) continue;
    const double t = std::strtod(line.c_str(), nullptr);
    if (t <= t_keep) kept.push_back(line);
  }
  in.close();
  std::ofstream out(path, std::ios::trunc);
  for (const auto& l : kept) out << l << '\n';
}

struct RunArtifacts {
  std::vector<DiagnosticRecord> records;
  bool blown_up = false;
  std::string halt_reason;
};

void write_reports(const RunConfig& cfg, const DyadicPartition& part,
                   const RunArtifacts& art, std::ostream& log) {
  const fs::path outdir(cfg.outdir);
  // window reports
  {
    std::ofstream bkm(outdir / "bkm.txt", std::ios::trunc);
    if (!bkm) throw SnapshotError(SnapshotError::Kind::Io, "cannot write bkm.txt");
    if (art.blown_up) {
      bkm << "# run halted: " << art.halt_reason << "\n";
      bkm << "# final-window reports\n";
    }
    if (art.records.size() >= 2) {
      const double span = art.records.back().t - art.records.front().t;
      for (double eps : cfg.eps_ladder) {
        const double eff = std::min(eps, span);
        if (!(eff > 0.0)) continue;
        BkmReport rep = bkm_delta(art.records, eff);
        const bool alert = rep.delta >= cfg.m_alert;
        print_bkm(rep, part.j_min, alert, bkm);
        if (alert) {
          log << "alert: window integral " << fmt(rep.delta)
              << " reached the configured level " << fmt(cfg.m_alert)
              << " (eps=" << fmt_short(eff) << ")\n";
        }
      }
    }
  }
  // shell-count / damping-window series
  {
    std::ofstream gw(outdir / "gronwall.tsv", std::ios::trunc);
    if (!gw) throw SnapshotError(SnapshotError::Kind::Io, "cannot write gronwall.tsv");
    gw << "t\tE\tN\tZ\n";
    for (const auto& r : art.records) {
      GronwallReport g = gronwall_quantities(r, cfg.c_gronwall, cfg.params.nu,
                                             cfg.params.eta);
      gw << fmt(r.t) << '\t' << fmt(g.E) << '\t' << g.N << '\t' << fmt(g.Z) << '\n';
    }
  }
  // energy budget summary
  {
    std::ofstream en(outdir / "energy.txt", std::ios::trunc);
    if (!en) throw SnapshotError(SnapshotError::Kind::Io, "cannot write energy.txt");
    if (!art.records.empty()) {
      EnergyBudget budget = energy_budget(art.records);
      en << "max_abs_residual=" << fmt(budget.max_abs)
         << " sign_at_max=" << budget.sign_at_max
         << " records=" << art.records.size() << "\n";
    }
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& log,
        const std::optional<std::string>& resume) {
  GridPtr grid;
  DyadicPartition part;
  MhdState state;
  std::uint64_t step_start = 0;
  const std::uint64_t cfg_hash = config_hash(config);

  try {
    validate_params(config.params);
    grid = make_grid(config.n, config.l);
    part = build_partition(grid);
    if (resume) {
      CheckpointData ckpt = read_checkpoint(*resume);
      if (ckpt.config_hash != cfg_hash) {
        throw ConfigError("checkpoint \"" + *resume +
                          "\" belongs to a different configuration");
      }
      state = std::move(ckpt.snapshot.state);
      step_start = ckpt.step;
    } else {
      state = initial_condition(config.ic, config.amplitude, grid);
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SnapshotError& e) {
    log << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  }

  const MonitorConfig mc = config.monitor_config();
  RunArtifacts art;

  try {
    fs::create_directories(config.outdir);
    const fs::path records_path = fs::path(config.outdir) / "records.tsv";

    std::ofstream records_out;
    if (resume) {
      truncate_records_file(records_path.string(), state.t);
      records_out.open(records_path, std::ios::app);
    } else {
      records_out.open(records_path, std::ios::trunc);
      if (records_out) {
        auto cols = header_columns(config, part);
        for (std::size_t i = 0; i < cols.size(); ++i) {
          records_out << cols[i] << (i + 1 < cols.size() ? '\t' : '\n');
        }
      }
    }
    if (!records_out) {
      throw SnapshotError(SnapshotError::Kind::Io, "cannot open records file");
    }

    const std::uint64_t nsteps =
        static_cast<std::uint64_t>(std::llround(config.params.t_end / config.params.dt));
    const double dt_hint = suggest_dt(state, config.params);
    if (config.params.dt > dt_hint) {
      log << "warning: dt=" << fmt_short(config.params.dt)
          << " exceeds the suggested step " << fmt_short(dt_hint) << "\n";
    }

    auto emit = [&](const DiagnosticRecord& r) {
      art.records.push_back(r);
      records_out << record_row(r);
      records_out.flush();
    };

    if (!resume) {
      emit(record(state, part, mc, config.params));
    } else {
      // reconstruct the in-memory series for the final reports
      RecordsFile prior = parse_records_file(records_path.string());
      art.records = std::move(prior.records);
    }

    for (std::uint64_t s = step_start + 1; s <= nsteps; ++s) {
      state = step(state, config.params);
      if (s % static_cast<std::uint64_t>(config.cadence) == 0 || s == nsteps) {
        DiagnosticRecord r = record(state, part, mc, config.params);
        emit(r);
        if (!r.finite) {
          throw BlowupError(state.t, "non-finite diagnostics at t = " + fmt(state.t));
        }
        if (r.sup_w > config.params.omega_ceiling) {
          throw BlowupError(state.t,
                            "sup-vorticity " + fmt(r.sup_w) +
                                " exceeded the configured ceiling at t = " + fmt(state.t));
        }
      }
      if (config.checkpoint_interval > 0 &&
          s % static_cast<std::uint64_t>(config.checkpoint_interval) == 0) {
        const fs::path ck = fs::path(config.outdir) / ("ckpt_" + std::to_string(s) + ".bin");
        write_checkpoint(state, config.params, s, cfg_hash, ck.string());
        // continue from the stored samples so an interrupted run resumed from
        // this file reproduces the remaining trajectory bit for bit
        CheckpointData back = read_checkpoint(ck.string());
        state = std::move(back.snapshot.state);
      }
    }

    write_snapshot(state, config.params, (fs::path(config.outdir) / "final_state.bin").string());
    write_reports(config, part, art, log);
    log << "run finished at t = " << fmt(state.t) << " after " << nsteps << " steps\n";
    return kExitOk;
  } catch (const BlowupError& e) {
    art.blown_up = true;
    art.halt_reason = e.what();
    log << "blow-up suspected: " << e.what() << "\n";
    try {
      write_reports(config, part, art, log);
    } catch (const SnapshotError& io) {
      log << "i/o error while writing final reports: " << io.what() << "\n";
    }
    return kExitBlowupSuspected;
  } catch (const SnapshotError& e) {
    log << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const fs::filesystem_error& e) {
    log << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  }
}

RecordsFile parse_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SnapshotError(SnapshotError::Kind::Io, "cannot open \"" + path + "\"");
  RecordsFile out;
  std::string line;
  if (!std::getline(in, line)) {
    throw SnapshotError(SnapshotError::Kind::Truncated, "records file has no header");
  }
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) out.columns.push_back(col);
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < out.columns.size(); ++i) index[out.columns[i]] = i;

  std::vector<int> shell_js;
  std::vector<std::size_t> shell_cols, hsu_cols, hsb_cols;
  double aux_p = 0.0;
  for (std::size_t i = 0; i < out.columns.size(); ++i) {
    const std::string& c = out.columns[i];
    if (c.starts_with("shell_")) {
      shell_js.push_back(std::stoi(c.substr(6)));
      shell_cols.push_back(i);
    } else if (c.starts_with("hsu_")) {
      hsu_cols.push_back(i);
    } else if (c.starts_with("hsb_")) {
      hsb_cols.push_back(i);
    } else if (c.starts_with("lpu_p")) {
      aux_p = std::strtod(c.substr(5).c_str(), nullptr);
    }
  }
  out.shell_j_min = shell_js.empty() ? 0 : *std::min_element(shell_js.begin(), shell_js.end());

  auto get = [&](const std::vector<double>& row, const std::string& name) {
    auto it = index.find(name);
    return it == index.end() ? 0.0 : row[it->second];
  };
  auto get_prefixed = [&](const std::vector<double>& row, const std::string& prefix) {
    for (const auto& [name, i] : index) {
      if (name.starts_with(prefix)) return row[i];
    }
    return 0.0;
  };

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    row.reserve(out.columns.size());
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '\t')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != out.columns.size()) {
      throw SnapshotError(SnapshotError::Kind::SizeMismatch,
                          "records row width does not match the header");
    }
    DiagnosticRecord r;
    r.t = get(row, "t");
    r.finite = get(row, "finite") != 0.0;
    r.l2_u = get(row, "l2_u");
    r.l2_b = get(row, "l2_b");
    r.l2_w = get(row, "l2_w");
    r.l2_j = get(row, "l2_j");
    r.sup_w = get(row, "sup_w");
    r.grad_u_l2 = get(row, "grad_u_l2");
    r.grad_b_l2 = get(row, "grad_b_l2");
    r.diss_rate = get(row, "diss_rate");
    r.diss_accum = get(row, "diss_accum");
    for (std::size_t i : hsu_cols) r.hs_u.push_back(row[i]);
    for (std::size_t i : hsb_cols) r.hs_b.push_back(row[i]);
    r.aux_p = aux_p;
    r.lp_u = get_prefixed(row, "lpu_p");
    r.lp_grad_u = get_prefixed(row, "lpgradu_p");
    r.lp_curl_u = get_prefixed(row, "lpcurlu_p");
    r.besov0_inf_w = get(row, "besov0inf_w");
    for (std::size_t i : shell_cols) r.shell_sup.push_back(row[i]);
    out.records.push_back(std::move(r));
  }
  return out;
}

int analyze_records(const std::string& records_path,
                    const std::vector<double>& eps_ladder, std::ostream& out) {
  try {
    RecordsFile file = parse_records_file(records_path);
    if (file.records.size() < 2) {
      out << "not enough records to integrate\n";
      return kExitConfigError;
    }
    for (double eps : eps_ladder) {
      BkmReport rep = bkm_delta(file.records, eps);
      print_bkm(rep, file.shell_j_min, false, out);
    }
    return kExitOk;
  } catch (const SnapshotError& e) {
    out << "i/o error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const std::invalid_argument& e) {
    out << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int inspect_file(const std::string& path, std::ostream& out) {
  try {
    SnapshotData snap;
    if (is_checkpoint_file(path)) {
      CheckpointData ckpt = read_checkpoint(path);
      out << "checkpoint step=" << ckpt.step << " config_hash=" << ckpt.config_hash
          << " diss_accum=" << fmt(ckpt.snapshot.state.diss_accum) << "\n";
      snap = std::move(ckpt.snapshot);
    } else {
      snap = read_snapshot(path);
    }
    const SnapshotHeader& h = snap.header;
    out << "version=" << h.version << " n=" << h.n << " l=" << fmt(h.l)
        << " t=" << fmt(h.t) << " nu=" << fmt(h.nu) << " eta=" << fmt(h.eta)
        << " fields=" << h.field_count << "\n";
    const MhdState& s = snap.state;
    VectorFieldK w = curl(s.u_hat);
    out << "l2_u=" << fmt(l2_norm(s.u_hat)) << " l2_b=" << fmt(l2_norm(s.b_hat))
        << " l2_w=" << fmt(l2_norm(w))
        << " sup_w=" << fmt(lp_norm(inverse_transform(w),
                                    std::numeric_limits<double>::infinity()))
        << "\n";
    return kExitOk;
  } catch (const SnapshotError& e) {
    out << "snapshot error: " << e.what() << "\n";
    return kExitIoError;
  }
}

}  // namespace mhdbox
