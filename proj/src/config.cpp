#include "mhdbox/config.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mhdbox/errors.hpp"

namespace mhdbox {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "n",       "l",        "nu",        "eta",      "dt",
    "t_end",   "ic",       "amplitude", "seed",     "cadence",
    "eps_ladder", "c_gronwall", "m_alert", "s_list", "aux_p",
    "aux_q",   "outdir",   "checkpoint_interval", "omega_ceiling",
    "cfl_c",   "dt_max"};

double get_number(const json& j, const std::string& key) {
  if (!j.at(key).is_number()) throw ConfigError("key \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config document: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config document must be an object");

  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!kKnownKeys.count(it.key())) {
      throw ConfigError("unknown config key \"" + it.key() + "\"");
    }
  }
  for (const char* key : {"n", "nu", "eta", "dt", "t_end", "ic"}) {
    if (!doc.contains(key)) {
      throw ConfigError("missing mandatory config key \"" + std::string(key) + "\"");
    }
  }

  RunConfig c;
  c.n = doc.at("n").get<int>();
  if (c.n < 4 || c.n % 2 != 0) throw ConfigError("\"n\" must be an even integer >= 4");
  c.l = doc.contains("l") ? get_number(doc, "l") : kTwoPi;
  if (!(c.l > 0.0)) throw ConfigError("\"l\" must be positive");

  c.params.nu = get_number(doc, "nu");
  c.params.eta = get_number(doc, "eta");
  if (!(c.params.nu > 0.0) || !(c.params.eta > 0.0)) {
    throw ConfigError(
        "ideal MHD is out of scope: \"nu\" and \"eta\" must both be strictly positive");
  }
  c.params.dt = get_number(doc, "dt");
  if (!(c.params.dt > 0.0)) throw ConfigError("\"dt\" must be positive");
  c.params.t_end = get_number(doc, "t_end");
  if (!(c.params.t_end > 0.0)) throw ConfigError("\"t_end\" must be positive");

  c.ic = doc.at("ic").get<std::string>();
  c.amplitude = doc.contains("amplitude") ? get_number(doc, "amplitude") : 1.0;
  c.seed = doc.contains("seed") ? doc.at("seed").get<std::uint64_t>() : 0;
  c.cadence = doc.contains("cadence") ? doc.at("cadence").get<int>() : 1;
  if (c.cadence < 1) throw ConfigError("\"cadence\" must be >= 1");

  if (doc.contains("eps_ladder")) {
    c.eps_ladder = doc.at("eps_ladder").get<std::vector<double>>();
  } else {
    c.eps_ladder = {c.params.t_end / 4.0, c.params.t_end / 16.0};
  }
  for (double e : c.eps_ladder) {
    if (!(e > 0.0) || e > c.params.t_end) {
      throw ConfigError("every \"eps_ladder\" entry must lie in (0, t_end]");
    }
  }

  c.c_gronwall = doc.contains("c_gronwall") ? get_number(doc, "c_gronwall") : 1.0;
  if (!(c.c_gronwall > 0.0)) throw ConfigError("\"c_gronwall\" must be positive");
  c.m_alert = doc.contains("m_alert") ? get_number(doc, "m_alert") : 1.0;
  if (!(c.m_alert > 0.0)) throw ConfigError("\"m_alert\" must be positive");

  if (doc.contains("s_list")) c.s_list = doc.at("s_list").get<std::vector<double>>();
  bool has_one = false;
  for (double s : c.s_list) has_one = has_one || std::abs(s - 1.0) < 1e-12;
  if (!has_one) c.s_list.insert(c.s_list.begin(), 1.0);

  c.aux_p = doc.contains("aux_p") ? get_number(doc, "aux_p") : 4.0;
  c.aux_q = doc.contains("aux_q") ? get_number(doc, "aux_q") : 8.0;
  if (c.aux_p < 1.0 || c.aux_q < 1.0) throw ConfigError("\"aux_p\"/\"aux_q\" must be >= 1");

  c.outdir = doc.contains("outdir") ? doc.at("outdir").get<std::string>() : "out";
  c.checkpoint_interval =
      doc.contains("checkpoint_interval") ? doc.at("checkpoint_interval").get<int>() : 0;
  if (c.checkpoint_interval < 0) {
    throw ConfigError("\"checkpoint_interval\" must be >= 0");
  }
  c.params.omega_ceiling =
      doc.contains("omega_ceiling") ? get_number(doc, "omega_ceiling") : 1.0e6;
  if (doc.contains("cfl_c")) c.params.cfl_c = get_number(doc, "cfl_c");
  if (doc.contains("dt_max")) c.params.dt_max = get_number(doc, "dt_max");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_config(const RunConfig& c) {
  std::ostringstream os;
  os << "n=" << c.n << ";l=" << format_full(c.l) << ";nu=" << format_full(c.params.nu)
     << ";eta=" << format_full(c.params.eta) << ";dt=" << format_full(c.params.dt)
     << ";t_end=" << format_full(c.params.t_end) << ";ic=" << c.ic
     << ";amplitude=" << format_full(c.amplitude) << ";seed=" << c.seed
     << ";cadence=" << c.cadence << ";eps_ladder=";
  for (double e : c.eps_ladder) os << format_full(e) << ",";
  os << ";c_gronwall=" << format_full(c.c_gronwall)
     << ";m_alert=" << format_full(c.m_alert) << ";s_list=";
  for (double s : c.s_list) os << format_full(s) << ",";
  os << ";aux_p=" << format_full(c.aux_p) << ";aux_q=" << format_full(c.aux_q)
     << ";checkpoint_interval=" << c.checkpoint_interval
     << ";omega_ceiling=" << format_full(c.params.omega_ceiling)
     << ";cfl_c=" << format_full(c.params.cfl_c)
     << ";dt_max=" << format_full(c.params.dt_max);
  return os.str();
}

std::uint64_t config_hash(const RunConfig& c) {
  // FNV-1a over the canonical serialization
  const std::string s = canonical_config(c);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace mhdbox
