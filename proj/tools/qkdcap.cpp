#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qkdcap/capacity.hpp"
#include "qkdcap/config.hpp"
#include "qkdcap/decoy.hpp"
#include "qkdcap/keylog.hpp"
#include "qkdcap/ring.hpp"
#include "qkdcap/sweep.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qkdcap;

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Options shared by every subcommand; CLI values override the config file.
struct CommonOpts {
  std::string config_path;
  std::optional<double> alpha_db_per_km;
  std::optional<double> switch_penalty_db;
  bool adjacent_uses_chord = false;
  bool gs_factor_two = false;
  std::string accounting;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--alpha-db-per-km", alpha_db_per_km,
                    "fiber attenuation coefficient");
    cmd->add_option("--penalty-db", switch_penalty_db,
                    "extra attenuation on every switched link");
    cmd->add_flag("--adjacent-uses-chord", adjacent_uses_chord,
                  "use the geometric chord for adjacent switched links");
    cmd->add_flag("--gs-factor-two", gs_factor_two,
                  "use G_S = 2/T_i (two key units per schedule cycle)");
    cmd->add_option("--schedule-accounting", accounting,
                    "verbatim|two-per-cycle|duplex (default duplex)");
  }

  AppConfig load() const {
    AppConfig config;
    if (!config_path.empty()) config = load_config_file(config_path);
    if (alpha_db_per_km) config.ring.alpha_db_per_km = *alpha_db_per_km;
    if (switch_penalty_db) config.ring.switch_penalty_db = *switch_penalty_db;
    if (adjacent_uses_chord) config.flags.adjacent_uses_chord = true;
    if (gs_factor_two)
      config.flags.accounting = ScheduleAccounting::two_per_cycle;
    if (!accounting.empty()) {
      const auto mode = accounting_from_name(accounting);
      if (gs_factor_two && mode != ScheduleAccounting::two_per_cycle)
        throw std::runtime_error(
            "--gs-factor-two conflicts with --schedule-accounting");
      config.flags.accounting = mode;
    }
    if (config.flags.adjacent_uses_chord) config.ring.adjacent_uses_chord = true;
    return config;
  }
};

SkrProfile require_profile(const std::vector<SkrProfile>& profiles,
                           const std::string& name) {
  const SkrProfile* p = find_profile(profiles, name);
  if (!p) throw std::runtime_error("unknown profile '" + name + "'");
  return *p;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

int run_skr(const CommonOpts& common, const std::string& profile_name,
            double a_max_db, double step_db, const std::string& out_path) {
  if (!(step_db > 0.0)) throw std::runtime_error("--step-db must be > 0");
  if (!(a_max_db >= 0.0)) throw std::runtime_error("--a-max-db must be >= 0");
  const AppConfig config = common.load();
  const SkrProfile profile =
      require_profile(all_profiles(config), profile_name);
  const double alpha = config.ring.alpha_db_per_km;

  std::string csv = "a_db,distance_km_at_alpha,skr_bps\n";
  const auto rows =
      static_cast<std::size_t>(std::floor(a_max_db / step_db + 1e-9)) + 1;
  for (std::size_t i = 0; i < rows; ++i) {
    const double a = static_cast<double>(i) * step_db;
    csv += fmt9(a);
    csv += ',';
    csv += fmt9(a / alpha);
    csv += ',';
    csv += fmt9(skr_bps(profile.params, a));
    csv += '\n';
  }
  write_file(out_path, csv);
  return 0;
}

int run_compare(const CommonOpts& common, const std::string& profile_name,
                int nodes, double length_km) {
  const AppConfig config = common.load();
  const SkrProfile profile =
      require_profile(all_profiles(config), profile_name);

  RingSpec ring = config.ring;
  ring.n_nodes = nodes;
  ring.adjacent_len_km = length_km;
  ring.validate();

  const double g_relayed = relayed_rate(ring, profile);
  const SwitchSchedule sched =
      switched_schedule(ring, profile, 0, config.flags.accounting);
  const double g_switched =
      switched_rate(ring, profile, config.flags.accounting);

  ordered_json doc;
  doc["g_relayed_bps"] = g_relayed;
  doc["g_switched_bps"] = g_switched;
  if (g_switched == 0.0 && g_relayed == 0.0)
    doc["r"] = nullptr;
  else
    doc["r"] = normalized_difference(g_switched, g_relayed);
  ordered_json shares = ordered_json::array();
  for (const auto& [peer, t_ij] : sched.shares)
    shares.push_back({{"peer", peer}, {"share", t_ij / sched.total}});
  doc["schedule"] = shares;
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int run_sweep_cmd(const CommonOpts& common, SweepSpec spec,
                  const std::string& out_path, const std::string& format) {
  const AppConfig config = common.load();  // CLI overrides already applied
  spec.alpha_db_per_km = config.ring.alpha_db_per_km;
  spec.switch_penalty_db = config.ring.switch_penalty_db;
  spec.adjacent_uses_chord = config.flags.adjacent_uses_chord;
  spec.accounting = config.flags.accounting;

  const SweepGrid grid = run_sweep(spec, all_profiles(config));
  if (format == "csv")
    write_file(out_path, emit_csv(grid));
  else if (format == "json")
    write_file(out_path, emit_json(grid));
  else
    throw std::runtime_error("--format must be csv or json");
  return 0;
}

int run_ingest(const std::vector<std::string>& paths,
               const std::vector<std::string>& pairings) {
  ordered_json summaries = ordered_json::array();
  std::vector<LinkSummary> known;
  bool any_failed = false;

  for (const auto& path : paths) {
    try {
      std::ifstream in(path);
      if (!in) throw std::runtime_error("cannot open '" + path + "'");
      const auto records = parse_log(in);
      LinkSummary s =
          summarize(records, std::filesystem::path(path).stem().string());
      ordered_json entry;
      entry["label"] = s.label;
      entry["mean_skr_bps"] = s.mean_skr_bps;
      if (std::isnan(s.mean_qber))
        entry["mean_qber"] = nullptr;
      else
        entry["mean_qber"] = s.mean_qber;
      entry["duration_s"] = s.duration_s;
      entry["total_key_bits"] = s.total_key_bits;
      summaries.push_back(entry);
      known.push_back(std::move(s));
    } catch (const std::exception& e) {
      std::cerr << "error: " << path << ": " << e.what() << "\n";
      any_failed = true;
    }
  }

  ordered_json drops = ordered_json::array();
  for (const auto& pairing : pairings) {
    const auto colon = pairing.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("--pair expects 'matched:unmatched', got '" +
                               pairing + "'");
    const std::string matched_label = pairing.substr(0, colon);
    const std::string unmatched_label = pairing.substr(colon + 1);
    auto find = [&](const std::string& label) -> const LinkSummary& {
      for (const auto& s : known)
        if (s.label == label) return s;
      throw std::runtime_error("--pair references unknown label '" + label +
                               "'");
    };
    drops.push_back({{"matched", matched_label},
                     {"unmatched", unmatched_label},
                     {"db_drop", db_drop(find(matched_label),
                                         find(unmatched_label))}});
  }

  ordered_json doc;
  doc["summaries"] = summaries;
  doc["db_drops"] = drops;
  std::cout << doc.dump(2) << "\n";
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Fair per-pair secret-key-rate comparison of relayed (trusted-node) "
      "and switched (direct-link) QKD ring networks"};
  app.require_subcommand(1);

  CommonOpts skr_common, cmp_common, swp_common;

  auto* skr_cmd =
      app.add_subcommand("skr", "tabulate SKR vs attenuation for a profile");
  std::string skr_profile = "experimental";
  double a_max_db = 40.0;
  double step_db = 0.1;
  std::string skr_out;
  skr_cmd->add_option("--profile", skr_profile, "SKR profile name");
  skr_cmd->add_option("--a-max-db", a_max_db, "largest attenuation to tabulate");
  skr_cmd->add_option("--step-db", step_db, "attenuation step");
  skr_cmd->add_option("--out", skr_out, "output CSV path")->required();
  skr_common.attach(skr_cmd);

  auto* cmp_cmd = app.add_subcommand(
      "compare", "relayed vs switched fair rate for one ring");
  std::string cmp_profile = "experimental";
  int cmp_nodes = 5;
  double cmp_length = 1.0;
  cmp_cmd->add_option("--profile", cmp_profile, "SKR profile name");
  cmp_cmd->add_option("--nodes", cmp_nodes, "ring node count")->required();
  cmp_cmd->add_option("--length-km", cmp_length, "adjacent link length")
      ->required();
  cmp_common.attach(cmp_cmd);

  auto* swp_cmd = app.add_subcommand(
      "sweep", "normalized-difference grid over (N, length)");
  SweepSpec swp_spec;
  std::string swp_out;
  std::string swp_format = "csv";
  swp_cmd->add_option("--profile", swp_spec.profile, "SKR profile name");
  swp_cmd->add_option("--n-min", swp_spec.n_min, "smallest node count");
  swp_cmd->add_option("--n-max", swp_spec.n_max, "largest node count");
  swp_cmd->add_option("--len-min-km", swp_spec.len_min_km,
                      "smallest adjacent length");
  swp_cmd->add_option("--len-max-km", swp_spec.len_max_km,
                      "largest adjacent length");
  swp_cmd->add_option("--len-step-km", swp_spec.len_step_km, "length step");
  swp_cmd->add_option("--out", swp_out, "output path")->required();
  swp_cmd->add_option("--format", swp_format, "csv|json");
  swp_common.attach(swp_cmd);

  auto* ing_cmd = app.add_subcommand(
      "ingest", "summarize key-generation logs and matched/unmatched drops");
  std::vector<std::string> ing_paths;
  std::vector<std::string> ing_pairs;
  ing_cmd->add_option("paths", ing_paths, "key-log CSV files")->required();
  ing_cmd->add_option("--pair", ing_pairs,
                      "matched:unmatched label pair (repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (skr_cmd->parsed())
      return run_skr(skr_common, skr_profile, a_max_db, step_db, skr_out);
    if (cmp_cmd->parsed())
      return run_compare(cmp_common, cmp_profile, cmp_nodes, cmp_length);
    if (swp_cmd->parsed())
      return run_sweep_cmd(swp_common, swp_spec, swp_out, swp_format);
    if (ing_cmd->parsed()) return run_ingest(ing_paths, ing_pairs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
