#include "qkdcap/config.hpp"

#include <fstream>
#include <initializer_list>
#include <stdexcept>

#include <json.hpp>

namespace qkdcap {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const char* context,
                         std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw std::runtime_error("config: unknown key '" + item.key() +
                               "' in " + context);
  }
}

double number_at(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number())
    throw std::runtime_error(std::string("config: '") + key +
                             "' must be a number");
  return v.get<double>();
}

bool bool_at(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean())
    throw std::runtime_error(std::string("config: '") + key +
                             "' must be a boolean");
  return v.get<bool>();
}

SkrProfile parse_profile(const json& obj) {
  if (!obj.is_object())
    throw std::runtime_error("config: profile entries must be objects");
  reject_unknown_keys(obj, "profile",
                      {"name", "mu", "y0", "e_det", "eta_bob", "q", "f_ec",
                       "pulse_rate_hz", "rate_cap_bps"});
  if (!obj.contains("name") || !obj.at("name").is_string() ||
      obj.at("name").get<std::string>().empty())
    throw std::runtime_error("config: profile requires a non-empty 'name'");

  SkrProfile profile;
  profile.name = obj.at("name").get<std::string>();
  DecoyParams& p = profile.params;
  p.mu = number_at(obj, "mu", p.mu);
  p.y0 = number_at(obj, "y0", p.y0);
  p.e_det = number_at(obj, "e_det", p.e_det);
  p.eta_bob = number_at(obj, "eta_bob", p.eta_bob);
  p.q = number_at(obj, "q", p.q);
  p.f_ec = number_at(obj, "f_ec", p.f_ec);
  p.pulse_rate_hz = number_at(obj, "pulse_rate_hz", p.pulse_rate_hz);
  p.rate_cap_bps = number_at(obj, "rate_cap_bps", 0.0);
  p.validate();
  return profile;
}

RingSpec parse_ring(const json& obj, const RingSpec& base) {
  reject_unknown_keys(obj, "ring",
                      {"n_nodes", "adjacent_len_km", "alpha_db_per_km",
                       "switch_penalty_db", "adjacent_uses_chord"});
  RingSpec ring = base;
  if (obj.contains("n_nodes")) {
    if (!obj.at("n_nodes").is_number_integer())
      throw std::runtime_error("config: 'n_nodes' must be an integer");
    ring.n_nodes = obj.at("n_nodes").get<int>();
  }
  ring.adjacent_len_km =
      number_at(obj, "adjacent_len_km", ring.adjacent_len_km);
  ring.alpha_db_per_km =
      number_at(obj, "alpha_db_per_km", ring.alpha_db_per_km);
  ring.switch_penalty_db =
      number_at(obj, "switch_penalty_db", ring.switch_penalty_db);
  ring.adjacent_uses_chord =
      bool_at(obj, "adjacent_uses_chord", ring.adjacent_uses_chord);
  ring.validate();
  return ring;
}

AppFlags parse_flags(const json& obj) {
  reject_unknown_keys(
      obj, "flags",
      {"adjacent_uses_chord", "gs_factor_two", "schedule_accounting"});
  AppFlags flags;
  flags.adjacent_uses_chord = bool_at(obj, "adjacent_uses_chord", false);

  const bool gs_factor_two = bool_at(obj, "gs_factor_two", false);
  if (gs_factor_two) flags.accounting = ScheduleAccounting::two_per_cycle;
  if (obj.contains("schedule_accounting")) {
    if (!obj.at("schedule_accounting").is_string())
      throw std::runtime_error(
          "config: 'schedule_accounting' must be a string");
    const auto mode =
        accounting_from_name(obj.at("schedule_accounting").get<std::string>());
    if (gs_factor_two && mode != ScheduleAccounting::two_per_cycle)
      throw std::runtime_error(
          "config: 'gs_factor_two' conflicts with 'schedule_accounting'");
    flags.accounting = mode;
  }
  return flags;
}

}  // namespace

AppConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw std::runtime_error("config: top level must be an object");
  reject_unknown_keys(doc, "config", {"profiles", "ring", "flags"});

  AppConfig config;
  if (doc.contains("profiles")) {
    if (!doc.at("profiles").is_array())
      throw std::runtime_error("config: 'profiles' must be an array");
    for (const auto& entry : doc.at("profiles")) {
      SkrProfile profile = parse_profile(entry);
      if (find_profile(config.profiles, profile.name))
        throw std::runtime_error("config: duplicate profile name '" +
                                 profile.name + "'");
      config.profiles.push_back(std::move(profile));
    }
  }
  if (doc.contains("ring")) config.ring = parse_ring(doc.at("ring"), RingSpec{});
  if (doc.contains("flags")) config.flags = parse_flags(doc.at("flags"));
  return config;
}

AppConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("config: cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config(text);
}

std::vector<SkrProfile> all_profiles(const AppConfig& config) {
  std::vector<SkrProfile> profiles = builtin_profiles();
  for (const auto& p : config.profiles) {
    bool replaced = false;
    for (auto& existing : profiles)
      if (existing.name == p.name) {
        existing = p;
        replaced = true;
        break;
      }
    if (!replaced) profiles.push_back(p);
  }
  return profiles;
}

ScheduleAccounting accounting_from_name(const std::string& name) {
  if (name == "verbatim") return ScheduleAccounting::verbatim;
  if (name == "two-per-cycle") return ScheduleAccounting::two_per_cycle;
  if (name == "duplex") return ScheduleAccounting::duplex;
  throw std::runtime_error("unknown schedule accounting '" + name +
                           "' (expected verbatim|two-per-cycle|duplex)");
}

std::string accounting_name(ScheduleAccounting accounting) {
  switch (accounting) {
    case ScheduleAccounting::verbatim: return "verbatim";
    case ScheduleAccounting::two_per_cycle: return "two-per-cycle";
    case ScheduleAccounting::duplex: return "duplex";
  }
  throw std::logic_error("unknown schedule accounting");
}

}  // namespace qkdcap
