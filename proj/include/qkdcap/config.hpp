#ifndef QKDCAP_CONFIG_HPP
#define QKDCAP_CONFIG_HPP

#include <string>
#include <vector>

#include "qkdcap/capacity.hpp"
#include "qkdcap/decoy.hpp"
#include "qkdcap/ring.hpp"

namespace qkdcap {

struct AppFlags {
  bool adjacent_uses_chord = false;
  ScheduleAccounting accounting = ScheduleAccounting::duplex;
};

struct AppConfig {
  std::vector<SkrProfile> profiles;  // additions/overrides for the builtins
  RingSpec ring;
  AppFlags flags;
};

// Strict: unknown keys anywhere are an error naming the key. All sections
// and fields optional; profile entries require "name" and may set any
// DecoyParams field except e0.
AppConfig parse_config(const std::string& json_text);
AppConfig load_config_file(const std::string& path);

// Builtins overlaid with the config's profiles (matched by name).
std::vector<SkrProfile> all_profiles(const AppConfig& config);

ScheduleAccounting accounting_from_name(const std::string& name);
std::string accounting_name(ScheduleAccounting accounting);

}  // namespace qkdcap

#endif
