#ifndef QKDCAP_KEYLOG_HPP
#define QKDCAP_KEYLOG_HPP

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qkdcap {

// One sample of a device key-generation log.
struct KeyLogRecord {
  double t_s = 0.0;
  double skr_bps = 0.0;
  std::optional<double> qber;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line_no);
  std::size_t line;  // 1-based, counting every physical line
};

// CSV with header `t_s,skr_bps,qber` (qber column optional) and `#` comment
// lines. Rejects non-monotone timestamps and out-of-range values.
std::vector<KeyLogRecord> parse_log(std::istream& in);
std::vector<KeyLogRecord> parse_log(const std::string& text);

// Full-precision CSV; parse_log(emit_log(r)) == r.
std::string emit_log(std::span<const KeyLogRecord> records);

struct LinkSummary {
  std::string label;
  double mean_skr_bps = 0.0;
  double mean_qber = 0.0;  // NaN when no record carries qber
  double duration_s = 0.0;
  double total_key_bits = 0.0;  // trapezoidal integral of skr over time
};

// Requires at least two records.
LinkSummary summarize(std::span<const KeyLogRecord> records,
                      std::string label);

// 10*log10(matched mean / unmatched mean); positive when unmatched is worse.
double db_drop(const LinkSummary& matched, const LinkSummary& unmatched);

}  // namespace qkdcap

#endif
