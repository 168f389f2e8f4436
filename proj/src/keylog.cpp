#include "qkdcap/keylog.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace qkdcap {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line) {
  const std::string t = trim(field);
  if (t.empty()) throw ParseError("empty numeric field", line);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(v))
    throw ParseError("not a finite number: '" + t + "'", line);
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line_no)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
      line(line_no) {}

std::vector<KeyLogRecord> parse_log(std::istream& in) {
  std::vector<KeyLogRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool has_qber_column = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;

    if (!header_seen) {
      if (t == "t_s,skr_bps,qber")
        has_qber_column = true;
      else if (t != "t_s,skr_bps")
        throw ParseError("expected header 't_s,skr_bps[,qber]'", line_no);
      header_seen = true;
      continue;
    }

    const auto cols = split_csv(t);
    const std::size_t expected = has_qber_column ? 3 : 2;
    if (cols.size() != expected)
      throw ParseError("expected " + std::to_string(expected) + " columns",
                       line_no);

    KeyLogRecord rec;
    rec.t_s = parse_number(cols[0], line_no);
    rec.skr_bps = parse_number(cols[1], line_no);
    if (rec.skr_bps < 0.0) throw ParseError("skr_bps must be >= 0", line_no);
    if (has_qber_column && !trim(cols[2]).empty()) {
      const double qber = parse_number(cols[2], line_no);
      if (qber < 0.0 || qber > 0.5)
        throw ParseError("qber outside [0, 0.5]", line_no);
      rec.qber = qber;
    }
    if (!records.empty() && rec.t_s <= records.back().t_s)
      throw ParseError("timestamps must be strictly increasing", line_no);
    records.push_back(rec);
  }

  if (records.empty())
    throw std::runtime_error("empty series: no key-log records");
  return records;
}

std::vector<KeyLogRecord> parse_log(const std::string& text) {
  std::istringstream in(text);
  return parse_log(in);
}

std::string emit_log(std::span<const KeyLogRecord> records) {
  bool any_qber = false;
  for (const auto& r : records) any_qber |= r.qber.has_value();

  auto full = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };

  std::string out = any_qber ? "t_s,skr_bps,qber\n" : "t_s,skr_bps\n";
  for (const auto& r : records) {
    out += full(r.t_s);
    out += ',';
    out += full(r.skr_bps);
    if (any_qber) {
      out += ',';
      if (r.qber) out += full(*r.qber);
    }
    out += '\n';
  }
  return out;
}

LinkSummary summarize(std::span<const KeyLogRecord> records,
                      std::string label) {
  if (records.size() < 2)
    throw std::runtime_error("summarize: need at least 2 records, got " +
                             std::to_string(records.size()));

  LinkSummary s;
  s.label = std::move(label);

  double skr_sum = 0.0;
  double qber_sum = 0.0;
  std::size_t qber_count = 0;
  for (const auto& r : records) {
    skr_sum += r.skr_bps;
    if (r.qber) {
      qber_sum += *r.qber;
      ++qber_count;
    }
  }
  s.mean_skr_bps = skr_sum / static_cast<double>(records.size());
  s.mean_qber = qber_count ? qber_sum / static_cast<double>(qber_count)
                           : std::numeric_limits<double>::quiet_NaN();
  s.duration_s = records.back().t_s - records.front().t_s;

  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const double dt = records[i + 1].t_s - records[i].t_s;
    s.total_key_bits +=
        0.5 * dt * (records[i].skr_bps + records[i + 1].skr_bps);
  }
  return s;
}

double db_drop(const LinkSummary& matched, const LinkSummary& unmatched) {
  if (!(matched.mean_skr_bps > 0.0) || !(unmatched.mean_skr_bps > 0.0))
    throw std::domain_error("db_drop: mean rates must be > 0");
  return 10.0 * std::log10(matched.mean_skr_bps / unmatched.mean_skr_bps);
}

}  // namespace qkdcap
