#include "oppnet/cli/report.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "oppnet/format.hpp"

namespace oppnet::cli {

namespace {

constexpr std::string_view kNA = "NA";
constexpr std::size_t kColumns = 15;

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(kNA); }

std::uint64_t need_uint(std::string_view text, std::string_view column) {
  auto v = parse_uint(text);
  if (!v) throw std::invalid_argument("report: bad integer in column " + std::string(column));
  return *v;
}

double need_double(std::string_view text, std::string_view column) {
  auto v = parse_double(text);
  if (!v) throw std::invalid_argument("report: bad number in column " + std::string(column));
  return *v;
}

std::optional<double> maybe_double(std::string_view text, std::string_view column) {
  if (text == kNA) return std::nullopt;
  return need_double(text, column);
}

}  // namespace

std::string_view mobility_label(const ScenarioConfig& config) {
  return config.satellite_count() > 0 ? "biased" : "unbiased";
}

ReportRow make_row(std::string scenario, const ScenarioConfig& config,
                   const engine::RunResult& result) {
  ReportRow row;
  row.scenario = std::move(scenario);
  row.seed = config.seed;
  row.router = std::string(to_string(config.router.kind));
  row.mobility = std::string(mobility_label(config));
  row.area_side = config.field.side;

  const auto& m = result.metrics;
  RowMetrics rm;
  rm.created = m.created;
  rm.delivered = m.delivered;
  rm.relayed = m.relayed;
  rm.dropped_ttl = m.dropped_ttl;
  rm.dropped_buffer = m.dropped_buffer;
  rm.delivery_probability = m.delivery_probability;
  rm.overhead_ratio = m.overhead_ratio;
  rm.avg_latency_s = m.average_latency;
  rm.encounters_src = result.encounters.source;
  rm.encounters_dst = result.encounters.destination;
  row.metrics = rm;
  return row;
}

std::string emit_report(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << kReportHeader << '\n';
  for (const auto& row : rows) {
    out << row.scenario << ',' << row.seed << ',' << row.router << ',' << row.mobility << ','
        << format_number(row.area_side);
    if (!row.metrics) {
      for (std::size_t i = 5; i < kColumns; ++i) out << ',' << kNA;
      out << '\n';
      continue;
    }
    const RowMetrics& m = *row.metrics;
    out << ',' << m.created << ',' << m.delivered << ',' << m.relayed << ',' << m.dropped_ttl << ','
        << m.dropped_buffer << ',' << format_number(m.delivery_probability) << ','
        << opt(m.overhead_ratio) << ',' << opt(m.avg_latency_s) << ',' << m.encounters_src << ','
        << m.encounters_dst << '\n';
  }
  return out.str();
}

std::vector<ReportRow> parse_report(std::string_view text) {
  std::vector<ReportRow> rows;
  bool header = true;
  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (header) {
      if (line != kReportHeader) throw std::invalid_argument("report: unexpected header");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != kColumns) throw std::invalid_argument("report: wrong column count");
    ReportRow row;
    row.scenario = std::string(f[0]);
    row.seed = need_uint(f[1], "seed");
    row.router = std::string(f[2]);
    row.mobility = std::string(f[3]);
    row.area_side = need_double(f[4], "area_side");
    if (f[5] != kNA) {
      RowMetrics m;
      m.created = need_uint(f[5], "created");
      m.delivered = need_uint(f[6], "delivered");
      m.relayed = need_uint(f[7], "relayed");
      m.dropped_ttl = need_uint(f[8], "dropped_ttl");
      m.dropped_buffer = need_uint(f[9], "dropped_buffer");
      m.delivery_probability = need_double(f[10], "delivery_probability");
      m.overhead_ratio = maybe_double(f[11], "overhead_ratio");
      m.avg_latency_s = maybe_double(f[12], "avg_latency_s");
      m.encounters_src = need_uint(f[13], "encounters_src");
      m.encounters_dst = need_uint(f[14], "encounters_dst");
      row.metrics = m;
    }
    rows.push_back(std::move(row));
  }
  if (header) throw std::invalid_argument("report: missing header");
  return rows;
}

analytics::CubeLawFit fit_cube_from_rows(std::span<const ReportRow> rows) {
  std::map<double, std::pair<double, int>> per_side;
  for (const auto& row : rows) {
    if (!row.metrics) continue;
    auto& [sum, n] = per_side[row.area_side];
    sum += static_cast<double>(row.metrics->encounters_src + row.metrics->encounters_dst);
    ++n;
  }
  std::vector<analytics::AreaCount> samples;
  for (const auto& [side, acc] : per_side) {
    samples.push_back({side * side, acc.first / acc.second});
  }
  return analytics::fit_cube_law(samples);
}

}  // namespace oppnet::cli
