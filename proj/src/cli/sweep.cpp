#include "oppnet/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>
#include <thread>

#include "oppnet/format.hpp"

namespace oppnet::cli {

std::string_view to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::area_side: return "area_side";
    case AxisKind::mobility: return "mobility";
    case AxisKind::router: return "router";
  }
  return "unknown";
}

Axis parse_axis(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("axis must look like name=v1,v2,...");
  }
  const auto name = trim(text.substr(0, eq));
  Axis axis;
  if (name == "area_side") {
    axis.kind = AxisKind::area_side;
  } else if (name == "mobility") {
    axis.kind = AxisKind::mobility;
  } else if (name == "router") {
    axis.kind = AxisKind::router;
  } else {
    throw std::invalid_argument("unknown axis `" + std::string(name) + "`");
  }
  for (auto v : split(text.substr(eq + 1), ',')) {
    v = trim(v);
    if (v.empty()) throw std::invalid_argument("empty value on axis " + std::string(name));
    axis.values.emplace_back(v);
  }
  return axis;
}

std::vector<std::uint64_t> SweepSpec::seeds() const {
  std::vector<std::uint64_t> out;
  for (int r = 0; r < replications; ++r) out.push_back(base.seed + static_cast<std::uint64_t>(r));
  return out;
}

void validate_sweep(const SweepSpec& spec) {
  if (spec.replications < 1) throw std::invalid_argument("replications must be >= 1");
  std::set<AxisKind> kinds;
  for (const auto& axis : spec.axes) {
    if (!kinds.insert(axis.kind).second) {
      throw std::invalid_argument("axis " + std::string(to_string(axis.kind)) + " given twice");
    }
    if (axis.values.empty()) throw std::invalid_argument("axis has no values");
    const std::set<std::string> distinct(axis.values.begin(), axis.values.end());
    if (distinct.size() != axis.values.size()) {
      throw std::invalid_argument("axis " + std::string(to_string(axis.kind)) +
                                  " repeats a value");
    }
    for (const auto& v : axis.values) {
      const bool ok = [&] {
        switch (axis.kind) {
          case AxisKind::area_side: return parse_double(v).value_or(0.0) > 0.0;
          case AxisKind::mobility: return v == "biased" || v == "unbiased";
          case AxisKind::router: return parse_router_kind(v).has_value();
        }
        return false;
      }();
      if (!ok) {
        throw std::invalid_argument("bad value `" + v + "` on axis " +
                                    std::string(to_string(axis.kind)));
      }
    }
  }
}

ScenarioConfig resize_field(const ScenarioConfig& config, double side) {
  ScenarioConfig out = config;
  const double old_side = config.field.side;
  const double grow = side - old_side;
  const auto shift = [&](double c) { return c > old_side / 2.0 ? grow : 0.0; };
  out.field.side = side;
  for (auto& node : out.nodes) {
    if (node.position) {
      node.position->x += shift(node.position->x);
      node.position->y += shift(node.position->y);
    }
    if (node.bias) {
      Rect& r = node.bias->region;
      const double dx = shift((r.x_min + r.x_max) / 2.0);
      const double dy = shift((r.y_min + r.y_max) / 2.0);
      r = {r.x_min + dx, r.y_min + dy, r.x_max + dx, r.y_max + dy};
    }
  }
  return out;
}

ScenarioConfig strip_bias(const ScenarioConfig& config) {
  ScenarioConfig out = config;
  for (auto& node : out.nodes) {
    if (node.role == NodeRole::satellite) {
      node.role = NodeRole::helper;
      node.bias.reset();
    }
  }
  return out;
}

ScenarioConfig apply_setting(const ScenarioConfig& config, AxisKind kind, std::string_view value) {
  switch (kind) {
    case AxisKind::area_side: return resize_field(config, parse_double(value).value());
    case AxisKind::mobility: return value == "unbiased" ? strip_bias(config) : config;
    case AxisKind::router: {
      ScenarioConfig out = config;
      out.router.kind = parse_router_kind(value).value();
      return out;
    }
  }
  return config;
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec, unsigned workers) {
  validate_sweep(spec);

  std::vector<ScenarioConfig> points{spec.base};
  for (const auto& axis : spec.axes) {
    std::vector<ScenarioConfig> next;
    for (const auto& p : points) {
      for (const auto& v : axis.values) next.push_back(apply_setting(p, axis.kind, v));
    }
    points = std::move(next);
  }

  std::vector<ScenarioConfig> jobs;
  for (const auto& p : points) {
    for (auto seed : spec.seeds()) {
      jobs.push_back(p);
      jobs.back().seed = seed;
    }
  }

  std::vector<ReportRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const ScenarioConfig& job = jobs[i];
      try {
        rows[i] = make_row(spec.scenario, job, engine::run(job));
      } catch (const std::exception&) {
        ReportRow failed;
        failed.scenario = spec.scenario;
        failed.seed = job.seed;
        failed.router = std::string(to_string(job.router.kind));
        failed.mobility = std::string(mobility_label(job));
        failed.area_side = job.field.side;
        rows[i] = std::move(failed);
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
  }
  return rows;
}

}  // namespace oppnet::cli
