#include "oppnet/config_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "oppnet/format.hpp"
#include "oppnet/mobility.hpp"

namespace oppnet {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, Entry, std::less<>> entries;
};

const std::map<std::string, std::set<std::string, std::less<>>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string, std::less<>>, std::less<>> keys = {
      {"field", {"side"}},
      {"traffic", {"packet_size", "generation_interval", "ttl"}},
      {"router", {"router", "snw_copies", "prophet_p0", "prophet_beta", "prophet_alpha"}},
      {"sim", {"sim_time", "time_step", "seed"}},
      {"node",
       {"id", "count", "role", "position", "rf_range", "bit_rate", "velocity", "pause_min",
        "pause_max", "buffer_capacity", "bias_region", "bias_degree", "bias_sigma"}},
  };
  return keys;
}

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> sections;
  std::size_t line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!known_keys().contains(name)) throw ParseError(line_no, "unknown section [" + name + "]");
      if (name != "node") {
        for (const auto& s : sections) {
          if (s.name == name) throw ParseError(line_no, "duplicate section [" + name + "]");
        }
      }
      sections.push_back({name, line_no, {}});
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected `key = value`");
    if (sections.empty()) throw ParseError(line_no, "key outside of any section");
    Section& section = sections.back();
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_keys().at(section.name).contains(key)) {
      throw ParseError(line_no, "unknown key `" + key + "` in [" + section.name + "]");
    }
    if (value.empty()) throw ParseError(line_no, "empty value for `" + key + "`");
    if (!section.entries.emplace(key, Entry{value, line_no}).second) {
      throw ParseError(line_no, "duplicate key `" + key + "`");
    }
  }
  return sections;
}

class Reader {
 public:
  explicit Reader(const Section& section) : section_(section) {}

  bool has(std::string_view key) const { return section_.entries.contains(key); }

  double number(std::string_view key) const {
    const Entry& e = entry(key);
    auto v = parse_double(e.value);
    if (!v) throw ParseError(e.line, "`" + std::string(key) + "` is not a number");
    return *v;
  }
  double number_or(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  std::uint64_t integer(std::string_view key) const {
    const Entry& e = entry(key);
    auto v = parse_uint(e.value);
    if (!v) throw ParseError(e.line, "`" + std::string(key) + "` is not a non-negative integer");
    return *v;
  }
  const std::string& text(std::string_view key) const { return entry(key).value; }
  std::size_t line_of(std::string_view key) const { return entry(key).line; }

  std::vector<double> numbers(std::string_view key, std::size_t expected) const {
    const Entry& e = entry(key);
    std::vector<double> out;
    for (auto part : split(e.value, ',')) {
      auto v = parse_double(part);
      if (!v) throw ParseError(e.line, "`" + std::string(key) + "` has a non-numeric component");
      out.push_back(*v);
    }
    if (out.size() != expected) {
      throw ParseError(e.line, "`" + std::string(key) + "` needs " + std::to_string(expected) +
                                   " comma-separated values");
    }
    return out;
  }

 private:
  const Entry& entry(std::string_view key) const {
    auto it = section_.entries.find(key);
    if (it == section_.entries.end()) {
      throw ParseError(section_.line,
                       "[" + section_.name + "] is missing `" + std::string(key) + "`");
    }
    return it->second;
  }

  const Section& section_;
};

const Section& require_section(const std::vector<Section>& sections, std::string_view name) {
  for (const auto& s : sections) {
    if (s.name == name) return s;
  }
  throw ParseError(0, "missing [" + std::string(name) + "] section");
}

double default_sigma(const Reader& node, double degree) {
  if (degree > 0.5 && degree < 1.0) {
    return mobility::bias_sigma_from_quantile(degree, mobility::kReferenceQuantile);
  }
  if (degree == 0.0 || degree == 1.0) return 0.5;
  throw ParseError(node.line_of("bias_degree"),
                   "`bias_sigma` is required when bias_degree lies outside (0.5, 1)");
}

std::vector<NodeSpec> read_nodes(const Section& section, std::size_t next_id) {
  const Reader r(section);
  NodeSpec node;
  const auto role = parse_role(r.text("role"));
  if (!role) throw ParseError(r.line_of("role"), "unknown role `" + r.text("role") + "`");
  node.role = *role;
  node.rf_range = r.number("rf_range");
  node.bit_rate = r.number("bit_rate");
  node.buffer_capacity = r.integer("buffer_capacity");

  if (node.is_static()) {
    const auto xy = r.numbers("position", 2);
    node.position = Point{xy[0], xy[1]};
    node.velocity = r.number_or("velocity", 0.0);
    node.pause_min = r.number_or("pause_min", 0.0);
    node.pause_max = r.number_or("pause_max", 0.0);
  } else {
    if (r.has("position")) {
      const auto xy = r.numbers("position", 2);
      node.position = Point{xy[0], xy[1]};
    }
    node.velocity = r.number("velocity");
    node.pause_min = r.number("pause_min");
    node.pause_max = r.number("pause_max");
  }

  if (r.has("bias_region") || r.has("bias_degree") || r.has("bias_sigma")) {
    const auto box = r.numbers("bias_region", 4);
    BiasSpec bias;
    bias.region = {box[0], box[1], box[2], box[3]};
    bias.degree = r.number("bias_degree");
    bias.sigma = r.has("bias_sigma") ? r.number("bias_sigma") : default_sigma(r, bias.degree);
    node.bias = bias;
  }

  const std::uint64_t count = r.has("count") ? r.integer("count") : 1;
  if (count == 0) throw ParseError(r.line_of("count"), "`count` must be >= 1");
  if (r.has("id")) {
    if (count != 1) throw ParseError(r.line_of("id"), "`id` cannot be combined with `count`");
    node.id = static_cast<NodeId>(r.integer("id"));
  } else {
    node.id = next_id;
  }

  std::vector<NodeSpec> nodes(count, node);
  for (std::uint64_t i = 1; i < count; ++i) nodes[i].id = next_id + i;
  return nodes;
}

void put(std::ostringstream& out, std::string_view key, const std::string& value) {
  out << key << " = " << value << '\n';
}

std::string join(std::initializer_list<double> values) {
  std::string s;
  for (double v : values) {
    if (!s.empty()) s += ',';
    s += format_number(v);
  }
  return s;
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view text) {
  const auto sections = tokenize(text);
  ScenarioConfig config;

  const Reader field(require_section(sections, "field"));
  config.field.side = field.number("side");

  const Reader traffic(require_section(sections, "traffic"));
  config.traffic.packet_size = traffic.integer("packet_size");
  config.traffic.generation_interval = traffic.number("generation_interval");
  config.traffic.ttl = traffic.number("ttl");

  const Reader router(require_section(sections, "router"));
  const auto kind = parse_router_kind(router.text("router"));
  if (!kind) {
    throw ParseError(router.line_of("router"),
                     "unknown router `" + router.text("router") + "` (epidemic|snw|prophet)");
  }
  config.router.kind = *kind;
  if (router.has("snw_copies")) {
    config.router.snw_initial_copies = static_cast<int>(router.integer("snw_copies"));
  }
  config.router.prophet_p0 = router.number_or("prophet_p0", config.router.prophet_p0);
  config.router.prophet_beta = router.number_or("prophet_beta", config.router.prophet_beta);
  config.router.prophet_alpha = router.number_or("prophet_alpha", config.router.prophet_alpha);

  const Reader sim(require_section(sections, "sim"));
  config.sim_time = sim.number("sim_time");
  config.time_step = sim.number_or("time_step", 0.1);
  config.seed = sim.has("seed") ? sim.integer("seed") : 1;

  for (const auto& s : sections) {
    if (s.name != "node") continue;
    auto group = read_nodes(s, config.nodes.size());
    config.nodes.insert(config.nodes.end(), group.begin(), group.end());
  }
  if (config.nodes.empty()) throw ParseError(0, "no [node] blocks");

  return validate_scenario(std::move(config));
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

std::string emit_scenario(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "[field]\n";
  put(out, "side", format_number(config.field.side));

  out << "\n[traffic]\n";
  put(out, "packet_size", format_number(config.traffic.packet_size));
  put(out, "generation_interval", format_number(config.traffic.generation_interval));
  put(out, "ttl", format_number(config.traffic.ttl));

  out << "\n[router]\n";
  put(out, "router", std::string(to_string(config.router.kind)));
  put(out, "snw_copies", std::to_string(config.router.snw_initial_copies));
  put(out, "prophet_p0", format_number(config.router.prophet_p0));
  put(out, "prophet_beta", format_number(config.router.prophet_beta));
  put(out, "prophet_alpha", format_number(config.router.prophet_alpha));

  out << "\n[sim]\n";
  put(out, "sim_time", format_number(config.sim_time));
  put(out, "time_step", format_number(config.time_step));
  put(out, "seed", format_number(config.seed));

  for (const auto& node : config.nodes) {
    out << "\n[node]\n";
    put(out, "id", std::to_string(node.id));
    put(out, "role", std::string(to_string(node.role)));
    if (node.position) put(out, "position", join({node.position->x, node.position->y}));
    put(out, "rf_range", format_number(node.rf_range));
    put(out, "bit_rate", format_number(node.bit_rate));
    put(out, "buffer_capacity", format_number(node.buffer_capacity));
    if (node.is_mobile()) {
      put(out, "velocity", format_number(node.velocity));
      put(out, "pause_min", format_number(node.pause_min));
      put(out, "pause_max", format_number(node.pause_max));
    }
    if (node.bias) {
      const Rect& b = node.bias->region;
      put(out, "bias_region", join({b.x_min, b.y_min, b.x_max, b.y_max}));
      put(out, "bias_degree", format_number(node.bias->degree));
      put(out, "bias_sigma", format_number(node.bias->sigma));
    }
  }
  return out.str();
}

}  // namespace oppnet
