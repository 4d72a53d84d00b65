#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <set>

#include "fixtures.hpp"
#include "oppnet/config_io.hpp"
#include "oppnet/format.hpp"
#include "oppnet/rng.hpp"
#include "oppnet/scenario.hpp"

using namespace oppnet;

namespace {

std::vector<std::uint64_t> draw(RandomStream s, int n) {
  std::vector<std::uint64_t> out;
  for (int i = 0; i < n; ++i) out.push_back(s.next_u64());
  return out;
}

ViolationKind only_kind(const ScenarioConfig& c) {
  const auto v = check_scenario(c);
  REQUIRE(v.size() == 1);
  return v.front().kind;
}

}  // namespace

TEST_SUITE("validate_scenario") {
  TEST_CASE("reference scenario is accepted unchanged") {
    const auto c = fixtures::reference(true);
    CHECK(check_scenario(c).empty());
    CHECK(validate_scenario(c) == c);
    CHECK(c.nodes.size() == 30);
    CHECK(c.satellite_count() == 8);
    CHECK(c.source() == 0);
    CHECK(c.destination() == 1);
  }

  TEST_CASE("two sources are invalid roles") {
    auto c = fixtures::reference(false);
    c.nodes[1].role = NodeRole::static_source;
    CHECK_THROWS_AS(validate_scenario(c), ScenarioError);
    try {
      validate_scenario(c);
    } catch (const ScenarioError& e) {
      CHECK(e.has(ViolationKind::invalid_roles));
      CHECK_FALSE(e.has(ViolationKind::invalid_geometry));
    }
  }

  TEST_CASE("missing destination is invalid roles") {
    auto c = fixtures::reference(false);
    c.nodes.erase(c.nodes.begin() + 1);
    for (std::size_t i = 0; i < c.nodes.size(); ++i) c.nodes[i].id = i;
    CHECK(only_kind(c) == ViolationKind::invalid_roles);
  }

  TEST_CASE("bias region past the field edge is invalid geometry") {
    auto c = fixtures::reference(true);
    c.nodes[2].bias->region.x_max = 6000.0;
    const auto v = check_scenario(c);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == ViolationKind::invalid_geometry);
    CHECK(v[0].field == "nodes[2].bias_region");
  }

  TEST_CASE("static node outside the field is invalid geometry") {
    auto c = fixtures::reference(false);
    c.nodes[0].position = Point{-1.0, 10.0};
    CHECK(only_kind(c) == ViolationKind::invalid_geometry);
  }

  TEST_CASE("non-positive quantities are invalid parameters") {
    auto c = fixtures::reference(false);
    SUBCASE("rf_range") { c.nodes[3].rf_range = 0.0; }
    SUBCASE("bit_rate") { c.nodes[3].bit_rate = -5.0; }
    SUBCASE("buffer") { c.nodes[3].buffer_capacity = 0; }
    SUBCASE("velocity") { c.nodes[3].velocity = 0.0; }
    SUBCASE("ttl") { c.traffic.ttl = 0.0; }
    SUBCASE("packet") { c.traffic.packet_size = 0; }
    SUBCASE("interval") { c.traffic.generation_interval = 0.0; }
    SUBCASE("side") {
      c.field.side = 0.0;
      c.nodes[0].position = Point{0.0, 0.0};
      c.nodes[1].position = Point{0.0, 0.0};
    }
    SUBCASE("sim_time") { c.sim_time = 0.0; }
    SUBCASE("time_step") { c.time_step = 0.0; }
    SUBCASE("time_step above 1") { c.time_step = 1.5; }
    SUBCASE("snw copies") { c.router.snw_initial_copies = 0; }
    SUBCASE("p0") { c.router.prophet_p0 = 1.0; }
    SUBCASE("beta") { c.router.prophet_beta = 0.0; }
    SUBCASE("alpha") { c.router.prophet_alpha = 1.2; }
    SUBCASE("pause order") { c.nodes[3].pause_max = 1.0; }
    SUBCASE("id mismatch") { c.nodes[3].id = 17; }
    CHECK(only_kind(c) == ViolationKind::invalid_parameter);
  }

  TEST_CASE("role-specific fields") {
    auto c = fixtures::reference(true);
    SUBCASE("helper with bias") {
      c.nodes[12].bias = c.nodes[2].bias;
      CHECK(only_kind(c) == ViolationKind::invalid_roles);
    }
    SUBCASE("satellite without bias") {
      c.nodes[2].bias.reset();
      CHECK(only_kind(c) == ViolationKind::invalid_roles);
    }
    SUBCASE("static with velocity") {
      c.nodes[0].velocity = 3.0;
      CHECK(only_kind(c) == ViolationKind::invalid_parameter);
    }
    SUBCASE("static with bias") {
      c.nodes[0].bias = c.nodes[2].bias;
      CHECK(only_kind(c) == ViolationKind::invalid_roles);
    }
    SUBCASE("mobile with fixed position") {
      c.nodes[12].position = Point{1.0, 1.0};
      CHECK(only_kind(c) == ViolationKind::invalid_parameter);
    }
    SUBCASE("degree out of range") {
      c.nodes[2].bias->degree = 1.5;
      CHECK(only_kind(c) == ViolationKind::invalid_parameter);
    }
    SUBCASE("sigma zero") {
      c.nodes[2].bias->sigma = 0.0;
      CHECK(only_kind(c) == ViolationKind::invalid_parameter);
    }
    SUBCASE("inverted region") {
      auto& r = c.nodes[2].bias->region;
      std::swap(r.x_min, r.x_max);
      CHECK(only_kind(c) == ViolationKind::invalid_geometry);
    }
    SUBCASE("region covering the field with d < 1") {
      c.nodes[2].bias->region = {0, 0, 5000, 5000};
      CHECK(only_kind(c) == ViolationKind::invalid_geometry);
    }
  }

  TEST_CASE("every violation is reported") {
    auto c = fixtures::reference(true);
    c.nodes[0].rf_range = 0.0;
    c.nodes[2].bias->region.y_max = 9000.0;
    c.nodes[1].role = NodeRole::static_source;
    const auto v = check_scenario(c);
    std::set<ViolationKind> kinds;
    for (const auto& x : v) kinds.insert(x.kind);
    CHECK(kinds.size() == 3);
  }
}

TEST_SUITE("rng_stream") {
  TEST_CASE("same seed and stream repeat") {
    CHECK(draw(rng_stream(7, 0), 1000) == draw(rng_stream(7, 0), 1000));
  }

  TEST_CASE("streams and seeds separate") {
    CHECK(draw(rng_stream(7, 0), 16) != draw(rng_stream(7, 1), 16));
    CHECK(draw(rng_stream(7, 0), 16) != draw(rng_stream(8, 0), 16));
    // seeds that agree in one 32-bit half must still differ
    CHECK(draw(rng_stream(1, 0), 16) != draw(rng_stream((1ull << 32) | 1, 0), 16));
    CHECK(draw(rng_stream(0, 1), 16) != draw(rng_stream(1, 0), 16));
  }

  TEST_CASE("reference output is pinned") {
    // Fixed by the mt19937_64 and seed_seq definitions; guards against the
    // seeding scheme drifting.
    auto s = rng_stream(7, 0);
    const auto first = s.next_u64();
    auto again = rng_stream(7, 0);
    CHECK(again.next_u64() == first);
    std::seed_seq seq{7u, 0u, 0u, 0u};
    std::mt19937_64 ref(seq);
    CHECK(first == ref());
  }

  TEST_CASE("uniform range and moments") {
    auto s = rng_stream(11, 3);
    double sum = 0.0;
    double sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double u = s.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      sum += u;
      sum2 += u * u;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
    CHECK(sum2 / n - (sum / n) * (sum / n) == doctest::Approx(1.0 / 12.0).epsilon(0.01));
  }

  TEST_CASE("normal moments") {
    auto s = rng_stream(5, 9);
    double sum = 0.0;
    double sum2 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double z = s.normal(2.0, 3.0);
      sum += z;
      sum2 += z * z;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - 2.0) < 0.03);
    CHECK(std::sqrt(sum2 / n - mean * mean) == doctest::Approx(3.0).epsilon(0.01));
  }

  TEST_CASE("node streams skip the traffic stream") {
    CHECK(node_stream(0) != kTrafficStream);
    CHECK(node_stream(4) == 5);
  }
}

TEST_SUITE("format") {
  TEST_CASE("shortest round trip") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(16.0) == "16");
    CHECK(format_number(std::uint64_t{1953125}) == "1953125");
    auto s = rng_stream(1, 1);
    for (int i = 0; i < 10000; ++i) {
      const double v = (s.uniform() - 0.5) * std::pow(10.0, s.uniform(-20, 20));
      REQUIRE(parse_double(format_number(v)) == v);
    }
  }

  TEST_CASE("parsers reject junk") {
    CHECK_FALSE(parse_double("").has_value());
    CHECK_FALSE(parse_double("1.5x").has_value());
    CHECK_FALSE(parse_uint("-3").has_value());
    CHECK_FALSE(parse_uint("3.0").has_value());
    CHECK(parse_uint("42") == 42u);
    CHECK(trim("  a b \t") == "a b");
    CHECK(split("a,,b", ',').size() == 3);
  }
}

TEST_SUITE("config_io") {
  const std::string kMinimal = R"(
[field]
side = 1000
[traffic]
packet_size = 1024
generation_interval = 100
ttl = 200
[router]
router = prophet
[sim]
sim_time = 500
[node]
role = static-source
position = 100,100
rf_range = 80
bit_rate = 250000
buffer_capacity = 4096
[node]
role = static-destination
position = 900,900
rf_range = 80
bit_rate = 250000
buffer_capacity = 4096
)";

  TEST_CASE("shipped biased preset") {
    const auto c = load_scenario_file(fixtures::source_dir() + "/scenarios/table1_biased.cfg");
    CHECK(c.nodes.size() == 30);
    CHECK(c.satellite_count() == 8);
    int near_src = 0;
    int near_dst = 0;
    for (const auto& n : c.nodes) {
      if (!n.bias) continue;
      CHECK(n.bias->degree == 0.8);
      CHECK(n.bias->sigma == doctest::Approx(0.3 / 0.5977601260424784).epsilon(1e-9));
      if (n.bias->region == Rect{0, 4000, 1000, 5000}) ++near_src;
      if (n.bias->region == Rect{4000, 0, 5000, 1000}) ++near_dst;
    }
    CHECK(near_src == 4);
    CHECK(near_dst == 4);
    CHECK(c.nodes[c.source()].position == Point{500, 4500});
    CHECK(c.nodes[c.destination()].position == Point{4500, 500});
    CHECK(c.traffic.packet_size == 1024);
    CHECK(c.traffic.generation_interval == 500);
    CHECK(c.sim_time == 30000);
  }

  TEST_CASE("every preset loads") {
    for (const char* name : {"table1_biased", "table1_unbiased", "fig4_area_sweep", "smoke"}) {
      CAPTURE(name);
      CHECK_NOTHROW(load_scenario_file(fixtures::source_dir() + "/scenarios/" + name + ".cfg"));
    }
    const auto u = load_scenario_file(fixtures::source_dir() + "/scenarios/table1_unbiased.cfg");
    CHECK(u.nodes.size() == 30);
    CHECK(u.satellite_count() == 0);
  }

  TEST_CASE("prophet defaults") {
    const auto c = parse_scenario(kMinimal);
    CHECK(c.router.kind == RouterKind::prophet);
    CHECK(c.router.prophet_p0 == 0.75);
    CHECK(c.router.prophet_beta == 0.25);
    CHECK(c.router.prophet_alpha == 0.98);
    CHECK(c.router.snw_initial_copies == 6);
    CHECK(c.time_step == 0.1);
    CHECK(c.seed == 1);
  }

  TEST_CASE("missing field section") {
    std::string text = kMinimal;
    text.replace(text.find("[field]\nside = 1000\n"), 20, "");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
  }

  TEST_CASE("errors carry line numbers") {
    try {
      parse_scenario("[field]\nside = 10\nwidth = 3\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
    CHECK_THROWS_AS(parse_scenario("[field]\nside 10\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("side = 10\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[fields]\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[field]\nside = 1\nside = 2\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[field]\nside = \n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[field]\nside = ten\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[field\n"), ParseError);
  }

  TEST_CASE("unknown router and role") {
    std::string text = kMinimal;
    text.replace(text.find("prophet"), 7, "flooding");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
    text = kMinimal;
    text.replace(text.find("static-destination"), 18, "sink");
    CHECK_THROWS_AS(parse_scenario(text), ParseError);
  }

  TEST_CASE("validation errors surface as ScenarioError") {
    std::string text = kMinimal;
    text.replace(text.find("900,900"), 7, "900,1900");
    CHECK_THROWS_AS(parse_scenario(text), ScenarioError);
  }

  TEST_CASE("count replicates blocks") {
    const auto c = parse_scenario(kMinimal + R"(
[node]
count = 3
role = helper
rf_range = 80
bit_rate = 250000
buffer_capacity = 4096
velocity = 10
pause_min = 5
pause_max = 10
)");
    REQUIRE(c.nodes.size() == 5);
    CHECK(c.nodes[4].id == 4);
    CHECK(c.nodes[4].role == NodeRole::helper);
    CHECK_THROWS_AS(parse_scenario(kMinimal + "[node]\ncount = 0\nrole = helper\n"), ParseError);
  }

  TEST_CASE("sigma default needs a calibratable degree") {
    const std::string sat = R"(
[node]
role = satellite
rf_range = 80
bit_rate = 250000
buffer_capacity = 4096
velocity = 10
pause_min = 5
pause_max = 10
bias_region = 0,0,200,200
)";
    CHECK(parse_scenario(kMinimal + sat + "bias_degree = 1\n").nodes[2].bias->sigma == 0.5);
    CHECK_THROWS_AS(parse_scenario(kMinimal + sat + "bias_degree = 0.3\n"), ParseError);
    CHECK(parse_scenario(kMinimal + sat + "bias_degree = 0.3\nbias_sigma = 0.2\n")
              .nodes[2]
              .bias->sigma == 0.2);
  }

  TEST_CASE("parse of emit is the identity on random valid scenarios") {
    auto rng = rng_stream(2024, 0);
    for (int trial = 0; trial < 200; ++trial) {
      ScenarioConfig c;
      c.field.side = rng.uniform(100.0, 8000.0);
      const double a = c.field.side;
      c.nodes.push_back(fixtures::static_node(0, NodeRole::static_source,
                                              {rng.uniform(0, a), rng.uniform(0, a)}));
      c.nodes.push_back(fixtures::static_node(1, NodeRole::static_destination,
                                              {rng.uniform(0, a), rng.uniform(0, a)}));
      const int mobile = static_cast<int>(rng.uniform(0, 6));
      for (int i = 0; i < mobile; ++i) {
        NodeSpec n = fixtures::helper(c.nodes.size());
        n.velocity = rng.uniform(0.5, 30.0);
        n.pause_min = rng.uniform(0, 5);
        n.pause_max = n.pause_min + rng.uniform(0, 5);
        n.rf_range = rng.uniform(1, 200);
        n.bit_rate = rng.uniform(1e3, 1e7);
        n.buffer_capacity = 1 + rng.next_u64() % (1u << 24);
        if (rng.uniform() < 0.5) {
          const double x0 = rng.uniform(0, a / 2);
          const double y0 = rng.uniform(0, a / 2);
          n.role = NodeRole::satellite;
          n.bias = BiasSpec{{x0, y0, x0 + rng.uniform(1, a / 2), y0 + rng.uniform(1, a / 2)},
                            rng.uniform(0, 1), rng.uniform(0.05, 2)};
        }
        c.nodes.push_back(n);
      }
      c.traffic = {1 + rng.next_u64() % 100000, rng.uniform(1, 1000), rng.uniform(1, 1e5)};
      c.router.kind = static_cast<RouterKind>(rng.next_u64() % 3);
      c.router.snw_initial_copies = 1 + static_cast<int>(rng.next_u64() % 64);
      c.router.prophet_p0 = rng.uniform(0.01, 0.99);
      c.router.prophet_beta = rng.uniform(0.01, 0.99);
      c.router.prophet_alpha = rng.uniform(0.01, 0.99);
      c.sim_time = rng.uniform(1, 1e5);
      c.time_step = rng.uniform(0.01, 1.0);
      c.seed = rng.next_u64();
      REQUIRE(check_scenario(c).empty());
      const auto text = emit_scenario(c);
      CAPTURE(text);
      REQUIRE(parse_scenario(text) == c);
      CHECK(emit_scenario(parse_scenario(text)) == text);
    }
  }

  TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/x.cfg"), ParseError);
  }
}
