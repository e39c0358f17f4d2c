#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sscr/geometry.hpp"
#include "sscr/rng.hpp"
#include "sscr/scenario_io.hpp"
#include "test_support.hpp"

using namespace sscr;

namespace {

const char* kMinimalScenario = R"JSON({
  "seed": 7,
  "grid": {"M": 16, "Q": 16, "t_snap": 1e-3, "bandwidth_B": 1e7, "carrier_fc": 3e9},
  "facades": [
    {"corner": [0, 10, 0], "edge_u": [50, 0, 0], "edge_v": [0, 0, 12],
     "material": {"name": "brick", "reflection_loss_db": 4.0, "diffuse_gain_scale": 1.0}}
  ],
  "tx_trajectory": {"waypoints": [{"t": 0, "position": [0, 0, 5]},
                                  {"t": 10, "position": [0, 0, 5]}]},
  "rx_trajectory": {"waypoints": [{"t": 0, "position": [10, 0, 1.5]},
                                  {"t": 10, "position": [40, 0, 1.5]}]},
  "scatter_config": {"density_per_m2": 0.0, "gain_mean_db": 0.0, "gain_std_db": 0.0}
})JSON";

std::string with_replacement(std::string text, const std::string& from,
                             const std::string& to) {
  return text.replace(text.find(from), from.size(), to);
}

}  // namespace

TEST_CASE("trajectory interpolation") {
  Trajectory traj{{{0, {0, 0, 0}}, {10, {100, 0, 0}}}};
  const Pose pose = sample_trajectory(traj, 5.0);
  CHECK(pose.position.isApprox(Vec3(50, 0, 0)));
  CHECK(pose.velocity.isApprox(Vec3(10, 0, 0)));

  SUBCASE("single waypoint") {
    Trajectory point{{{2.0, {1, 2, 3}}}};
    const Pose p = sample_trajectory(point, 2.0);
    CHECK(p.position == Vec3(1, 2, 3));
    CHECK(p.velocity == Vec3(0, 0, 0));
    CHECK_THROWS_AS(sample_trajectory(point, 2.1), std::out_of_range);
  }
  SUBCASE("out of range") {
    CHECK_THROWS_AS(sample_trajectory(traj, 10.0 + 1e-9), std::out_of_range);
    CHECK_THROWS_AS(sample_trajectory(traj, -1e-9), std::out_of_range);
  }
  SUBCASE("shared waypoint takes the later segment's velocity") {
    Trajectory bent{{{0, {0, 0, 0}}, {1, {1, 0, 0}}, {2, {1, 5, 0}}}};
    CHECK(sample_trajectory(bent, 1.0).velocity.isApprox(Vec3(0, 5, 0)));
    CHECK(sample_trajectory(bent, 2.0).velocity.isApprox(Vec3(0, 5, 0)));
  }
  SUBCASE("position continuous, velocity piecewise constant") {
    auto rng = SubstreamRng::substream(1, "traj");
    Trajectory random;
    Real t = 0.0;
    for (int i = 0; i < 6; ++i) {
      random.waypoints.push_back({t, test::random_point(rng, {-5, -5, -5}, {5, 5, 5})});
      t += rng.uniform(0.1, 2.0);
    }
    const Real t_end = random.waypoints.back().t;
    for (int i = 0; i < 200; ++i) {
      const Real u = rng.uniform(1e-6, t_end - 1e-6);
      const Pose left = sample_trajectory(random, u - 1e-9);
      const Pose right = sample_trajectory(random, u + 1e-9);
      CHECK((left.position - right.position).norm() < 1e-6);
    }
    // Inside one segment the velocity is constant.
    const Real mid = 0.5 * (random.waypoints[2].t + random.waypoints[3].t);
    const Real quarter = 0.75 * random.waypoints[2].t + 0.25 * random.waypoints[3].t;
    CHECK(sample_trajectory(random, mid).velocity.isApprox(
        sample_trajectory(random, quarter).velocity));
  }
}

TEST_CASE("segment visibility") {
  Scenario sc = test::free_space();
  SUBCASE("empty environment is fully visible") {
    CHECK(segment_visible({0, 0, 1}, {10, 0, 1}, sc));
  }
  SUBCASE("facade between the endpoints blocks") {
    Facade f;  // wall at x = 5 spanning y in [-1, 1], z in [0, 2]
    f.corner = {5, -1, 0};
    f.edge_u = {0, 2, 0};
    f.edge_v = {0, 0, 2};
    f.material = test::plain_material();
    sc.facades.push_back(f);
    CHECK_FALSE(segment_visible({0, 0, 1}, {10, 0, 1}, sc));
    CHECK(segment_visible({0, 0, 1}, {4, 0, 1}, sc));
    const int ignore[] = {0};
    CHECK(segment_visible({0, 0, 1}, {10, 0, 1}, sc, ignore));
  }
  SUBCASE("symmetry") {
    sc.facades.push_back(test::wall_y(3.0, -5, 5, 8));
    auto rng = SubstreamRng::substream(3, "vis-sym");
    for (int i = 0; i < 500; ++i) {
      const Vec3 a = test::random_point(rng, {-10, -10, -2}, {10, 10, 10});
      const Vec3 b = test::random_point(rng, {-10, -10, -2}, {10, 10, 10});
      CHECK(segment_visible(a, b, sc) == segment_visible(b, a, sc));
    }
  }
  SUBCASE("1000 random segment/facade pairs match the triangle oracle") {
    auto rng = SubstreamRng::substream(11, "vis-oracle");
    int blocked = 0;
    for (int i = 0; i < 1000; ++i) {
      Scenario env = test::free_space();
      Facade f;
      f.corner = test::random_point(rng, {-5, -5, -5}, {5, 5, 5});
      f.edge_u = test::random_point(rng, {-4, -4, -4}, {4, 4, 4});
      f.edge_v = test::random_point(rng, {-4, -4, -4}, {4, 4, 4});
      f.material = test::plain_material();
      if (f.normal().squaredNorm() < 1e-12) continue;
      env.facades.push_back(f);
      const Vec3 a = test::random_point(rng, {-8, -8, -8}, {8, 8, 8});
      const Vec3 b = test::random_point(rng, {-8, -8, -8}, {8, 8, 8});
      const bool lib = segment_visible(a, b, env);
      const bool orc = oracle::visible(a, b, env);
      CHECK(lib == orc);
      blocked += !lib;
    }
    CHECK(blocked > 50);  // the sample actually exercises both outcomes
  }
}

TEST_CASE("scenario loading") {
  SUBCASE("minimal scenario loads with one facade") {
    const Scenario sc = parse_scenario(kMinimalScenario);
    CHECK(sc.facades.size() == 1);
    CHECK(sc.seed == 7);
    CHECK(sc.grid.snapshots_m == 16);
    CHECK(sc.facades[0].material.name == "brick");
  }
  SUBCASE("a box expands into six facades") {
    const std::string text = with_replacement(
        kMinimalScenario, "\"facades\": [",
        R"("boxes": [{"min": [1, 1, 0], "max": [3, 4, 2],
            "material": {"name": "car", "reflection_loss_db": 6.0,
                         "diffuse_gain_scale": 0.5}}],
        "facades": [)");
    const Scenario sc = parse_scenario(text);
    CHECK(sc.facades.size() == 7);
    Real total_area = 0;
    for (std::size_t i = 1; i < 7; ++i) total_area += sc.facades[i].area();
    CHECK(total_area == doctest::Approx(2 * (2 * 3 + 2 * 2 + 3 * 2)));
  }
  SUBCASE("non-increasing waypoint times are rejected by name") {
    const std::string text = with_replacement(
        kMinimalScenario, "{\"t\": 10, \"position\": [40, 0, 1.5]}",
        "{\"t\": 0, \"position\": [40, 0, 1.5]}");
    CHECK_THROWS_WITH_AS(parse_scenario(text), "waypoint times strictly increasing",
                         ValidationError);
  }
  SUBCASE("unknown keys are rejected") {
    const std::string text =
        with_replacement(kMinimalScenario, "\"seed\": 7", "\"seed\": 7, \"extra\": 1");
    CHECK_THROWS_AS(parse_scenario(text), ValidationError);
  }
  SUBCASE("odd M is rejected") {
    const std::string text = with_replacement(kMinimalScenario, "\"M\": 16", "\"M\": 15");
    CHECK_THROWS_WITH_AS(parse_scenario(text), "grid M even", ValidationError);
  }
  SUBCASE("loading is deterministic and canonical form round-trips") {
    const Scenario a = parse_scenario(kMinimalScenario);
    const Scenario b = parse_scenario(kMinimalScenario);
    CHECK(canonical_json(a) == canonical_json(b));
    const Scenario c = parse_scenario(canonical_json(a));
    CHECK(canonical_json(c) == canonical_json(a));
  }
}
