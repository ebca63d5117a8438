#include "doctest.h"

#include <cmath>

#include "bcc/simulate.hpp"

using namespace bcc;

namespace {

bool same_except_time(const SimulationReport& a, const SimulationReport& b) {
  return a.protocol == b.protocol && a.shots == b.shots && a.successes == b.successes &&
         a.p_hat == b.p_hat && a.standard_error == b.standard_error && a.seed == b.seed &&
         a.shards == b.shards && a.p_exact == b.p_exact && a.z_vs_classical == b.z_vs_classical;
}

// Within k binomial sigmas of p for n shots.
bool within_sigma(double p_hat, double p, std::uint64_t n, double k) {
  return std::abs(p_hat - p) <= k * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

ClassicalStrategy all_plus() {
  ClassicalStrategy s;
  for (auto& party : s.outputs) party.assign(4, 1);
  return s;
}

}  // namespace

TEST_CASE("protocol names") {
  CHECK(parse_protocol("classical") == Protocol::classical);
  CHECK(parse_protocol("quantum") == Protocol::quantum);
  CHECK(to_string(Protocol::classical) == "classical");
  CHECK_THROWS_AS(parse_protocol("magic"), std::invalid_argument);
}

TEST_CASE("born distributions are normalized and reproduce the trace correlations") {
  const GameSetup setup = reference_setup();
  for (const Settings& x : setup.inequality.support()) {
    const OutcomeDistribution d = born_distribution(setup.state, setup.observables, x);
    double total = 0.0;
    for (double p : d.p) {
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(std::abs(d.correlation() - correlation(setup.state, setup.observables, x)) <= 1e-9);
  }
}

TEST_CASE("identity settings give a deterministic +1 triple") {
  const GameSetup setup = reference_setup();
  const OutcomeDistribution d = born_distribution(setup.state, setup.observables, {0, 0, 0});
  CHECK(std::abs(d.p[0] - 1.0) <= 1e-12);
  CHECK(OutcomeDistribution::outcome(0b101, 0) == -1);
  CHECK(OutcomeDistribution::outcome(0b101, 1) == 1);
  CHECK(OutcomeDistribution::outcome(0b101, 2) == -1);
}

TEST_CASE("sampled inputs follow q and fair coins") {
  const GameSetup setup = reference_setup();
  const ProtocolTables tables(setup);
  Xoshiro256StarStar rng(123);
  constexpr std::uint64_t n = 1'000'000;
  std::uint64_t origin = 0, plus_y1 = 0, triple_one = 0;
  bool saw_dead_setting = false;
  for (std::uint64_t i = 0; i < n; ++i) {
    const GameInstance g = sample_inputs(rng, tables);
    if (g.x == Settings{0, 0, 0}) ++origin;
    if (g.x == Settings{1, 1, 1}) ++triple_one;
    if (g.y[0] == 1) ++plus_y1;
    for (int xi : g.x) saw_dead_setting = saw_dead_setting || xi == 3;
  }
  CHECK(within_sigma(static_cast<double>(origin) / n, 5.0 / 22.0, n, 5));
  CHECK(within_sigma(static_cast<double>(triple_one) / n, 1.0 / 22.0, n, 5));
  CHECK(within_sigma(static_cast<double>(plus_y1) / n, 0.5, n, 5));
  CHECK_FALSE(saw_dead_setting);
  CHECK(tables.support().size() == 18);
}

TEST_CASE("one million shots land within 5 sigma of the exact values") {
  for (Protocol protocol : {Protocol::classical, Protocol::quantum}) {
    const SimulationReport r = run_protocol({1'000'000, 0, protocol, 1});
    CHECK(r.successes <= r.shots);
    CHECK(within_sigma(r.p_hat, r.p_exact, r.shots, 5));
    CHECK(r.p_classical_exact == 15.0 / 22.0);
  }
  const SimulationReport c = run_protocol({1000, 0, Protocol::classical, 1});
  CHECK(c.p_exact == 15.0 / 22.0);
  const SimulationReport q = run_protocol({1000, 0, Protocol::quantum, 1});
  CHECK(std::abs(q.p_exact - 0.681974) < 1e-4);
}

TEST_CASE("runs are deterministic in (seed, shards, shots, protocol)") {
  const SimulationConfig cfg{200'000, 17, Protocol::quantum, 4};
  CHECK(same_except_time(run_protocol(cfg), run_protocol(cfg)));

  SimulationConfig other = cfg;
  other.seed = 18;
  CHECK(run_protocol(other).successes != run_protocol(cfg).successes);
}

TEST_CASE("report fields are consistent") {
  const SimulationReport r = run_protocol({12345, 9, Protocol::quantum, 3});
  CHECK(r.shots == 12345);
  CHECK(r.shards == 3);
  CHECK(r.seed == 9);
  CHECK(r.p_hat == static_cast<double>(r.successes) / 12345.0);
  CHECK(r.standard_error == doctest::Approx(std::sqrt(r.p_hat * (1 - r.p_hat) / 12345.0)));
  REQUIRE(r.z_vs_classical.has_value());
  CHECK(*r.z_vs_classical == doctest::Approx((r.p_hat - 15.0 / 22.0) / r.standard_error));
  CHECK(r.wall_time_seconds >= 0.0);
}

TEST_CASE("identity measurements reduce the quantum run to the all-plus classical run") {
  GameSetup setup = reference_setup();
  setup.observables = identity_observables(4);
  for (std::uint64_t seed : {0u, 5u}) {
    const SimulationConfig q{100'000, seed, Protocol::quantum, 2};
    const SimulationConfig c{100'000, seed, Protocol::classical, 2};
    const SimulationReport rq = run_protocol(q, setup);
    const SimulationReport rc = run_protocol(c, setup, all_plus());
    CHECK(rq.successes == rc.successes);
    CHECK(rq.p_exact == doctest::Approx(rc.p_exact).epsilon(1e-12));
  }
}

TEST_CASE("estimates converge across seeds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (std::uint64_t n : {20'000u, 60'000u}) {
      const SimulationReport r = run_protocol({n, seed, Protocol::quantum, 2});
      CHECK(within_sigma(r.p_hat, r.p_exact, n, 5));
    }
  }
}

TEST_CASE("configuration is validated") {
  CHECK_THROWS_AS(run_protocol({0, 0, Protocol::quantum, 1}), std::invalid_argument);
  CHECK_THROWS_AS(run_protocol({10, 0, Protocol::quantum, 0}), std::invalid_argument);
  // More shards than shots is fine: idle shards contribute nothing.
  CHECK(run_protocol({3, 0, Protocol::quantum, 8}).shots == 3);
}

TEST_CASE("gap experiment arithmetic") {
  const GapReport small = gap_experiment(10'000, 0);
  CHECK(small.underpowered);
  CHECK(small.p_classical_exact == Rational{15, 22});
  CHECK(std::abs(small.gap_exact - 1.56e-4) < 1e-5);
  CHECK(small.z_score == doctest::Approx((small.quantum.p_hat - 15.0 / 22.0) / small.quantum.standard_error));

  // 16 P_C (1 - P_C) / gap^2: about 1.4e8 shots for a 4-sigma resolution.
  const double var = (15.0 / 22.0) * (7.0 / 22.0);
  CHECK(small.required_shots == doctest::Approx(16.0 * var / (small.gap_exact * small.gap_exact)));
  CHECK(small.required_shots > 1.0e8);
  CHECK(small.required_shots < 2.0e8);
  // Expected z at 4e8 shots is gap / sqrt(var / n), about 6.7.
  CHECK(small.gap_exact / std::sqrt(var / 4.0e8) == doctest::Approx(6.7).epsilon(0.01));
}
