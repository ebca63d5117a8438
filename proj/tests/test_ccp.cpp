#include "doctest.h"

#include <cmath>
#include <random>

#include "bcc/ccp.hpp"

using namespace bcc;

namespace {

ClassicalStrategy random_strategy(std::mt19937_64& rng) {
  ClassicalStrategy s;
  for (auto& party : s.outputs) {
    party.resize(4);
    for (auto& v : party) v = (rng() & 1u) ? -1 : 1;
  }
  return s;
}

ClassicalStrategy all_plus() {
  ClassicalStrategy s;
  for (auto& party : s.outputs) party.assign(4, 1);
  return s;
}

}  // namespace

TEST_CASE("input distribution") {
  const InputDistribution q(homogenize(sliwa5()));
  CHECK(std::abs(q({0, 0, 0}) - 5.0 / 22.0) < 1e-15);
  CHECK(std::abs(q({1, 1, 1}) - 1.0 / 22.0) < 1e-15);
  CHECK(q({3, 0, 0}) == 0.0);
  CHECK(q({0, 1, 1}) == 0.0);
  double total = 0.0;
  for (double p : q.probabilities()) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
  const auto h = homogenize(sliwa5());
  for (std::size_t i = 0; i < 64; ++i) CHECK((q.probabilities()[i] == 0.0) == (h.table()[i] == 0.0));
}

TEST_CASE("target function examples") {
  const auto h = homogenize(sliwa5());
  CHECK(target_function({{1, 1, 1}, {0, 0, 0}}, h) == 1);
  CHECK(target_function({{1, -1, 1}, {1, 1, 1}}, h) == 1);
  CHECK(target_function({{-1, -1, -1}, {1, 2, 0}}, h) == -1);
  CHECK_THROWS_AS(target_function({{1, 1, 1}, {3, 0, 0}}, h), ZeroProbabilityInput);
  CHECK_THROWS_AS(target_function({{1, 1, 1}, {0, 1, 1}}, h), ZeroProbabilityInput);
  CHECK_THROWS_AS(h05_target_parity({{1, 1, 1}, {3, 3, 3}}), ZeroProbabilityInput);
}

TEST_CASE("sign-of-g and parity forms of f agree on every supported input") {
  const auto h = homogenize(sliwa5());
  int checked = 0;
  for (int y = 0; y < 8; ++y) {
    const std::array<int, 3> ys{(y & 4) ? -1 : 1, (y & 2) ? -1 : 1, (y & 1) ? -1 : 1};
    for (const Settings& x : h.support()) {
      const GameInstance inst{ys, x};
      CHECK(target_function(inst, h) == h05_target_parity(inst));
      ++checked;
    }
  }
  CHECK(checked == 8 * 18);  // 17 expanded terms plus the constant
}

TEST_CASE("scalar product basics") {
  const auto h = homogenize(sliwa5());
  const InputDistribution q(h);
  const GameFunction f = [&](const GameInstance& i) { return target_function(i, h); };
  const GameFunction minus_f = [&](const GameInstance& i) { return -target_function(i, h); };
  CHECK(std::abs(scalar_product(f, f, q) - 1.0) < 1e-12);
  CHECK(std::abs(scalar_product(f, minus_f, q) + 1.0) < 1e-12);
}

TEST_CASE("direct success count equals (1 + (f, A)) / 2 for random strategies") {
  const auto h = homogenize(sliwa5());
  const InputDistribution q(h);
  const GameFunction f = [&](const GameInstance& i) { return target_function(i, h); };
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const ClassicalStrategy s = random_strategy(rng);
    const GameFunction a = [&](const GameInstance& i) { return classical_answer(i, s); };
    const double direct = success_probability_direct(h, s);
    const double literal = 0.5 * (1.0 + scalar_product(f, a, q));
    CHECK(std::abs(direct - literal) <= 1e-12);
    CHECK(std::abs(direct - success_probability(h, s)) <= 1e-12);
    // The Bell value of the strategy maps onto its success probability.
    CHECK(std::abs(direct - exact_success_classical(evaluate(h, s), h.sum_abs())) <= 1e-12);
  }
}

TEST_CASE("optimal classical strategy") {
  const auto h = homogenize(sliwa5());
  const OptimalClassical best = optimal_classical_strategy(h);
  CHECK(best.strategies == 512);
  CHECK(std::abs(best.success - 15.0 / 22.0) < 1e-12);
  CHECK(std::abs(best.scalar_product - 8.0 / 22.0) < 1e-12);
  CHECK(best.bell_value == 8.0);
  REQUIRE(best.success_exact.has_value());
  CHECK(*best.success_exact == Rational{15, 22});
  CHECK(best.code == 0);
  CHECK(best.strategy == all_plus());

  const ClassicalExtrema ext = classical_extrema(h);
  CHECK(std::abs(best.success - exact_success_classical(ext.max, h.sum_abs())) <= 1e-12);
}

TEST_CASE("global sign flips leave success unchanged") {
  const auto h = homogenize(sliwa5());
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    ClassicalStrategy s = random_strategy(rng);
    ClassicalStrategy flipped = s;
    // Flip two parties: the product a1 a2 a3 is unchanged.
    for (std::size_t p : {0u, 2u})
      for (auto& v : flipped.outputs[p]) v = -v;
    CHECK(success_probability(h, s) == doctest::Approx(success_probability(h, flipped)).epsilon(1e-14));
  }
}

TEST_CASE("single-coefficient game is always won") {
  std::vector<double> table(64, 0.0);
  table[1 * 16 + 1 * 4 + 1] = 1.0;
  const OptimalClassical best = optimal_classical_strategy(FullCorrelationInequality(4, table, 1.0));
  CHECK(best.success == 1.0);
  CHECK(best.strategies == 8);
  REQUIRE(best.success_exact.has_value());
  CHECK(*best.success_exact == Rational{1, 1});
}

TEST_CASE("exact success formulas") {
  CHECK(std::abs(exact_success_classical(8, 22) - 0.681818) < 1e-6);
  CHECK(std::abs(exact_success_quantum(8.00685, 22) - 0.681974) < 1e-5);
  CHECK(exact_success_classical(0, 7) == 0.5);
  CHECK(exact_success_rational(8, 22) == Rational{15, 22});
  CHECK(exact_success_rational(8, 22).str() == "15/22");
  CHECK_THROWS_AS(exact_success_classical(1, 0), std::invalid_argument);
  CHECK(Rational::make(6, -4) == Rational{-3, 2});
}

TEST_CASE("quantum advantage for the built-in state") {
  const auto h = homogenize(sliwa5());
  const double s = quantum_value(h, build_vb_state(), measurement_observables());
  const double pq = exact_success_quantum(s, h.sum_abs());
  const double pc = optimal_classical_strategy(h).success;
  CHECK(pq > pc);
  CHECK(std::abs((pq - pc) - 1.56e-4) < 1e-5);
  CHECK(std::abs((pq - pc) - (s - 8.0) / 44.0) < 1e-15);
}
