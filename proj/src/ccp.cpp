#include "bcc/ccp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bcc {

namespace {

constexpr std::array<std::array<int, 3>, 8> kAllY{{
    {1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
    {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1},
}};

int sign_of(double v) { return v > 0 ? 1 : -1; }

bool all_integral(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(), [](double v) {
    return std::nearbyint(v) == v && std::abs(v) < 1e15;
  });
}

}  // namespace

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

InputDistribution::InputDistribution(const FullCorrelationInequality& ineq)
    : settings_(ineq.settings()) {
  const double total = ineq.sum_abs();
  if (!(total > 0.0)) throw std::invalid_argument("input_distribution: all coefficients are zero");
  q_.reserve(ineq.table().size());
  for (double g : ineq.table()) q_.push_back(std::abs(g) / total);
}

double InputDistribution::operator()(const Settings& x) const {
  for (int s : x)
    if (s < 0 || s >= settings_) throw std::out_of_range("input_distribution: setting out of range");
  const auto m = static_cast<std::size_t>(settings_);
  return q_[(static_cast<std::size_t>(x[0]) * m + static_cast<std::size_t>(x[1])) * m +
            static_cast<std::size_t>(x[2])];
}

int target_function(const GameInstance& inst, const FullCorrelationInequality& ineq) {
  const double g = ineq.g(inst.x);
  if (g == 0.0) {
    throw ZeroProbabilityInput("target_function: g(" + term_label({inst.x[0], inst.x[1], inst.x[2]}) +
                               ") = 0, input has probability zero");
  }
  return inst.y[0] * inst.y[1] * inst.y[2] * sign_of(g);
}

int h05_target_parity(const GameInstance& inst) {
  const auto [x1, x2, x3] = inst.x;
  if (g_coefficient(x1, x2, x3) == 0.0) {
    throw ZeroProbabilityInput("h05_target_parity: input has probability zero");
  }
  const int all_equal = (x1 == x2 && x2 == x3) ? 1 : 0;
  const int parity = (all_equal + x1 + x2 + x3) % 2;
  return inst.y[0] * inst.y[1] * inst.y[2] * (2 * parity - 1);
}

int classical_answer(const GameInstance& inst, const ClassicalStrategy& strategy) {
  int a = 1;
  for (std::size_t p = 0; p < 3; ++p) a *= inst.y[p] * strategy(p, inst.x[p]);
  return a;
}

double scalar_product(const GameFunction& f, const GameFunction& a, const InputDistribution& q) {
  const auto& probs = q.probabilities();
  const auto m = static_cast<std::size_t>(q.settings());
  double sum = 0.0;
  for (const auto& y : kAllY) {
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] == 0.0) continue;
      const GameInstance inst{y, {static_cast<int>(i / (m * m)), static_cast<int>((i / m) % m),
                                  static_cast<int>(i % m)}};
      sum += 0.125 * probs[i] * f(inst) * a(inst);
    }
  }
  return sum;
}

double success_probability_direct(const FullCorrelationInequality& ineq,
                                  const ClassicalStrategy& strategy) {
  const InputDistribution q(ineq);
  const auto& probs = q.probabilities();
  double p = 0.0;
  for (const auto& y : kAllY) {
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i] == 0.0) continue;
      const GameInstance inst{y, ineq.settings_at(i)};
      if (classical_answer(inst, strategy) == target_function(inst, ineq)) p += 0.125 * probs[i];
    }
  }
  return p;
}

double success_probability(const FullCorrelationInequality& ineq, const ClassicalStrategy& strategy) {
  const InputDistribution q(ineq);
  const auto& probs = q.probabilities();
  double fa = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0.0) continue;
    const Settings x = ineq.settings_at(i);
    fa += probs[i] * sign_of(ineq.table()[i]) * strategy(0, x[0]) * strategy(1, x[1]) * strategy(2, x[2]);
  }
  return 0.5 * (1.0 + fa);
}

OptimalClassical optimal_classical_strategy(const FullCorrelationInequality& ineq) {
  const InputDistribution q(ineq);
  const auto& probs = q.probabilities();

  // Settings each party can actually receive.
  std::array<std::vector<int>, 3> live;
  for (int s = 0; s < ineq.settings(); ++s) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0 && ineq.settings_at(i)[p] == s) {
          live[p].push_back(s);
          break;
        }
      }
    }
  }
  const int bits = static_cast<int>(live[0].size() + live[1].size() + live[2].size());
  if (bits > kMaxStrategyBits) {
    throw StrategySpaceTooLarge("optimal_classical_strategy: 2^" + std::to_string(bits) +
                                " strategies");
  }

  const auto decode = [&](std::uint64_t code) {
    ClassicalStrategy s;
    int slot = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      s.outputs[p].assign(static_cast<std::size_t>(ineq.settings()), 1);
      for (int setting : live[p]) {
        const bool negative = (code >> (bits - 1 - slot++)) & 1u;
        s.outputs[p][static_cast<std::size_t>(setting)] = negative ? -1 : 1;
      }
    }
    return s;
  };

  OptimalClassical best;
  best.strategies = std::uint64_t{1} << bits;
  double best_success = -1.0;
  for (std::uint64_t code = 0; code < best.strategies; ++code) {
    const ClassicalStrategy s = decode(code);
    const double success = success_probability(ineq, s);
    if (success > best_success + 1e-12) {
      best_success = success;
      best.code = code;
      best.strategy = s;
    }
  }

  best.success = best_success;
  best.scalar_product = 2.0 * best_success - 1.0;
  best.bell_value = evaluate(ineq, best.strategy);
  if (all_integral(ineq.table())) {
    best.success_exact = exact_success_rational(std::llround(best.bell_value),
                                                std::llround(ineq.sum_abs()));
  }
  return best;
}

double exact_success_classical(double bound, double sum_abs_g) {
  if (!(sum_abs_g > 0.0)) throw std::invalid_argument("exact_success: sum |g| must be positive");
  return 0.5 * (1.0 + bound / sum_abs_g);
}

double exact_success_quantum(double quantum_value, double sum_abs_g) {
  return exact_success_classical(quantum_value, sum_abs_g);
}

Rational exact_success_rational(std::int64_t bound, std::int64_t sum_abs_g) {
  if (sum_abs_g <= 0) throw std::invalid_argument("exact_success: sum |g| must be positive");
  return Rational::make(sum_abs_g + bound, 2 * sum_abs_g);
}

}  // namespace bcc
