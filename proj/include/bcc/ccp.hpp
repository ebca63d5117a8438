// The communication complexity game built on a full-correlation Bell
// inequality. Each party i gets a bit y_i (uniform +-1) and a setting x_i
// drawn from Q(x) = |g(x)| / sum|g|, broadcasts one bit, and the group has to
// output f = y1 y2 y3 sign(g(x)).

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bcc/bell.hpp"

namespace bcc {

/// Exact fraction in lowest terms, positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

class InputDistribution {
 public:
  /// Throws std::invalid_argument when every coefficient is zero.
  explicit InputDistribution(const FullCorrelationInequality& ineq);

  int settings() const noexcept { return settings_; }
  double operator()(const Settings& x) const;
  /// Indexed like FullCorrelationInequality::table().
  const std::vector<double>& probabilities() const noexcept { return q_; }

 private:
  int settings_;
  std::vector<double> q_;
};

inline InputDistribution input_distribution(const FullCorrelationInequality& ineq) {
  return InputDistribution(ineq);
}

struct GameInstance {
  std::array<int, 3> y{1, 1, 1};
  Settings x{};
};

/// Raised for inputs with q(x) = 0, where sign(g) is undefined.
class ZeroProbabilityInput : public std::domain_error {
 public:
  explicit ZeroProbabilityInput(const std::string& what) : std::domain_error(what) {}
};

/// f = y1 y2 y3 sign(g(x)).
int target_function(const GameInstance& inst, const FullCorrelationInequality& ineq);

/// Closed form for the homogenized Sliwa #5 game: the parity of
/// x1 + x2 + x3 + [x1 == x2 == x3] times y1 y2 y3. Throws ZeroProbabilityInput
/// where g_coefficient vanishes.
int h05_target_parity(const GameInstance& inst);

using ClassicalStrategy = DeterministicStrategy;

/// A = y1 a1(x1) * y2 a2(x2) * y3 a3(x3)
int classical_answer(const GameInstance& inst, const ClassicalStrategy& strategy);

using GameFunction = std::function<int(const GameInstance&)>;

/// (f, A) = sum_y sum_x 2^-3 q(x) f(y, x) A(y, x), literal double sum over
/// all y in {+-1}^3 and all x with q(x) > 0.
double scalar_product(const GameFunction& f, const GameFunction& a, const InputDistribution& q);

/// Direct count over every (y, x): sum of 2^-3 q(x) [A == f].
double success_probability_direct(const FullCorrelationInequality& ineq,
                                  const ClassicalStrategy& strategy);

/// (1 + (f, A)) / 2 with the y-average done analytically:
/// (f, A) = sum_x q(x) sign(g(x)) a1 a2 a3.
double success_probability(const FullCorrelationInequality& ineq, const ClassicalStrategy& strategy);

struct OptimalClassical {
  ClassicalStrategy strategy;
  std::uint64_t code = 0;         // ClassicalExtrema-style encoding
  std::uint64_t strategies = 0;   // size of the search space
  double success = 0.0;
  double scalar_product = 0.0;    // (f, A)
  double bell_value = 0.0;        // sum_x g(x) a1 a2 a3
  std::optional<Rational> success_exact;  // present for integer coefficients
};

/// Exhaustive search over sign functions on the settings with q-support,
/// maximizing the success probability. Smallest encoding wins ties.
OptimalClassical optimal_classical_strategy(const FullCorrelationInequality& ineq);

/// (1 + value / sum_abs_g) / 2. Throws std::invalid_argument unless sum_abs_g > 0.
double exact_success_classical(double bound, double sum_abs_g);
double exact_success_quantum(double quantum_value, double sum_abs_g);
/// (sum + bound) / (2 sum) in lowest terms.
Rational exact_success_rational(std::int64_t bound, std::int64_t sum_abs_g);

}  // namespace bcc
