// Three-party Bell expressions: the Sliwa #5 inequality with lower-order
// terms, its homogenized full-correlation form, exhaustive classical bounds
// over deterministic local strategies, and quantum values from a state and a
// set of +-1 observables.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcc/linalg.hpp"
#include "bcc/state.hpp"

namespace bcc {

/// One measurement setting per party.
using Settings = std::array<int, 3>;
/// Per-party setting, or nullopt when the party does not appear in a term.
using PartialSettings = std::array<std::optional<int>, 3>;

struct GeneralInequalityTerm {
  PartialSettings settings;
  double coefficient = 0.0;

  friend bool operator==(const GeneralInequalityTerm&, const GeneralInequalityTerm&) = default;
};

/// "A1B2", "A2B1C1"; "1" for the constant term.
std::string term_label(const PartialSettings& settings);

/// Bell expression lower <= sum_terms coeff * <product> <= upper, settings
/// 1..settings_per_party. When `symmetrized` is set the terms are orbit
/// representatives and the expression is sym[terms].
struct GeneralInequality {
  std::vector<GeneralInequalityTerm> terms;
  int settings_per_party = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool symmetrized = false;
};

/// Orbit of a term under all permutations of the three parties, duplicates
/// removed, in first-seen order over party_permutations().
std::vector<GeneralInequalityTerm> symmetrize(const GeneralInequalityTerm& term);

/// The literal term list of an inequality (orbits expanded if symmetrized).
std::vector<GeneralInequalityTerm> expanded_terms(const GeneralInequality& ineq);

/// -13 <= sym[A1 + A1B2 - A2B2 - A1B1C1 - A2B1C1 + A2B2C2] <= 3
GeneralInequality sliwa5();

/// |sum_x g(x) E(x)| <= bound over a dense settings^3 coefficient table.
/// Setting 0 plays the role of the identity observable after homogenization.
class FullCorrelationInequality {
 public:
  /// Throws std::invalid_argument if table size != settings^3, if every
  /// coefficient is zero, or if the bound is negative.
  FullCorrelationInequality(int settings, std::vector<double> table, double bound);

  int settings() const noexcept { return settings_; }
  double bound() const noexcept { return bound_; }
  std::span<const double> table() const noexcept { return table_; }

  /// Throws std::out_of_range for settings outside [0, settings).
  double g(const Settings& x) const;
  std::size_t index(const Settings& x) const;
  Settings settings_at(std::size_t index) const;

  double sum_abs() const;
  /// Tuples with nonzero coefficient, lexicographic order.
  std::vector<Settings> support() const;
  /// For each party, the ascending settings that appear in the support.
  std::array<std::vector<int>, 3> live_settings() const;

 private:
  int settings_;
  std::vector<double> table_;
  double bound_;
};

/// Adds an identity setting 0 to every party: the constant shift
/// -(lower + upper) / 2 becomes the coefficient of A0B0C0, absent parties in
/// lower-order terms are filled with setting 0, and the bound becomes
/// (upper - lower) / 2. The table is padded with zero rows up to the next
/// power of two settings, so m = 2 yields 2-bit inputs {0, 1, 2, 3}.
FullCorrelationInequality homogenize(const GeneralInequality& ineq);

/// Closed form for the homogenized Sliwa #5 coefficients, x_i in {0..3}:
///   g = {2[(d + x1 + x2 + x3) mod 2] - 1} (1 + 4 d0) (1 - [sum mod 3 == 2]) prod(1 - [x_i == 3])
/// where d = [x1 == x2 == x3] and d0 = [x1 == x2 == x3 == 0].
double g_coefficient(int x1, int x2, int x3);

/// The same inequality built from g_coefficient, bound 8.
FullCorrelationInequality h05_inequality();

/// Fixed +-1 output per (party, setting).
struct DeterministicStrategy {
  std::array<std::vector<int>, 3> outputs;

  int operator()(std::size_t party, int setting) const {
    return outputs[party][static_cast<std::size_t>(setting)];
  }
  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

class StrategySpaceTooLarge : public std::length_error {
 public:
  explicit StrategySpaceTooLarge(const std::string& what) : std::length_error(what) {}
};

inline constexpr int kMaxStrategyBits = 24;

/// Exact extrema over deterministic strategies. The encoding sets bit
/// (slots - 1 - j) when slot j outputs -1, with slots ordered party-major and
/// settings ascending, so numeric order is lexicographic order; ties go to the
/// smallest encoding.
struct ClassicalExtrema {
  double min = 0.0;
  double max = 0.0;
  DeterministicStrategy argmin;
  DeterministicStrategy argmax;
  std::uint64_t argmin_code = 0;
  std::uint64_t argmax_code = 0;
  std::uint64_t strategies = 0;
};

/// Enumerates every live setting of every party (those in the support), so
/// the homogenized Sliwa #5 has 2^9 strategies.
ClassicalExtrema classical_extrema(const FullCorrelationInequality& ineq);
/// Enumerates settings 1..m for every party (2^6 for Sliwa #5).
ClassicalExtrema classical_extrema(const GeneralInequality& ineq);

double evaluate(const FullCorrelationInequality& ineq, const DeterministicStrategy& strategy);
double evaluate(const GeneralInequality& ineq, const DeterministicStrategy& strategy);

/// Per-party lists of 2x2 Hermitian observables with O^2 = I; entry 0 of
/// every list is the identity.
class ObservableSet {
 public:
  /// Throws std::invalid_argument if any observable is not 2x2, not
  /// Hermitian, does not square to I within 1e-9, or if entry 0 is not I.
  explicit ObservableSet(std::array<std::vector<ComplexMatrix>, 3> per_party);

  /// Throws std::out_of_range when the party has no such setting.
  const ComplexMatrix& observable(std::size_t party, int setting) const;
  int settings(std::size_t party) const { return static_cast<int>(per_party_[party].size()); }

 private:
  std::array<std::vector<ComplexMatrix>, 3> per_party_;
};

/// A1 = [[cos 2pi/9, sin 2pi/9], [sin 2pi/9, -cos 2pi/9]] and
/// A2 = [[sin pi/18, -cos pi/18], [-cos pi/18, -sin pi/18]] for every party,
/// with setting 0 the identity.
ObservableSet measurement_observables();
/// Identity for every setting 0..settings-1.
ObservableSet identity_observables(int settings);

/// E(x) = Re tr(rho O_x1 (x) O_x2 (x) O_x3). Throws std::domain_error when
/// the imaginary part exceeds 1e-9.
double correlation(const DensityMatrix& rho, const ObservableSet& obs, const Settings& x);
/// Absent parties measure the identity.
double correlation(const DensityMatrix& rho, const ObservableSet& obs, const PartialSettings& x);

double quantum_value(const FullCorrelationInequality& ineq, const DensityMatrix& rho,
                     const ObservableSet& obs);
/// The expression without its bounds, lower-order terms included.
double quantum_value(const GeneralInequality& ineq, const DensityMatrix& rho,
                     const ObservableSet& obs);

struct CorrelationTerm {
  Settings x;
  double coefficient;
  double correlation;
};

/// One entry per support tuple, lexicographic order.
std::vector<CorrelationTerm> correlation_terms(const FullCorrelationInequality& ineq,
                                               const DensityMatrix& rho, const ObservableSet& obs);

}  // namespace bcc
