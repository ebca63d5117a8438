#include "bcc/bell.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace bcc {

namespace {

constexpr std::array<char, 3> kPartyNames{'A', 'B', 'C'};

// A product term over strategy slots; slot -1 means the party is absent.
struct Monomial {
  double coefficient;
  std::array<int, 3> slot;
};

struct StrategySpace {
  // slots[party] lists the enumerated settings; slot_base[party] is the index
  // of the party's first slot in the party-major ordering.
  std::array<std::vector<int>, 3> settings;
  std::array<int, 3> slot_base{};
  int table_width = 0;  // per-party output vector length
  int slots = 0;

  int slot_of(std::size_t party, int setting) const {
    const auto& s = settings[party];
    const auto it = std::find(s.begin(), s.end(), setting);
    if (it == s.end()) return -1;
    return slot_base[party] + static_cast<int>(it - s.begin());
  }

  DeterministicStrategy decode(std::uint64_t code) const {
    DeterministicStrategy strategy;
    for (std::size_t p = 0; p < 3; ++p) {
      strategy.outputs[p].assign(static_cast<std::size_t>(table_width), 1);
      for (std::size_t k = 0; k < settings[p].size(); ++k) {
        const int slot = slot_base[p] + static_cast<int>(k);
        const bool negative = (code >> (slots - 1 - slot)) & 1u;
        strategy.outputs[p][static_cast<std::size_t>(settings[p][k])] = negative ? -1 : 1;
      }
    }
    return strategy;
  }
};

StrategySpace make_space(const std::array<std::vector<int>, 3>& settings, int table_width) {
  StrategySpace space;
  space.settings = settings;
  space.table_width = table_width;
  for (std::size_t p = 0; p < 3; ++p) {
    space.slot_base[p] = space.slots;
    space.slots += static_cast<int>(settings[p].size());
  }
  if (space.slots > kMaxStrategyBits) {
    throw StrategySpaceTooLarge("classical_extrema: 2^" + std::to_string(space.slots) +
                                " strategies exceeds the 2^" + std::to_string(kMaxStrategyBits) +
                                " limit");
  }
  return space;
}

ClassicalExtrema enumerate(const StrategySpace& space, const std::vector<Monomial>& terms) {
  const std::uint64_t count = std::uint64_t{1} << space.slots;
  ClassicalExtrema result;
  result.strategies = count;
  result.min = std::numeric_limits<double>::infinity();
  result.max = -std::numeric_limits<double>::infinity();

  for (std::uint64_t code = 0; code < count; ++code) {
    double value = 0.0;
    for (const Monomial& m : terms) {
      int parity = 0;
      for (int slot : m.slot)
        if (slot >= 0) parity ^= static_cast<int>((code >> (space.slots - 1 - slot)) & 1u);
      value += parity ? -m.coefficient : m.coefficient;
    }
    if (value > result.max) {
      result.max = value;
      result.argmax_code = code;
    }
    if (value < result.min) {
      result.min = value;
      result.argmin_code = code;
    }
  }
  result.argmax = space.decode(result.argmax_code);
  result.argmin = space.decode(result.argmin_code);
  return result;
}

std::vector<int> range_settings(int first, int last) {
  std::vector<int> v;
  for (int s = first; s <= last; ++s) v.push_back(s);
  return v;
}

ComplexMatrix reflection(double a, double b) { return ComplexMatrix{{a, b}, {b, -a}}; }

double trace_product_re(const ComplexMatrix& rho, const ComplexMatrix& op, double* imag) {
  // tr(rho * op) = sum_ij rho(i, j) op(j, i)
  Complex t{};
  for (std::size_t i = 0; i < rho.dim(); ++i)
    for (std::size_t j = 0; j < rho.dim(); ++j) t += rho(i, j) * op(j, i);
  if (imag) *imag = t.imag();
  return t.real();
}

}  // namespace

std::string term_label(const PartialSettings& settings) {
  std::string label;
  for (std::size_t p = 0; p < 3; ++p) {
    if (!settings[p]) continue;
    label += kPartyNames[p];
    label += std::to_string(*settings[p]);
  }
  return label.empty() ? "1" : label;
}

std::vector<GeneralInequalityTerm> symmetrize(const GeneralInequalityTerm& term) {
  std::vector<GeneralInequalityTerm> orbit;
  for (const auto& perm : party_permutations()) {
    GeneralInequalityTerm image{{}, term.coefficient};
    for (std::size_t k = 0; k < 3; ++k) image.settings[k] = term.settings[static_cast<std::size_t>(perm[k])];
    if (std::find(orbit.begin(), orbit.end(), image) == orbit.end()) orbit.push_back(image);
  }
  return orbit;
}

std::vector<GeneralInequalityTerm> expanded_terms(const GeneralInequality& ineq) {
  if (!ineq.symmetrized) return ineq.terms;
  std::vector<GeneralInequalityTerm> all;
  for (const auto& t : ineq.terms) {
    auto orbit = symmetrize(t);
    all.insert(all.end(), orbit.begin(), orbit.end());
  }
  return all;
}

GeneralInequality sliwa5() {
  constexpr std::optional<int> none;
  return GeneralInequality{
      .terms =
          {
              {{1, none, none}, 1.0},
              {{1, 2, none}, 1.0},
              {{2, 2, none}, -1.0},
              {{1, 1, 1}, -1.0},
              {{2, 1, 1}, -1.0},
              {{2, 2, 2}, 1.0},
          },
      .settings_per_party = 2,
      .lower_bound = -13.0,
      .upper_bound = 3.0,
      .symmetrized = true,
  };
}

FullCorrelationInequality::FullCorrelationInequality(int settings, std::vector<double> table,
                                                     double bound)
    : settings_(settings), table_(std::move(table)), bound_(bound) {
  if (settings_ < 1) throw std::invalid_argument("FullCorrelationInequality: need at least one setting");
  const auto expected = static_cast<std::size_t>(settings_) * settings_ * settings_;
  if (table_.size() != expected) {
    throw std::invalid_argument("FullCorrelationInequality: table has " +
                                std::to_string(table_.size()) + " entries, expected " +
                                std::to_string(expected));
  }
  if (std::all_of(table_.begin(), table_.end(), [](double v) { return v == 0.0; })) {
    throw std::invalid_argument("FullCorrelationInequality: all coefficients are zero");
  }
  if (!std::all_of(table_.begin(), table_.end(), [](double v) { return std::isfinite(v); })) {
    throw std::invalid_argument("FullCorrelationInequality: non-finite coefficient");
  }
  if (!(bound_ >= 0.0)) throw std::invalid_argument("FullCorrelationInequality: negative bound");
}

std::size_t FullCorrelationInequality::index(const Settings& x) const {
  for (int s : x) {
    if (s < 0 || s >= settings_) {
      throw std::out_of_range("setting " + std::to_string(s) + " outside [0, " +
                              std::to_string(settings_) + ")");
    }
  }
  const auto m = static_cast<std::size_t>(settings_);
  return (static_cast<std::size_t>(x[0]) * m + static_cast<std::size_t>(x[1])) * m +
         static_cast<std::size_t>(x[2]);
}

Settings FullCorrelationInequality::settings_at(std::size_t index) const {
  const auto m = static_cast<std::size_t>(settings_);
  return {static_cast<int>(index / (m * m)), static_cast<int>((index / m) % m),
          static_cast<int>(index % m)};
}

double FullCorrelationInequality::g(const Settings& x) const { return table_[index(x)]; }

double FullCorrelationInequality::sum_abs() const {
  double s = 0.0;
  for (double v : table_) s += std::abs(v);
  return s;
}

std::vector<Settings> FullCorrelationInequality::support() const {
  std::vector<Settings> out;
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (table_[i] != 0.0) out.push_back(settings_at(i));
  return out;
}

std::array<std::vector<int>, 3> FullCorrelationInequality::live_settings() const {
  std::array<std::vector<bool>, 3> seen;
  for (auto& s : seen) s.assign(static_cast<std::size_t>(settings_), false);
  for (const Settings& x : support())
    for (std::size_t p = 0; p < 3; ++p) seen[p][static_cast<std::size_t>(x[p])] = true;
  std::array<std::vector<int>, 3> live;
  for (std::size_t p = 0; p < 3; ++p)
    for (int s = 0; s < settings_; ++s)
      if (seen[p][static_cast<std::size_t>(s)]) live[p].push_back(s);
  return live;
}

FullCorrelationInequality homogenize(const GeneralInequality& ineq) {
  const int m = ineq.settings_per_party;
  const int width = static_cast<int>(std::bit_ceil(static_cast<unsigned>(m + 1)));
  const auto w = static_cast<std::size_t>(width);
  std::vector<double> table(w * w * w, 0.0);
  const auto at = [&](const Settings& x) -> double& {
    return table[(static_cast<std::size_t>(x[0]) * w + static_cast<std::size_t>(x[1])) * w +
                 static_cast<std::size_t>(x[2])];
  };

  at({0, 0, 0}) += -(ineq.lower_bound + ineq.upper_bound) / 2.0;
  for (const auto& term : expanded_terms(ineq)) {
    Settings x{};
    for (std::size_t p = 0; p < 3; ++p) {
      const int s = term.settings[p].value_or(0);
      if (s < 0 || s > m) throw std::out_of_range("homogenize: setting outside 1..m");
      x[p] = s;
    }
    at(x) += term.coefficient;
  }
  return FullCorrelationInequality(width, std::move(table),
                                   (ineq.upper_bound - ineq.lower_bound) / 2.0);
}

double g_coefficient(int x1, int x2, int x3) {
  for (int s : {x1, x2, x3})
    if (s < 0 || s > 3) throw std::out_of_range("g_coefficient: setting outside 0..3");
  const int sum = x1 + x2 + x3;
  const int all_equal = (x1 == x2 && x2 == x3) ? 1 : 0;
  const int all_zero = (x1 == 0 && all_equal) ? 1 : 0;
  const int sign = 2 * ((all_equal + sum) % 2) - 1;
  const int weight = 1 + 4 * all_zero;
  const int mod3 = (sum % 3 == 2) ? 0 : 1;
  const int live = (x1 != 3 && x2 != 3 && x3 != 3) ? 1 : 0;
  return static_cast<double>(sign * weight * mod3 * live);
}

FullCorrelationInequality h05_inequality() {
  std::vector<double> table;
  table.reserve(64);
  for (int x1 = 0; x1 < 4; ++x1)
    for (int x2 = 0; x2 < 4; ++x2)
      for (int x3 = 0; x3 < 4; ++x3) table.push_back(g_coefficient(x1, x2, x3));
  return FullCorrelationInequality(4, std::move(table), 8.0);
}

ClassicalExtrema classical_extrema(const FullCorrelationInequality& ineq) {
  const StrategySpace space = make_space(ineq.live_settings(), ineq.settings());
  std::vector<Monomial> terms;
  for (const Settings& x : ineq.support()) {
    Monomial m{ineq.g(x), {}};
    for (std::size_t p = 0; p < 3; ++p) m.slot[p] = space.slot_of(p, x[p]);
    terms.push_back(m);
  }
  return enumerate(space, terms);
}

ClassicalExtrema classical_extrema(const GeneralInequality& ineq) {
  const std::vector<int> s = range_settings(1, ineq.settings_per_party);
  const StrategySpace space = make_space({s, s, s}, ineq.settings_per_party + 1);
  std::vector<Monomial> terms;
  for (const auto& term : expanded_terms(ineq)) {
    Monomial m{term.coefficient, {-1, -1, -1}};
    for (std::size_t p = 0; p < 3; ++p) {
      if (!term.settings[p]) continue;
      m.slot[p] = space.slot_of(p, *term.settings[p]);
      if (m.slot[p] < 0) throw std::out_of_range("classical_extrema: setting outside 1..m");
    }
    terms.push_back(m);
  }
  return enumerate(space, terms);
}

double evaluate(const FullCorrelationInequality& ineq, const DeterministicStrategy& strategy) {
  double value = 0.0;
  for (const Settings& x : ineq.support())
    value += ineq.g(x) * strategy(0, x[0]) * strategy(1, x[1]) * strategy(2, x[2]);
  return value;
}

double evaluate(const GeneralInequality& ineq, const DeterministicStrategy& strategy) {
  double value = 0.0;
  for (const auto& term : expanded_terms(ineq)) {
    double product = term.coefficient;
    for (std::size_t p = 0; p < 3; ++p)
      if (term.settings[p]) product *= strategy(p, *term.settings[p]);
    value += product;
  }
  return value;
}

ObservableSet::ObservableSet(std::array<std::vector<ComplexMatrix>, 3> per_party)
    : per_party_(std::move(per_party)) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  for (std::size_t p = 0; p < 3; ++p) {
    const auto& list = per_party_[p];
    if (list.empty() || list.front() != id) {
      throw std::invalid_argument("ObservableSet: setting 0 must be the identity");
    }
    for (const auto& o : list) {
      if (o.dim() != 2) throw std::invalid_argument("ObservableSet: observables must be 2x2");
      if (hermiticity_deviation(o) > kHermitianTolerance)
        throw std::invalid_argument("ObservableSet: observable is not Hermitian");
      if (max_abs_diff(matmul(o, o), id) > kHermitianTolerance)
        throw std::invalid_argument("ObservableSet: observable does not square to identity");
    }
  }
}

const ComplexMatrix& ObservableSet::observable(std::size_t party, int setting) const {
  if (party >= 3) throw std::out_of_range("ObservableSet: party index out of range");
  const auto& list = per_party_[party];
  if (setting < 0 || static_cast<std::size_t>(setting) >= list.size()) {
    throw std::out_of_range(std::string("no observable for party ") + kPartyNames[party] +
                            " setting " + std::to_string(setting));
  }
  return list[static_cast<std::size_t>(setting)];
}

ObservableSet measurement_observables() {
  using std::numbers::pi;
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix a1 = reflection(std::cos(2 * pi / 9), std::sin(2 * pi / 9));
  const ComplexMatrix a2 = reflection(std::sin(pi / 18), -std::cos(pi / 18));
  return ObservableSet({std::vector{id, a1, a2}, std::vector{id, a1, a2}, std::vector{id, a1, a2}});
}

ObservableSet identity_observables(int settings) {
  std::vector<ComplexMatrix> list(static_cast<std::size_t>(settings), ComplexMatrix::identity(2));
  return ObservableSet({list, list, list});
}

double correlation(const DensityMatrix& rho, const ObservableSet& obs, const Settings& x) {
  const ComplexMatrix op =
      kron({obs.observable(0, x[0]), obs.observable(1, x[1]), obs.observable(2, x[2])});
  double imag = 0.0;
  const double re = trace_product_re(rho.matrix(), op, &imag);
  if (std::abs(imag) > 1e-9) {
    throw std::domain_error("correlation: imaginary part " + std::to_string(imag) +
                            " exceeds 1e-9");
  }
  return re;
}

double correlation(const DensityMatrix& rho, const ObservableSet& obs, const PartialSettings& x) {
  return correlation(rho, obs, Settings{x[0].value_or(0), x[1].value_or(0), x[2].value_or(0)});
}

double quantum_value(const FullCorrelationInequality& ineq, const DensityMatrix& rho,
                     const ObservableSet& obs) {
  double s = 0.0;
  for (const auto& term : correlation_terms(ineq, rho, obs)) s += term.coefficient * term.correlation;
  return s;
}

double quantum_value(const GeneralInequality& ineq, const DensityMatrix& rho,
                     const ObservableSet& obs) {
  double s = 0.0;
  for (const auto& term : expanded_terms(ineq)) s += term.coefficient * correlation(rho, obs, term.settings);
  return s;
}

std::vector<CorrelationTerm> correlation_terms(const FullCorrelationInequality& ineq,
                                               const DensityMatrix& rho, const ObservableSet& obs) {
  std::vector<CorrelationTerm> terms;
  for (const Settings& x : ineq.support()) terms.push_back({x, ineq.g(x), correlation(rho, obs, x)});
  return terms;
}

}  // namespace bcc
