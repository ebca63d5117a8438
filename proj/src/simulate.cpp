#include "bcc/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

namespace bcc {

namespace {

constexpr double kNegativeDust = 1e-12;
constexpr double kCompletenessTolerance = 1e-9;

ComplexMatrix projector(const ComplexMatrix& observable, int outcome) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return 0.5 * (outcome > 0 ? id + observable : id - observable);
}

struct ShardResult {
  std::uint64_t successes = 0;
};

}  // namespace

std::string_view to_string(Protocol p) { return p == Protocol::classical ? "classical" : "quantum"; }

Protocol parse_protocol(std::string_view name) {
  if (name == "classical") return Protocol::classical;
  if (name == "quantum") return Protocol::quantum;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

void SimulationConfig::validate() const {
  if (shots == 0) throw std::invalid_argument("simulation: shots must be at least 1");
  if (shards == 0) throw std::invalid_argument("simulation: shards must be at least 1");
}

double OutcomeDistribution::correlation() const {
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e += outcome(i, 0) * outcome(i, 1) * outcome(i, 2) * p[i];
  return e;
}

OutcomeDistribution born_distribution(const DensityMatrix& rho, const ObservableSet& obs,
                                      const Settings& x) {
  std::array<std::array<ComplexMatrix, 2>, 3> proj;  // [party][0 -> +1, 1 -> -1]
  for (std::size_t party = 0; party < 3; ++party) {
    const ComplexMatrix& o = obs.observable(party, x[party]);
    proj[party] = {projector(o, +1), projector(o, -1)};
  }

  OutcomeDistribution dist;
  double total = 0.0;
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const ComplexMatrix op = kron({proj[0][(idx >> 2) & 1u], proj[1][(idx >> 1) & 1u], proj[2][idx & 1u]});
    double p = trace(matmul(rho.matrix(), op)).real();
    if (p < -kNegativeDust) {
      throw std::domain_error("born_distribution: negative probability " + std::to_string(p));
    }
    p = std::max(p, 0.0);
    dist.p[idx] = p;
    total += p;
  }
  if (std::abs(total - 1.0) > kCompletenessTolerance) {
    throw std::domain_error("born_distribution: probabilities sum to " + std::to_string(total));
  }
  for (double& p : dist.p) p /= total;
  return dist;
}

GameSetup reference_setup() {
  return GameSetup{homogenize(sliwa5()), build_vb_state(), measurement_observables()};
}

ProtocolTables::ProtocolTables(const GameSetup& setup, std::optional<ClassicalStrategy> strategy) {
  const FullCorrelationInequality& ineq = setup.inequality;
  const InputDistribution q(ineq);
  strategy_ = strategy ? std::move(*strategy) : optimal_classical_strategy(ineq).strategy;

  double acc = 0.0;
  for (std::size_t i = 0; i < q.probabilities().size(); ++i) {
    const double qi = q.probabilities()[i];
    if (qi == 0.0) continue;
    const Settings x = ineq.settings_at(i);
    support_.push_back(x);
    acc += qi;
    input_cdf_.push_back(acc);
    sign_.push_back(ineq.table()[i] > 0 ? 1 : -1);

    const OutcomeDistribution dist = born_distribution(setup.state, setup.observables, x);
    std::array<double, 8> cdf{};
    double c = 0.0;
    for (std::size_t k = 0; k < 8; ++k) cdf[k] = (c += dist.p[k]);
    cdf[7] = 1.0;
    outcome_cdf_.push_back(cdf);
  }
  input_cdf_.back() = 1.0;
}

int ProtocolTables::draw_outcome(std::size_t support_index, std::uint64_t bits) const {
  const auto& cdf = outcome_cdf_[support_index];
  const double u = Xoshiro256StarStar::to_unit(bits);
  return static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

GameInstance ProtocolTables::sample_inputs(Xoshiro256StarStar& rng) const {
  const std::uint64_t bits = rng();
  const double u = Xoshiro256StarStar::to_unit(bits);
  const auto k = static_cast<std::size_t>(std::upper_bound(input_cdf_.begin(), input_cdf_.end(), u) -
                                          input_cdf_.begin());
  return GameInstance{{(bits & 1u) ? -1 : 1, (bits & 2u) ? -1 : 1, (bits & 4u) ? -1 : 1}, support_[k]};
}

bool ProtocolTables::play(Protocol protocol, Xoshiro256StarStar& rng) const {
  const std::uint64_t input_bits = rng();
  const std::uint64_t outcome_bits = rng();

  const double u = Xoshiro256StarStar::to_unit(input_bits);
  const auto k = static_cast<std::size_t>(std::upper_bound(input_cdf_.begin(), input_cdf_.end(), u) -
                                          input_cdf_.begin());
  const Settings& x = support_[k];
  const std::array<int, 3> y{(input_bits & 1u) ? -1 : 1, (input_bits & 2u) ? -1 : 1,
                             (input_bits & 4u) ? -1 : 1};

  std::array<int, 3> a{};
  if (protocol == Protocol::quantum) {
    const auto outcome = static_cast<std::size_t>(draw_outcome(k, outcome_bits));
    for (std::size_t p = 0; p < 3; ++p) a[p] = OutcomeDistribution::outcome(outcome, p);
  } else {
    for (std::size_t p = 0; p < 3; ++p) a[p] = strategy_(p, x[p]);
  }

  // Each party broadcasts s_i = y_i a_i; the guess is the product.
  const int guess = (y[0] * a[0]) * (y[1] * a[1]) * (y[2] * a[2]);
  const int target = y[0] * y[1] * y[2] * sign_[k];
  return guess == target;
}

GameInstance sample_inputs(Xoshiro256StarStar& rng, const ProtocolTables& tables) {
  return tables.sample_inputs(rng);
}

SimulationReport run_protocol(const SimulationConfig& config, const GameSetup& setup,
                              std::optional<ClassicalStrategy> strategy) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  const OptimalClassical optimum = optimal_classical_strategy(setup.inequality);
  const double p_classical =
      optimum.success_exact ? optimum.success_exact->value() : optimum.success;
  const ProtocolTables tables(setup, strategy);

  std::vector<ShardResult> results(config.shards);
  {
    std::vector<std::jthread> workers;
    workers.reserve(config.shards);
    for (unsigned shard = 0; shard < config.shards; ++shard) {
      const std::uint64_t count =
          config.shots / config.shards + (shard < config.shots % config.shards ? 1 : 0);
      workers.emplace_back([&, shard, count] {
        Xoshiro256StarStar rng = Xoshiro256StarStar::substream(config.seed, shard);
        std::uint64_t wins = 0;
        for (std::uint64_t i = 0; i < count; ++i) wins += tables.play(config.protocol, rng) ? 1 : 0;
        results[shard].successes = wins;
      });
    }
  }

  SimulationReport report;
  report.protocol = config.protocol;
  report.shots = config.shots;
  report.seed = config.seed;
  report.shards = config.shards;
  for (const auto& r : results) report.successes += r.successes;
  report.p_hat = static_cast<double>(report.successes) / static_cast<double>(report.shots);
  report.standard_error =
      std::sqrt(report.p_hat * (1.0 - report.p_hat) / static_cast<double>(report.shots));
  report.p_classical_exact = p_classical;
  if (config.protocol == Protocol::quantum) {
    report.p_exact = exact_success_quantum(
        quantum_value(setup.inequality, setup.state, setup.observables), setup.inequality.sum_abs());
  } else {
    report.p_exact = strategy ? success_probability(setup.inequality, tables.classical_strategy())
                              : p_classical;
  }
  if (report.standard_error > 0.0) {
    report.z_vs_classical = (report.p_hat - p_classical) / report.standard_error;
  }
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SimulationReport run_protocol(const SimulationConfig& config) {
  return run_protocol(config, reference_setup());
}

GapReport gap_experiment(std::uint64_t shots, std::uint64_t seed, unsigned shards) {
  const GameSetup setup = reference_setup();
  const OptimalClassical optimum = optimal_classical_strategy(setup.inequality);

  GapReport gap;
  gap.quantum = run_protocol({shots, seed, Protocol::quantum, shards}, setup);
  gap.p_classical_exact = optimum.success_exact.value();
  gap.p_classical = gap.p_classical_exact.value();
  gap.p_quantum_exact = gap.quantum.p_exact;
  gap.gap_exact = gap.p_quantum_exact - gap.p_classical;
  gap.z_score = gap.quantum.standard_error > 0.0
                    ? (gap.quantum.p_hat - gap.p_classical) / gap.quantum.standard_error
                    : 0.0;
  const double variance = gap.p_classical * (1.0 - gap.p_classical);
  gap.required_shots = 16.0 * variance / (gap.gap_exact * gap.gap_exact);
  gap.underpowered = std::sqrt(variance / static_cast<double>(shots)) >= gap.gap_exact / 4.0;
  return gap;
}

}  // namespace bcc
