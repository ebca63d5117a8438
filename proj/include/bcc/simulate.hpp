// Monte Carlo execution of the broadcast game.
//
// Every shot consumes exactly two 64-bit draws from its shard's stream: the
// first supplies the three y bits (low bits) and the inverse-CDF draw for x
// (top 53 bits), the second the measurement-outcome draw. The classical
// protocol draws and discards the second word so both protocols see the same
// inputs for the same (seed, shards, shots).

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcc/bell.hpp"
#include "bcc/ccp.hpp"
#include "bcc/rng.hpp"
#include "bcc/state.hpp"

namespace bcc {

enum class Protocol { classical, quantum };

std::string_view to_string(Protocol p);
/// Throws std::invalid_argument for anything but "classical" / "quantum".
Protocol parse_protocol(std::string_view name);

struct SimulationConfig {
  std::uint64_t shots = 1'000'000;
  std::uint64_t seed = 0;
  Protocol protocol = Protocol::quantum;
  unsigned shards = 1;

  /// Throws std::invalid_argument for zero shots or zero shards.
  void validate() const;
};

/// Joint probabilities of the eight outcome triples. Index bit (2 - party)
/// is set when that party's outcome is -1, so index 0 is (+1, +1, +1).
struct OutcomeDistribution {
  std::array<double, 8> p{};

  static int outcome(std::size_t index, std::size_t party) {
    return ((index >> (2 - party)) & 1u) ? -1 : 1;
  }
  /// sum_a a1 a2 a3 P(a)
  double correlation() const;
};

/// P(a | x) = tr(rho Pi^{x1}_{a1} (x) Pi^{x2}_{a2} (x) Pi^{x3}_{a3}) with
/// Pi_{+-} = (I +- O) / 2. Entries above -1e-12 are clamped to zero and the
/// distribution renormalized; anything more negative, or a total off by more
/// than 1e-9, throws std::domain_error.
OutcomeDistribution born_distribution(const DensityMatrix& rho, const ObservableSet& obs,
                                      const Settings& x);

/// Inequality, shared state and measurements of one game.
struct GameSetup {
  FullCorrelationInequality inequality;
  DensityMatrix state;
  ObservableSet observables;
};

/// Homogenized Sliwa #5, the Vertesi-Brunner state and the fixed measurement observables.
GameSetup reference_setup();

/// Immutable per-game lookup tables shared by all shards.
class ProtocolTables {
 public:
  /// Classical play uses `strategy` when given, otherwise the optimal
  /// classical strategy of the inequality.
  explicit ProtocolTables(const GameSetup& setup,
                          std::optional<ClassicalStrategy> strategy = std::nullopt);

  GameInstance sample_inputs(Xoshiro256StarStar& rng) const;
  /// One shot; true when the broadcast guess matches f.
  bool play(Protocol protocol, Xoshiro256StarStar& rng) const;

  const ClassicalStrategy& classical_strategy() const noexcept { return strategy_; }
  const std::vector<Settings>& support() const noexcept { return support_; }

 private:
  int draw_outcome(std::size_t support_index, std::uint64_t bits) const;

  std::vector<Settings> support_;      // inputs with q > 0
  std::vector<double> input_cdf_;      // over support_, last entry 1
  std::vector<int> sign_;              // sign(g) per support entry
  std::vector<std::array<double, 8>> outcome_cdf_;
  ClassicalStrategy strategy_;
};

/// x from q by inverse CDF, each y_i a fair +-1 coin.
GameInstance sample_inputs(Xoshiro256StarStar& rng, const ProtocolTables& tables);

struct SimulationReport {
  Protocol protocol = Protocol::quantum;
  std::uint64_t shots = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  double standard_error = 0.0;  // sqrt(p_hat (1 - p_hat) / shots)
  std::uint64_t seed = 0;
  unsigned shards = 1;
  double p_exact = 0.0;              // exact success probability of this protocol
  double p_classical_exact = 0.0;
  std::optional<double> z_vs_classical;  // (p_hat - P_C) / stderr, absent when stderr = 0
  double wall_time_seconds = 0.0;
};

/// Deterministic in (seed, shards, shots, protocol) apart from wall time.
/// Shards run concurrently on their own substreams.
SimulationReport run_protocol(const SimulationConfig& config, const GameSetup& setup,
                              std::optional<ClassicalStrategy> strategy = std::nullopt);
SimulationReport run_protocol(const SimulationConfig& config);

struct GapReport {
  SimulationReport quantum;
  Rational p_classical_exact;
  double p_classical = 0.0;
  double p_quantum_exact = 0.0;
  double gap_exact = 0.0;   // P_Q - P_C
  double z_score = 0.0;     // (p_hat_Q - P_C) / stderr
  double required_shots = 0.0;  // smallest shots with sqrt(P_C(1-P_C)/shots) < gap / 4
  bool underpowered = false;
};

/// Simulates the quantum protocol and compares it with the exact classical
/// optimum.
GapReport gap_experiment(std::uint64_t shots, std::uint64_t seed, unsigned shards = 1);

}  // namespace bcc
