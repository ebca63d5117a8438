// The three-qubit bound entangled state shared by the parties, and the
// numerical certificates (positivity, permutation symmetry, PPT) it carries.
//
// Basis convention: party 1 is the most significant qubit, so basis index
// b = 4*b1 + 2*b2 + b3 labels the ket |b1 b2 b3>.

#pragma once

#include <array>
#include <string_view>

#include "bcc/linalg.hpp"

namespace bcc {

inline constexpr std::size_t kParties = 3;
inline constexpr std::size_t kStateDim = 8;

struct PureStateSpec {
  std::string_view label;
  std::array<double, kStateDim> amplitudes;  // |000>, |001>, ..., |111>
};

struct MixtureSpec {
  std::array<double, 4> weights;
  std::array<PureStateSpec, 4> components;
};

/// Six-decimal weights and amplitudes of the Vertesi-Brunner state.
const MixtureSpec& vb_mixture_spec();

inline constexpr double kStateTraceTolerance = 1e-9;
inline constexpr double kMinEigenvalueTolerance = 1e-6;

/// 8x8 positive unit-trace matrix. The constructor enforces hermiticity
/// (1e-9), unit trace (1e-9) and min eigenvalue >= -1e-6, throwing
/// std::domain_error otherwise.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix maximally_mixed();

  const ComplexMatrix& matrix() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

/// rho = sum_i p_i |psi_i><psi_i| with weights rescaled to sum 1 and each
/// ket renormalized. Deterministic: repeated calls are bit-identical.
DensityMatrix build_vb_state();

/// Party permutation: perm[k] (0-based) is the input party whose qubit ends
/// up in output position k. The operator maps |b_1 b_2 b_3> to
/// |b_perm[0] b_perm[1] b_perm[2]>. Throws std::invalid_argument when perm is
/// not a permutation of {0, 1, 2}.
ComplexMatrix permutation_operator(const std::array<int, 3>& perm);

/// All six permutations of {0, 1, 2}, identity first.
const std::array<std::array<int, 3>, 6>& party_permutations();

struct StateReport {
  double trace_deviation = 0.0;
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  /// max |P rho P^dagger - rho| for each permutation of party_permutations().
  std::array<double, 6> permutation_symmetry_deviation{};
  /// max |rho^{T_3} - rho|
  double pt_invariance_deviation = 0.0;
  /// minimum eigenvalue of rho^{T_k}, k = 1, 2, 3
  std::array<double, 3> pt_min_eigenvalues{};

  double max_permutation_deviation() const;
};

StateReport validate_state(const DensityMatrix& rho);

}  // namespace bcc
