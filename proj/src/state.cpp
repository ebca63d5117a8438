#include "bcc/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bcc {

namespace {

constexpr double kA2 = 0.344106;
constexpr double kB2 = 0.219677;

constexpr MixtureSpec kVbMixture{
    .weights = {0.0636039, 0.273734, 0.273734, 0.388929},
    .components = {{
        {"psi1", {0.183013, -0.408248, -0.408248, 0.0, -0.408248, 0.0, 0.0, 0.683013}},
        {"psi2", {0.0, -kA2, 2.0 * kA2, kB2, -kA2, -2.0 * kB2, kB2, 0.0}},
        {"psi3", {0.0, -0.596008, 0.0, -0.380492, 0.596008, 0.0, 0.380492, 0.0}},
        {"psi4", {-0.933013, 0.0, 0.0, 0.149429, 0.0, 0.149429, 0.149429, 0.25}},
    }},
};

constexpr double abs_c(double v) { return v < 0 ? -v : v; }

constexpr double norm2(const PureStateSpec& s) {
  double n = 0.0;
  for (double a : s.amplitudes) n += a * a;
  return n;
}

constexpr double weight_sum(const MixtureSpec& m) {
  double t = 0.0;
  for (double w : m.weights) t += w;
  return t;
}

// Transcription checks: |norm - 1| <= 1e-4 (tested on norm^2 with 2e-4) and
// weights summing to 1 within 1e-5.
static_assert(abs_c(norm2(kVbMixture.components[0]) - 1.0) <= 2e-4);
static_assert(abs_c(norm2(kVbMixture.components[1]) - 1.0) <= 2e-4);
static_assert(abs_c(norm2(kVbMixture.components[2]) - 1.0) <= 2e-4);
static_assert(abs_c(norm2(kVbMixture.components[3]) - 1.0) <= 2e-4);
static_assert(abs_c(weight_sum(kVbMixture) - 1.0) <= 1e-5);

double min_eigenvalue(const ComplexMatrix& m) { return hermitian_eigenvalues(m).front(); }

}  // namespace

const MixtureSpec& vb_mixture_spec() { return kVbMixture; }

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.dim() != kStateDim) {
    throw DimensionError("DensityMatrix: expected dimension 8, got " + std::to_string(m_.dim()));
  }
  if (const double h = hermiticity_deviation(m_); h > kHermitianTolerance) {
    throw std::domain_error("DensityMatrix: not Hermitian (deviation " + std::to_string(h) + ")");
  }
  if (const double t = std::abs(trace(m_) - 1.0); t > kStateTraceTolerance) {
    throw std::domain_error("DensityMatrix: trace deviates from 1 by " + std::to_string(t));
  }
  if (const double e = min_eigenvalue(m_); e < -kMinEigenvalueTolerance) {
    throw std::domain_error("DensityMatrix: negative eigenvalue " + std::to_string(e));
  }
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix((1.0 / static_cast<double>(kStateDim)) * ComplexMatrix::identity(kStateDim));
}

DensityMatrix build_vb_state() {
  const MixtureSpec& spec = vb_mixture_spec();
  const double total = weight_sum(spec);
  ComplexMatrix rho(kStateDim);
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    const auto& amps = spec.components[i].amplitudes;
    const Ket psi(std::vector<Complex>(amps.begin(), amps.end()));
    rho += (spec.weights[i] / total) * outer(psi);
  }
  return DensityMatrix(std::move(rho));
}

const std::array<std::array<int, 3>, 6>& party_permutations() {
  static constexpr std::array<std::array<int, 3>, 6> kPerms{{
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1},
  }};
  return kPerms;
}

ComplexMatrix permutation_operator(const std::array<int, 3>& perm) {
  std::array<int, 3> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{0, 1, 2}) {
    throw std::invalid_argument("permutation_operator: not a permutation of {0,1,2}");
  }
  const auto bit = [](std::size_t index, int party) { return (index >> (2 - party)) & 1u; };
  ComplexMatrix p(kStateDim);
  for (std::size_t in = 0; in < kStateDim; ++in) {
    std::size_t out = 0;
    for (int k = 0; k < 3; ++k) out |= bit(in, perm[static_cast<std::size_t>(k)]) << (2 - k);
    p(out, in) = 1.0;
  }
  return p;
}

double StateReport::max_permutation_deviation() const {
  return *std::max_element(permutation_symmetry_deviation.begin(),
                           permutation_symmetry_deviation.end());
}

StateReport validate_state(const DensityMatrix& rho) {
  static constexpr std::array<std::size_t, 3> kDims{2, 2, 2};
  const ComplexMatrix& m = rho.matrix();

  StateReport report;
  report.trace_deviation = std::abs(trace(m) - 1.0);
  report.hermiticity_deviation = hermiticity_deviation(m);
  report.min_eigenvalue = min_eigenvalue(m);

  const auto& perms = party_permutations();
  for (std::size_t i = 0; i < perms.size(); ++i) {
    const ComplexMatrix p = permutation_operator(perms[i]);
    report.permutation_symmetry_deviation[i] = max_abs_diff(matmul(matmul(p, m), adjoint(p)), m);
  }

  for (std::size_t party = 1; party <= 3; ++party) {
    const ComplexMatrix pt = partial_transpose(m, party, kDims);
    report.pt_min_eigenvalues[party - 1] = min_eigenvalue(pt);
    if (party == 3) report.pt_invariance_deviation = max_abs_diff(pt, m);
  }
  return report;
}

}  // namespace bcc
