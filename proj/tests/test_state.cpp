#include "doctest.h"

#include <cmath>

#include "bcc/state.hpp"

using namespace bcc;

TEST_CASE("state is a valid density matrix") {
  const DensityMatrix rho = build_vb_state();
  CHECK(std::abs(trace(rho.matrix()) - 1.0) <= 1e-9);
  CHECK(hermitian_eigenvalues(rho.matrix()).front() >= -1e-6);
  // Real amplitudes make rho exactly symmetric.
  CHECK(adjoint(rho.matrix()) == rho.matrix());
}

TEST_CASE("state diagonal entry <000|rho|000>") {
  const auto& spec = vb_mixture_spec();
  // Two-term arithmetic from the transcribed constants, before normalization.
  const double raw = spec.weights[0] * 0.183013 * 0.183013 + spec.weights[3] * 0.933013 * 0.933013;
  CHECK(std::abs(raw - 0.34070) < 1e-5);
  const double entry = build_vb_state().matrix()(0, 0).real();
  CHECK(std::abs(entry - raw) < 1e-6);
  // Value from an independent numpy construction of the normalized mixture.
  CHECK(std::abs(entry - 0.34069776456174133) < 1e-12);
}

TEST_CASE("state construction is deterministic") {
  CHECK(build_vb_state().matrix() == build_vb_state().matrix());
}

TEST_CASE("transcribed constants pass their transcription checks") {
  const auto& spec = vb_mixture_spec();
  double total = 0.0;
  for (double w : spec.weights) total += w;
  CHECK(std::abs(total - 1.0000009) < 1e-12);
  for (const auto& c : spec.components) {
    double n2 = 0.0;
    for (double a : c.amplitudes) n2 += a * a;
    CHECK(std::abs(std::sqrt(n2) - 1.0) <= 1e-4);
  }
}

TEST_CASE("permutation operators") {
  CHECK(permutation_operator({0, 1, 2}) == ComplexMatrix::identity(8));

  const ComplexMatrix swap12 = permutation_operator({1, 0, 2});
  CHECK(swap12(5, 3) == Complex(1.0));  // |011> -> |101>
  CHECK(std::abs(trace(swap12) - 4.0) == 0.0);

  for (const auto& perm : party_permutations()) {
    const ComplexMatrix p = permutation_operator(perm);
    CHECK(matmul(p, adjoint(p)) == ComplexMatrix::identity(8));
  }
  // Cyclic shift: |100> has party 1 set; output position k holds party perm[k].
  const ComplexMatrix cyc = permutation_operator({1, 2, 0});
  CHECK(cyc(0b001, 0b100) == Complex(1.0));

  CHECK_THROWS_AS(permutation_operator({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("state is symmetric under swapping parties 1 and 2") {
  const ComplexMatrix& rho = build_vb_state().matrix();
  const ComplexMatrix p = permutation_operator({1, 0, 2});
  CHECK(max_abs_diff(matmul(matmul(p, rho), adjoint(p)), rho) <= 1e-6);
}

TEST_CASE("validate_state on the built-in state") {
  const StateReport r = validate_state(build_vb_state());
  CHECK(r.trace_deviation <= 1e-9);
  CHECK(r.hermiticity_deviation == 0.0);
  CHECK(r.min_eigenvalue >= -1e-6);
  CHECK(r.pt_invariance_deviation <= 1e-6);
  for (double e : r.pt_min_eigenvalues) CHECK(e >= -1e-6);
  for (double d : r.permutation_symmetry_deviation) CHECK(d <= 1e-5);
  CHECK(r.permutation_symmetry_deviation[0] == 0.0);
}

TEST_CASE("validate_state on the maximally mixed state") {
  const StateReport r = validate_state(DensityMatrix::maximally_mixed());
  CHECK(r.trace_deviation <= 1e-12);
  CHECK(r.hermiticity_deviation <= 1e-12);
  CHECK(std::abs(r.min_eigenvalue - 0.125) < 1e-12);
  CHECK(r.pt_invariance_deviation <= 1e-12);
  CHECK(r.max_permutation_deviation() <= 1e-12);
  for (double e : r.pt_min_eigenvalues) CHECK(std::abs(e - 0.125) < 1e-12);
}

TEST_CASE("validate_state detects an NPT state") {
  // GHZ state: PPT fails on every cut, minimum PT eigenvalue -1/2.
  std::vector<Complex> ghz(8);
  ghz[0] = ghz[7] = 1.0;
  const StateReport r = validate_state(DensityMatrix(outer(Ket(ghz))));
  for (double e : r.pt_min_eigenvalues) CHECK(std::abs(e + 0.5) < 1e-12);
  CHECK(std::abs(r.pt_invariance_deviation - 0.5) < 1e-12);
}

TEST_CASE("density matrix invariants are enforced") {
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(8)), std::domain_error);  // trace 8
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::identity(4)), DimensionError);
  std::array<double, 8> d{1.5, -0.5, 0, 0, 0, 0, 0, 0};
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix::diagonal(d)), std::domain_error);
}
