// Dense complex linear algebra for few-qubit states and observables.
//
// Everything here works on small square matrices (a three-qubit density
// matrix is 8x8), so storage is a flat row-major std::vector and all
// algorithms are the textbook O(n^3) ones.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcc {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

class NonHermitianError : public std::domain_error {
 public:
  explicit NonHermitianError(const std::string& what) : std::domain_error(what) {}
};

/// Square complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of dim*dim row-major entries. Throws DimensionError on a
  /// size mismatch and std::domain_error on non-finite entries.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  /// Row-list construction, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

/// State vector, normalized to unit norm when constructed.
class Ket {
 public:
  /// Throws std::domain_error for a zero or non-finite vector.
  explicit Ket(std::vector<Complex> amplitudes);

  /// Computational basis state |index> in a space of dimension dim.
  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

 private:
  std::vector<Complex> amplitudes_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
Complex trace(const ComplexMatrix& a);
/// |k><k|
ComplexMatrix outer(const Ket& k);

/// Kronecker product; entry (i*b.dim + k, j*b.dim + l) is a(i,j) * b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors);

/// Transposes tensor factor `party` (1-based, party 1 is the most significant
/// index) of a matrix on a space with the given local dimensions.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t party,
                                std::span<const std::size_t> local_dims);

/// Largest entry-wise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// Largest entry-wise modulus of m - m^dagger.
double hermiticity_deviation(const ComplexMatrix& m);

inline constexpr double kHermitianTolerance = 1e-9;

/// All eigenvalues of a Hermitian matrix, ascending. Cyclic complex Jacobi
/// rotations until the off-diagonal squared norm drops below 1e-20.
/// Throws NonHermitianError if max|m - m^dagger| exceeds kHermitianTolerance.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace bcc
