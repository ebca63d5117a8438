#include "bcc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace bcc {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                         " entries, got " + std::to_string(data_.size()));
  }
  if (!std::all_of(data_.begin(), data_.end(), finite)) {
    throw std::domain_error("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionError("ComplexMatrix: rows must form a square matrix");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  if (!std::all_of(data_.begin(), data_.end(), finite)) {
    throw std::domain_error("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator+=");
  std::transform(data_.begin(), data_.end(), other.data_.begin(), data_.begin(), std::plus<>{});
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "operator-=");
  std::transform(data_.begin(), data_.end(), other.data_.begin(), data_.begin(), std::minus<>{});
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

Ket::Ket(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  double norm2 = 0.0;
  for (const auto& z : amplitudes_) {
    if (!finite(z)) throw std::domain_error("Ket: non-finite amplitude");
    norm2 += std::norm(z);
  }
  if (norm2 == 0.0) throw std::domain_error("Ket: zero vector cannot be normalized");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& z : amplitudes_) z *= inv;
}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("Ket::basis: index out of range");
  std::vector<Complex> v(dim);
  v[index] = 1.0;
  return Ket(std::move(v));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(j, i) = std::conj(a(i, j));
  return out;
}

Complex trace(const ComplexMatrix& a) {
  Complex sum{};
  for (std::size_t i = 0; i < a.dim(); ++i) sum += a(i, i);
  return sum;
}

ComplexMatrix outer(const Ket& k) {
  const std::size_t n = k.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = k[i] * std::conj(k[j]);
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix kron(std::initializer_list<ComplexMatrix> factors) {
  if (factors.size() == 0) return ComplexMatrix::identity(1);
  auto it = factors.begin();
  ComplexMatrix out = *it++;
  for (; it != factors.end(); ++it) out = kron(out, *it);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t party,
                                std::span<const std::size_t> local_dims) {
  const std::size_t total =
      std::accumulate(local_dims.begin(), local_dims.end(), std::size_t{1}, std::multiplies<>{});
  if (local_dims.empty() || total != m.dim()) {
    throw DimensionError("partial_transpose: local dimensions do not multiply to " +
                         std::to_string(m.dim()));
  }
  if (party < 1 || party > local_dims.size()) {
    throw DimensionError("partial_transpose: party index " + std::to_string(party) +
                         " out of range");
  }
  // Index i = outer * (d * inner_size) + local * inner_size + inner.
  const std::size_t d = local_dims[party - 1];
  const std::size_t inner_size = std::accumulate(local_dims.begin() + static_cast<std::ptrdiff_t>(party),
                                                 local_dims.end(), std::size_t{1}, std::multiplies<>{});
  const auto local_of = [&](std::size_t i) { return (i / inner_size) % d; };
  const auto with_local = [&](std::size_t i, std::size_t local) {
    return i - local_of(i) * inner_size + local * inner_size;
  };

  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      out(with_local(r, local_of(c)), with_local(c, local_of(r))) = m(r, c);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
  return worst;
}

double hermiticity_deviation(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const double dev = hermiticity_deviation(m);
  if (dev > kHermitianTolerance) {
    throw NonHermitianError("hermitian_eigenvalues: max |m - m^dagger| = " + std::to_string(dev));
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = 0.5 * (m + adjoint(m));

  const auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return s;
  };
  double frob2 = 0.0;
  for (const auto& z : a.entries()) frob2 += std::norm(z);
  // Absolute threshold for unit-scale input; relative floor for large entries.
  const double eps = std::numeric_limits<double>::epsilon();
  const double threshold = std::max(1e-20, eps * eps * frob2);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm2() >= threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = std::abs(a(p, q));
        if (apq == 0.0) continue;
        // U = diag(1, w) * [[c, s], [-s, c]] on the (p, q) plane; w removes
        // the phase of a(p, q) so the remaining rotation is real.
        const Complex w = std::conj(a(p, q)) / apq;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        for (std::size_t r = 0; r < n; ++r) {  // a <- a U
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = c * arp - s * w * arq;
          a(r, q) = s * arp + c * w * arq;
        }
        const Complex wc = std::conj(w);
        for (std::size_t r = 0; r < n; ++r) {  // a <- U^dagger a
          const Complex apr = a(p, r);
          const Complex aqr = a(q, r);
          a(p, r) = c * apr - s * wc * aqr;
          a(q, r) = s * apr + c * wc * aqr;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace bcc
