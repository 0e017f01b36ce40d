#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace entconv {

using cplx = std::complex<double>;

// Raised when an operation is handed inputs outside its contract
// (wrong dimension, non-Hermitian matrix, out-of-range parameter, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major complex matrix. Sized for the 4x4 state and 16x16 Choi
// problems; no attempt is made at cache blocking.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols,
                std::initializer_list<cplx> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  // |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const cplx> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    return a += b;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    return a -= b;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> v);

double frobenius_norm(const ComplexMatrix& m);
double max_abs(const ComplexMatrix& m);
// max |M - M^dagger| entry.
double hermitian_residual(const ComplexMatrix& m);
// Re tr(A B) without forming the product.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// entry((i*rB+k),(j*cB+l)) = A(i,j) * B(k,l)
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Transposes the second tensor factor of a (dA*dB)x(dA*dB) matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a,
                                std::size_t dim_b);
// Two-qubit form: entry(2i+k, 2j+l) -> entry(2i+l, 2j+k). Requires 4x4.
ComplexMatrix partial_transpose(const ComplexMatrix& m);

enum class Subsystem { input, output };

// Traces out one factor of a 16x16 matrix on (input (x) output), 4x4 each.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced);
// General bipartite form on (A (x) B).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem traced);

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // columns are eigenvectors
};

// Cyclic complex Jacobi. Throws PreconditionError when M is not square or
// not Hermitian within 1e-10 (relative to max(1, max|M|)).
HermitianEigen eig_hermitian(const ComplexMatrix& m);
std::vector<double> eigvals_hermitian(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);

// V f(diag(w)) V^dagger for a Hermitian input.
ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<double(double)>& f);
ComplexMatrix reconstruct(const HermitianEigen& e);

// exp(i H) for Hermitian H.
ComplexMatrix unitary_exp(const ComplexMatrix& h);

// Orthonormal Hermitian basis of n x n matrices under <A,B> = Re tr(A B):
// n diagonal units, then for each i<j the symmetric and antisymmetric parts
// scaled by 1/sqrt(2). Size n^2.
std::vector<ComplexMatrix> hermitian_basis(std::size_t n);

// Real coordinates of a Hermitian matrix in hermitian_basis(n), and back.
std::vector<double> to_real_coords(const ComplexMatrix& h);
ComplexMatrix from_real_coords(std::span<const double> x, std::size_t n);

}  // namespace entconv
