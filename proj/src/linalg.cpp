#include "entconv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entconv {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw PreconditionError("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<cplx> entries)
    : ComplexMatrix(rows, cols) {
  if (entries.size() != rows * cols)
    throw PreconditionError("entry count does not match rows*cols");
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

cplx ComplexMatrix::trace() const {
  if (!square()) throw PreconditionError("trace of a non-square matrix");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw PreconditionError("shape mismatch in *");
  ComplexMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) throw PreconditionError("shape mismatch in matrix-vector *");
  std::vector<cplx> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return std::sqrt(s);
}

double max_abs(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.data()) s = std::max(s, std::abs(z));
  return s;
}

double hermitian_residual(const ComplexMatrix& m) {
  if (!m.square()) return INFINITY;
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw PreconditionError("shape mismatch in trace_product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) s += (a(i, k) * b(k, i)).real();
  return s;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  ComplexMatrix r(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) r(i * rb + k, j * cb + l) = aij * b(k, l);
    }
  return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a,
                                std::size_t dim_b) {
  const std::size_t n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n)
    throw PreconditionError("partial_transpose: dimension mismatch");
  ComplexMatrix r(n, n);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j)
      for (std::size_t k = 0; k < dim_b; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          r(i * dim_b + k, j * dim_b + l) = m(i * dim_b + l, j * dim_b + k);
  return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4)
    throw PreconditionError("two-qubit partial_transpose requires a 4x4 matrix");
  return partial_transpose(m, 2, 2);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a,
                            std::size_t dim_b, Subsystem traced) {
  const std::size_t n = dim_a * dim_b;
  if (m.rows() != n || m.cols() != n)
    throw PreconditionError("partial_trace: dimension mismatch");
  if (traced == Subsystem::output) {
    ComplexMatrix r(dim_a, dim_a);
    for (std::size_t i = 0; i < dim_a; ++i)
      for (std::size_t j = 0; j < dim_a; ++j)
        for (std::size_t k = 0; k < dim_b; ++k) r(i, j) += m(i * dim_b + k, j * dim_b + k);
    return r;
  }
  ComplexMatrix r(dim_b, dim_b);
  for (std::size_t k = 0; k < dim_b; ++k)
    for (std::size_t l = 0; l < dim_b; ++l)
      for (std::size_t i = 0; i < dim_a; ++i) r(k, l) += m(i * dim_b + k, i * dim_b + l);
  return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced) {
  if (m.rows() != 16 || m.cols() != 16)
    throw PreconditionError("partial_trace requires a 16x16 matrix");
  return partial_trace(m, 4, 4, traced);
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  if (!m.square()) throw PreconditionError("eig_hermitian: matrix is not square");
  const double scale = std::max(1.0, max_abs(m));
  if (hermitian_residual(m) > 1e-10 * scale)
    throw PreconditionError("eig_hermitian: matrix is not Hermitian");

  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  double total = 0.0;
  for (const auto& z : a.data()) total += std::norm(z);
  const double eps2 = 1e-30 * std::max(total, 1e-300);

  // Each rotation: a_pq = r e^{i phi}. With D = diag(1, e^{-i phi}) the 2x2
  // block D^dag A D is real symmetric and a real Jacobi rotation R zeroes it.
  // The applied unitary on columns (p,q) is U = D R.
  for (int sweep = 0; sweep < 64; ++sweep) {
    if (off_diagonal_norm2(a) <= eps2) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        if (r < 1e-300 || (std::abs(app) + r == std::abs(app) &&
                           std::abs(aqq) + r == std::abs(aqq) && sweep > 4)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const cplx phase = apq / r;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U = [[c, s], [-s conj(phase), c conj(phase)]]
        const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);

        // A <- U^dag A U. Off-block entries only see the column update and
        // Hermiticity mirrors them into rows p, q; the 2x2 block becomes
        // diag(app - t r, aqq + t r).
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p), akq = a(k, q);
          const cplx nkp = akp * c + akq * uqp;
          const cplx nkq = akp * s + akq * uqq;
          a(k, p) = nkp;
          a(k, q) = nkq;
          a(p, k) = std::conj(nkp);
          a(q, k) = std::conj(nkq);
        }
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * uqp;
          v(k, q) = vkp * s + vkq * uqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() > a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = v(k, order[c]);
  }
  return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& m) {
  return eig_hermitian(m).values;
}

double min_eigenvalue(const ComplexMatrix& m) { return eig_hermitian(m).values.back(); }

ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<double(double)>& f) {
  HermitianEigen e = eig_hermitian(m);
  for (auto& w : e.values) w = f(w);
  return reconstruct(e);
}

ComplexMatrix reconstruct(const HermitianEigen& e) {
  const std::size_t n = e.values.size();
  ComplexMatrix r(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const double w = e.values[c];
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = e.vectors(i, c) * w;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vi * std::conj(e.vectors(j, c));
    }
  }
  return r;
}

ComplexMatrix unitary_exp(const ComplexMatrix& h) {
  const HermitianEigen e = eig_hermitian(h);
  const std::size_t n = e.values.size();
  ComplexMatrix r(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const cplx ph = std::polar(1.0, e.values[c]);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = e.vectors(i, c) * ph;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vi * std::conj(e.vectors(j, c));
    }
  }
  return r;
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix e(n, n);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      ComplexMatrix s(n, n);
      s(i, j) = h;
      s(j, i) = h;
      basis.push_back(std::move(s));
      ComplexMatrix a(n, n);
      a(i, j) = cplx(0.0, h);
      a(j, i) = cplx(0.0, -h);
      basis.push_back(std::move(a));
    }
  return basis;
}

std::vector<double> to_real_coords(const ComplexMatrix& h) {
  if (!h.square()) throw PreconditionError("to_real_coords: matrix is not square");
  const std::size_t n = h.rows();
  const double r2 = std::sqrt(2.0);
  std::vector<double> x;
  x.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) x.push_back(h(i, i).real());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      x.push_back(r2 * h(i, j).real());
      x.push_back(r2 * h(i, j).imag());
    }
  return x;
}

ComplexMatrix from_real_coords(std::span<const double> x, std::size_t n) {
  if (x.size() != n * n) throw PreconditionError("from_real_coords: size mismatch");
  const double h = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(n, n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) m(i, i) = x[k++];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx z(h * x[k], h * x[k + 1]);
      k += 2;
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  return m;
}

}  // namespace entconv
