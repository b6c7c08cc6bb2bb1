#pragma once

// Dense matrices over an ihlab field, and the elimination routines built on
// them.  Vectors are rows: a matrix M acts as x -> x M.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "ihlab/errors.hpp"
#include "ihlab/field.hpp"

namespace ihlab {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  void append_row(std::span<const T> r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw InputError("append_row: width mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  void truncate_rows(std::size_t n) {
    rows_ = std::min(rows_, n);
    data_.resize(rows_ * cols_);
  }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class F>
using MatrixOver = Matrix<typename F::Scalar>;

template <class F>
using VectorOver = std::vector<typename F::Scalar>;

template <class F>
MatrixOver<F> identity(const F& f, std::size_t n) {
  MatrixOver<F> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

template <class F>
bool is_zero(const F& f, const MatrixOver<F>& m) {
  return std::all_of(m.data().begin(), m.data().end(), [&](const auto& x) { return f.is_zero(x); });
}

template <class F>
MatrixOver<F> transpose(const MatrixOver<F>& m) {
  MatrixOver<F> t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

template <class F>
MatrixOver<F> add(const F& f, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("add: shape mismatch");
  MatrixOver<F> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = f.add(a.data()[k], b.data()[k]);
  return c;
}

template <class F>
MatrixOver<F> subtract(const F& f, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("subtract: shape mismatch");
  MatrixOver<F> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = f.sub(a.data()[k], b.data()[k]);
  return c;
}

template <class F>
MatrixOver<F> scale(const F& f, const typename F::Scalar& s, const MatrixOver<F>& a) {
  MatrixOver<F> c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) c.data()[k] = f.mul(s, a.data()[k]);
  return c;
}

/// a += s * b
template <class F>
void add_scaled(const F& f, MatrixOver<F>& a, const typename F::Scalar& s, const MatrixOver<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("add_scaled: shape mismatch");
  if (f.is_zero(s)) return;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    if (!f.is_zero(b.data()[k])) a.data()[k] = f.add(a.data()[k], f.mul(s, b.data()[k]));
}

/// Product a * b.  Zero entries of a are skipped; over the prime field the
/// inner sums are accumulated unreduced in 128 bits.
template <class F>
MatrixOver<F> multiply(const F& f, const MatrixOver<F>& a, const MatrixOver<F>& b) {
  if (a.cols() != b.rows())
    throw InputError("multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  MatrixOver<F> c(a.rows(), b.cols());
  if constexpr (std::is_same_v<F, PrimeField>) {
    std::vector<unsigned __int128> acc(b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const std::uint64_t x = a(i, k);
        if (x == 0) continue;
        const std::uint64_t* brow = b.row(k).data();
        for (std::size_t j = 0; j < b.cols(); ++j)
          acc[j] += static_cast<unsigned __int128>(x) * brow[j];
      }
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.reduce(acc[j]);
    }
  } else {
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const auto& x = a(i, k);
        if (f.is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (!f.is_zero(b(k, j))) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
      }
  }
  return c;
}

/// Row vector times matrix.
template <class F>
VectorOver<F> vec_mat(const F& f, std::span<const typename F::Scalar> v, const MatrixOver<F>& m) {
  if (v.size() != m.rows()) throw InputError("vec_mat: length mismatch");
  VectorOver<F> out(m.cols(), f.zero());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (f.is_zero(v[k])) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!f.is_zero(m(k, j))) out[j] = f.add(out[j], f.mul(v[k], m(k, j)));
  }
  return out;
}

/// Reduces m in place to reduced row-echelon form, drops zero rows, and
/// returns the pivot columns (one per remaining row, increasing).
template <class F>
std::vector<std::size_t> rref(const F& f, MatrixOver<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && f.is_zero(m(sel, c))) ++sel;
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(sel, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < cols; ++j)
      if (!f.is_zero(m(r, j))) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!f.is_zero(m(r, j))) f.sub_mul(m(i, j), factor, m(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  m.truncate_rows(r);
  return pivots;
}

template <class F>
std::size_t rank(const F& f, MatrixOver<F> m) {
  return rref(f, m).size();
}

/// Basis (as rows, RREF) of the left kernel {v : v m = 0}.
template <class F>
MatrixOver<F> left_kernel(const F& f, const MatrixOver<F>& m) {
  // v m = 0  <=>  m^T v^T = 0: right null space of m^T
  MatrixOver<F> t = transpose<F>(m);
  auto pivots = rref(f, t);
  const std::size_t n = m.rows();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  MatrixOver<F> basis(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    VectorOver<F> v(n, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = f.neg(t(r, free));
    basis.append_row(v);
  }
  if (basis.rows() == 0) return MatrixOver<F>(0, n);
  rref(f, basis);
  return basis;
}

/// Inverse of a square matrix.  Throws PreconditionError when singular.
template <class F>
MatrixOver<F> inverse(const F& f, const MatrixOver<F>& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("inverse: matrix not square");
  MatrixOver<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto pivots = rref(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw PreconditionError("inverse: singular matrix");
  MatrixOver<F> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

template <class F>
MatrixOver<F> convert_matrix(const F& f, const Matrix<mpq_class>& m) {
  MatrixOver<F> out(m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) out.data()[k] = f.from_rational(m.data()[k]);
  return out;
}

template <class F>
VectorOver<F> convert_vector(const F& f, std::span<const mpq_class> v) {
  VectorOver<F> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(f.from_rational(x));
  return out;
}

}  // namespace ihlab
