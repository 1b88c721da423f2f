#include "dlim/integer_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dlim {

namespace {
int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: width mismatch");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<Vector>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: height mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Vector IntMatrix::row(std::size_t i) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vector IntMatrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::stacked(const IntMatrix& below) const {
  if (rows_ == 0) return below;
  if (below.rows_ == 0) return *this;
  if (below.cols_ != cols_) throw std::invalid_argument("IntMatrix::stacked: width mismatch");
  IntMatrix m(rows_ + below.rows_, cols_);
  std::copy(data_.begin(), data_.end(), m.data_.begin());
  std::copy(below.data_.begin(), below.data_.end(),
            m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return m;
}

IntMatrix IntMatrix::joined(const IntMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("IntMatrix::joined: height mismatch");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

IntMatrix IntMatrix::submatrix(std::size_t row0, std::size_t col0, std::size_t nrows,
                               std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_)
    throw std::out_of_range("IntMatrix::submatrix out of range");
  IntMatrix m(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) m(i, j) = (*this)(row0 + i, col0 + j);
  return m;
}

Vector IntMatrix::apply(std::span<const Integer> x) const {
  if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
  Vector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Integer acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
    y[i] = std::move(acc);
  }
  return y;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("IntMatrix::determinant: not square");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix a = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = std::move(v);
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix product: dimension mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("IntMatrix sum: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("IntMatrix difference: dimension mismatch");
  IntMatrix c = a;
  for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
  return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<std::vector<Integer>> IntMatrix::to_rows() const {
  std::vector<std::vector<Integer>> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

Integer mod_floor(const Integer& value, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
  if (r < 0) r += abs(modulus);
  return r;
}

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Tracks the four matrices of a Smith reduction in lockstep.
class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : d_(m), u_(IntMatrix::identity(m.rows())), v_(IntMatrix::identity(m.cols())),
        v_inv_(IntMatrix::identity(m.cols())) {}

  void run() {
    const std::size_t limit = std::min(d_.rows(), d_.cols());
    for (std::size_t t = 0; t < limit; ++t) {
      if (!bring_smallest_to(t)) break;
      reduce_at(t);
      if (d_(t, t) < 0) {
        d_.negate_row(t);
        u_.negate_row(t);
      }
    }
  }

  SmithForm result() && {
    return SmithForm{std::move(u_), std::move(d_), std::move(v_), std::move(v_inv_)};
  }

 private:
  void row_swap(std::size_t a, std::size_t b) {
    d_.swap_rows(a, b);
    u_.swap_rows(a, b);
  }
  void col_swap(std::size_t a, std::size_t b) {
    d_.swap_cols(a, b);
    v_.swap_cols(a, b);
    v_inv_.swap_rows(a, b);
  }
  void row_add(std::size_t dst, std::size_t src, const Integer& f) {
    d_.add_row_multiple(dst, src, f);
    u_.add_row_multiple(dst, src, f);
  }
  // V' = V * (I + f e_src e_dst^T), so V^{-1}' = (I - f e_src e_dst^T) V^{-1}.
  void col_add(std::size_t dst, std::size_t src, const Integer& f) {
    d_.add_col_multiple(dst, src, f);
    v_.add_col_multiple(dst, src, f);
    v_inv_.add_row_multiple(src, dst, -f);
  }

  bool bring_smallest_to(std::size_t t) {
    bool found = false;
    std::size_t bi = t, bj = t;
    Integer best;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        const Integer& e = d_(i, j);
        if (e == 0) continue;
        if (!found || cmpabs(e, best) < 0) {
          best = abs(e);
          bi = i;
          bj = j;
          found = true;
        }
      }
    if (!found) return false;
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  void reduce_at(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        if (d_(i, t) == 0) continue;
        Integer q = d_(i, t) / d_(t, t);
        row_add(i, t, -q);
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(t, j) == 0) continue;
        Integer q = d_(t, j) / d_(t, t);
        col_add(j, t, -q);
        if (d_(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot survived; make it the new pivot.
        std::size_t bi = t, bj = t;
        Integer best = abs(d_(t, t));
        for (std::size_t i = t + 1; i < d_.rows(); ++i)
          if (d_(i, t) != 0 && cmpabs(d_(i, t), best) < 0) {
            best = abs(d_(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < d_.cols(); ++j)
          if (d_(t, j) != 0 && cmpabs(d_(t, j), best) < 0) {
            best = abs(d_(t, j));
            bi = t;
            bj = j;
          }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      bool divisible = true;
      for (std::size_t i = t + 1; i < d_.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < d_.cols(); ++j)
          if (!mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t())) {
            row_add(t, i, Integer(1));
            divisible = false;
            break;
          }
      if (divisible) return;
    }
  }

  IntMatrix d_, u_, v_, v_inv_;
};

}  // namespace

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  const std::size_t limit = std::min(D.rows(), D.cols());
  while (r < limit && D(r, r) != 0) ++r;
  return r;
}

Integer SmithForm::diagonal(std::size_t i) const {
  if (i < D.rows() && i < D.cols()) return D(i, i);
  return 0;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithReducer reducer(m);
  reducer.run();
  return std::move(reducer).result();
}

IntMatrix hermite_row_basis(const IntMatrix& m) {
  IntMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    for (;;) {
      std::size_t best = a.rows();
      for (std::size_t k = r; k < a.rows(); ++k)
        if (a(k, c) != 0 && (best == a.rows() || cmpabs(a(k, c), a(best, c)) < 0)) best = k;
      if (best == a.rows()) break;
      a.swap_rows(r, best);
      bool clean = true;
      for (std::size_t k = r + 1; k < a.rows(); ++k) {
        if (a(k, c) == 0) continue;
        Integer q = a(k, c) / a(r, c);
        a.add_row_multiple(k, r, -q);
        if (a(k, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r == a.rows() || a(r, c) == 0) continue;
    if (a(r, c) < 0) a.negate_row(r);
    for (std::size_t k = 0; k < r; ++k) {
      Integer q = floor_div(a(k, c), a(r, c));
      a.add_row_multiple(k, r, -q);
    }
    ++r;
  }
  return a.submatrix(0, 0, r, a.cols());
}

Vector hermite_reduce(const IntMatrix& hnf, Vector x) {
  if (x.size() != hnf.cols()) throw std::invalid_argument("hermite_reduce: dimension mismatch");
  std::size_t c = 0;
  for (std::size_t k = 0; k < hnf.rows(); ++k) {
    while (hnf(k, c) == 0) ++c;
    Integer q = floor_div(x[c], hnf(k, c));
    if (q != 0)
      for (std::size_t j = c; j < x.size(); ++j) x[j] -= q * hnf(k, j);
  }
  return x;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix::identity(m.cols());
  const SmithForm snf = smith_normal_form(m);
  const std::size_t r = snf.rank();
  std::vector<Vector> basis;
  for (std::size_t j = r; j < m.cols(); ++j) basis.push_back(snf.V.column(j));
  return hermite_row_basis(IntMatrix::from_rows(basis, m.cols()));
}

std::optional<Vector> solve_integer(const SmithForm& snf, std::span<const Integer> b) {
  if (b.size() != snf.U.cols()) throw std::invalid_argument("solve_integer: dimension mismatch");
  const Vector c = snf.U.apply(b);
  const std::size_t r = snf.rank();
  Vector y(snf.V.rows());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(c[i].get_mpz_t(), snf.D(i, i).get_mpz_t())) return std::nullopt;
      y[i] = c[i] / snf.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V.apply(y);
}

std::optional<Vector> solve_integer(const IntMatrix& a, std::span<const Integer> b) {
  return solve_integer(smith_normal_form(a), b);
}

}  // namespace dlim
