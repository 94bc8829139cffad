#include "bott/gf2.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <utility>

#include "bott/errors.hpp"

namespace bott {

Gf2Vector::Gf2Vector(int dim, std::uint64_t bits) : dim_(dim), bits_(bits) {
  if (dim < 0 || dim > kMaxDim) throw std::invalid_argument("Gf2Vector: dimension out of range");
  if ((bits & ~low_mask(dim)) != 0) throw std::invalid_argument("Gf2Vector: bits above dimension");
}

Gf2Vector Gf2Vector::unit(int dim, int i) {
  if (i < 0 || i >= dim) throw std::invalid_argument("Gf2Vector::unit: index out of range");
  return Gf2Vector(dim, std::uint64_t{1} << i);
}

void Gf2Vector::set(int i, bool v) {
  if (i < 0 || i >= dim_) throw std::invalid_argument("Gf2Vector::set: index out of range");
  const std::uint64_t bit = std::uint64_t{1} << i;
  bits_ = v ? (bits_ | bit) : (bits_ & ~bit);
}

int Gf2Vector::weight() const { return std::popcount(bits_); }

bool Gf2Vector::dot(const Gf2Vector& other) const {
  return (std::popcount(bits_ & other.bits_) & 1) != 0;
}

Gf2Vector& Gf2Vector::operator^=(const Gf2Vector& other) {
  if (dim_ != other.dim_) throw std::invalid_argument("Gf2Vector: dimension mismatch");
  bits_ ^= other.bits_;
  return *this;
}

Gf2Matrix::Gf2Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows, 0) {
  if (rows < 0 || cols < 0 || cols > kMaxDim) throw std::invalid_argument("Gf2Matrix: bad shape");
}

Gf2Matrix Gf2Matrix::identity(int n) {
  Gf2Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.data_[i] = std::uint64_t{1} << i;
  return m;
}

Gf2Matrix Gf2Matrix::from_rows(int cols, const std::vector<std::uint64_t>& rows) {
  Gf2Matrix m(static_cast<int>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
  return m;
}

void Gf2Matrix::set(int i, int j, bool v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw std::invalid_argument("Gf2Matrix::set: index out of range");
  const std::uint64_t bit = std::uint64_t{1} << j;
  data_[i] = v ? (data_[i] | bit) : (data_[i] & ~bit);
}

void Gf2Matrix::set_row(int i, std::uint64_t bits) {
  if ((bits & ~low_mask(cols_)) != 0) throw std::invalid_argument("Gf2Matrix: row bits above column count");
  data_[i] = bits;
}

Gf2Vector Gf2Matrix::column(int j) const {
  std::uint64_t bits = 0;
  for (int i = 0; i < rows_; ++i) bits |= ((data_[i] >> j) & 1u) << i;
  return Gf2Vector(rows_, bits);
}

Gf2Matrix Gf2Matrix::transpose() const {
  Gf2Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (std::uint64_t r = data_[i]; r != 0; r &= r - 1) t.data_[std::countr_zero(r)] |= std::uint64_t{1} << i;
  return t;
}

Gf2Matrix Gf2Matrix::operator*(const Gf2Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("Gf2Matrix: product shape mismatch");
  Gf2Matrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::uint64_t r = data_[i]; r != 0; r &= r - 1) acc ^= rhs.data_[std::countr_zero(r)];
    out.data_[i] = acc;
  }
  return out;
}

Gf2Vector Gf2Matrix::operator*(const Gf2Vector& v) const {
  if (v.dim() != cols_) throw std::invalid_argument("Gf2Matrix: vector dimension mismatch");
  std::uint64_t bits = 0;
  for (int i = 0; i < rows_; ++i) bits |= static_cast<std::uint64_t>(std::popcount(data_[i] & v.bits()) & 1) << i;
  return Gf2Vector(rows_, bits);
}

Gf2Matrix Gf2Matrix::operator+(const Gf2Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("Gf2Matrix: sum shape mismatch");
  Gf2Matrix out = *this;
  for (int i = 0; i < rows_; ++i) out.data_[i] ^= rhs.data_[i];
  return out;
}

std::vector<std::uint64_t> row_space_basis(const std::vector<std::uint64_t>& rows) {
  std::vector<std::uint64_t> r = rows;
  std::vector<std::uint64_t> basis;
  std::size_t p = 0;
  for (int c = 0; c < kMaxDim && p < r.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t piv = p;
    while (piv < r.size() && (r[piv] & bit) == 0) ++piv;
    if (piv == r.size()) continue;
    std::swap(r[p], r[piv]);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (i != p && (r[i] & bit)) r[i] ^= r[p];
    ++p;
  }
  basis.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(p));
  return basis;
}

int rank(const Gf2Matrix& m) { return static_cast<int>(row_space_basis(m.row_data()).size()); }

bool is_invertible(const Gf2Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("is_invertible: matrix is not square");
  return rank(m) == m.rows();
}

std::optional<Gf2Matrix> inverse(const Gf2Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse: matrix is not square");
  const int n = m.rows();
  std::vector<std::uint64_t> a = m.row_data();
  std::vector<std::uint64_t> inv = Gf2Matrix::identity(n).row_data();
  for (int c = 0; c < n; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    int piv = c;
    while (piv < n && (a[piv] & bit) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[c], a[piv]);
    std::swap(inv[c], inv[piv]);
    for (int i = 0; i < n; ++i) {
      if (i != c && (a[i] & bit)) {
        a[i] ^= a[c];
        inv[i] ^= inv[c];
      }
    }
  }
  return Gf2Matrix::from_rows(n, inv);
}

std::optional<Gf2Vector> solve(const Gf2Matrix& m, const Gf2Vector& b) {
  if (b.dim() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  // Eliminate on [M | b], tracking b as a parity bit per row.
  std::vector<std::uint64_t> a = m.row_data();
  std::vector<int> rhs(m.rows());
  for (int i = 0; i < m.rows(); ++i) rhs[i] = b.get(i);
  std::vector<int> pivot_col;
  int p = 0;
  for (int c = 0; c < m.cols() && p < m.rows(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    int piv = p;
    while (piv < m.rows() && (a[piv] & bit) == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[p], a[piv]);
    std::swap(rhs[p], rhs[piv]);
    for (int i = 0; i < m.rows(); ++i) {
      if (i != p && (a[i] & bit)) {
        a[i] ^= a[p];
        rhs[i] ^= rhs[p];
      }
    }
    pivot_col.push_back(c);
    ++p;
  }
  for (int i = p; i < m.rows(); ++i)
    if (rhs[i]) return std::nullopt;
  Gf2Vector x(m.cols());
  for (int i = 0; i < p; ++i)
    if (rhs[i]) x.set(pivot_col[i], true);
  return x;
}

std::optional<Gf2Matrix> left_transform(const Gf2Matrix& from, const Gf2Matrix& to) {
  if (from.rows() != to.rows() || from.cols() != to.cols())
    throw std::invalid_argument("left_transform: shape mismatch");
  const int m = from.rows();
  std::vector<std::uint64_t> r = from.row_data();
  std::vector<std::uint64_t> e = Gf2Matrix::identity(m).row_data();
  std::vector<int> pivots;
  int p = 0;
  for (int c = 0; c < from.cols() && p < m; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    int piv = p;
    while (piv < m && (r[piv] & bit) == 0) ++piv;
    if (piv == m) continue;
    std::swap(r[p], r[piv]);
    std::swap(e[p], e[piv]);
    for (int i = 0; i < m; ++i) {
      if (i != p && (r[i] & bit)) {
        r[i] ^= r[p];
        e[i] ^= e[p];
      }
    }
    pivots.push_back(c);
    ++p;
  }
  const int rk = p;
  // Express every target row in the reduced basis r[0..rk-1].
  std::vector<std::uint64_t> cols(m, 0);  // columns of [D | X], as m-bit masks
  for (int i = 0; i < m; ++i) {
    std::uint64_t rebuilt = 0;
    for (int t = 0; t < rk; ++t) {
      if ((to.row_bits(i) >> pivots[t]) & 1u) {
        rebuilt ^= r[t];
        cols[t] |= std::uint64_t{1} << i;
      }
    }
    if (rebuilt != to.row_bits(i)) return std::nullopt;
  }
  std::vector<std::uint64_t> chosen(cols.begin(), cols.begin() + rk);
  if (static_cast<int>(row_space_basis(chosen).size()) != rk) return std::nullopt;
  int filled = rk;
  for (int k = 0; k < m && filled < m; ++k) {
    chosen.push_back(std::uint64_t{1} << k);
    if (static_cast<int>(row_space_basis(chosen).size()) == filled + 1) {
      cols[filled++] = std::uint64_t{1} << k;
    } else {
      chosen.pop_back();
    }
  }
  const Gf2Matrix extended = Gf2Matrix::from_rows(m, cols).transpose();
  return extended * Gf2Matrix::from_rows(m, e);
}

std::uint64_t gl_order(int m) {
  std::uint64_t order = 1;
  for (int i = 0; i < m; ++i) order *= (std::uint64_t{1} << m) - (std::uint64_t{1} << i);
  return order;
}

namespace {

std::uint64_t extend_span(std::uint64_t span, std::uint64_t v) {
  std::uint64_t out = span;
  for (std::uint64_t s = span; s != 0; s &= s - 1) out |= std::uint64_t{1} << (static_cast<unsigned>(std::countr_zero(s)) ^ v);
  return out;
}

void check_gl_size(int m, int ceiling) {
  if (m < 1) throw std::invalid_argument("GlStream: size must be at least 1");
  if (ceiling > kDefaultGlCeiling) throw BoundError("GlStream: ceiling above 6 is not supported");
  if (m > ceiling)
    throw BoundError("GlStream: size " + std::to_string(m) + " above ceiling " + std::to_string(ceiling));
}

}  // namespace

GlStream::GlStream(int m, int ceiling) : m_(m), rows_(m, 0), span_(m + 1, 0) {
  check_gl_size(m, ceiling);
  span_[0] = 1;
}

GlStream::GlStream(int m, std::uint64_t first_row, int ceiling) : GlStream(m, ceiling) {
  if (first_row == 0 || (first_row & ~low_mask(m)) != 0)
    throw std::invalid_argument("GlStream: invalid first row");
  fixed_first_ = true;
  rows_[0] = first_row;
  span_[1] = extend_span(span_[0], first_row);
}

bool GlStream::advance(int level) {
  const std::uint64_t limit = std::uint64_t{1} << m_;
  const int floor = fixed_first_ ? 1 : 0;
  for (int k = level; k >= floor; --k) {
    std::uint64_t v = rows_[k] + 1;
    while (v < limit && ((span_[k] >> v) & 1u)) ++v;
    if (v == limit) continue;
    rows_[k] = v;
    span_[k + 1] = extend_span(span_[k], v);
    for (int j = k + 1; j < m_; ++j) {
      std::uint64_t w = 1;
      while ((span_[j] >> w) & 1u) ++w;
      rows_[j] = w;
      span_[j + 1] = extend_span(span_[j], w);
    }
    return true;
  }
  return false;
}

bool GlStream::next(Gf2Matrix& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    const int start = fixed_first_ ? 1 : 0;
    for (int j = start; j < m_; ++j) {
      std::uint64_t w = 1;
      while ((span_[j] >> w) & 1u) ++w;
      rows_[j] = w;
      span_[j + 1] = extend_span(span_[j], w);
    }
  } else if (!advance(m_ - 1)) {
    done_ = true;
    return false;
  }
  out = Gf2Matrix::from_rows(m_, rows_);
  return true;
}

std::vector<Gf2Matrix> gl_all(int m, int ceiling) {
  std::vector<Gf2Matrix> out;
  out.reserve(gl_order(m));
  GlStream stream(m, ceiling);
  Gf2Matrix g;
  while (stream.next(g)) out.push_back(g);
  return out;
}

IntMatrix::IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0) {}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (n_ != rhs.n_) throw std::invalid_argument("IntMatrix: size mismatch");
  IntMatrix out(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const std::int64_t v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < n_; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

std::int64_t IntMatrix::determinant() const {
  if (n_ == 0) return 1;
  // Fraction-free Bareiss elimination.
  std::vector<__int128> m(a_.begin(), a_.end());
  auto el = [&](int i, int j) -> __int128& { return m[static_cast<std::size_t>(i) * n_ + j]; };
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n_ - 1; ++k) {
    if (el(k, k) == 0) {
      int piv = k + 1;
      while (piv < n_ && el(piv, k) == 0) ++piv;
      if (piv == n_) return 0;
      for (int j = 0; j < n_; ++j) std::swap(el(k, j), el(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n_; ++i) {
      for (int j = k + 1; j < n_; ++j) el(i, j) = (el(i, j) * el(k, k) - el(i, k) * el(k, j)) / prev;
    }
    prev = el(k, k);
  }
  return static_cast<std::int64_t>(sign * el(n_ - 1, n_ - 1));
}

Gf2Matrix IntMatrix::mod2() const {
  Gf2Matrix out(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.set(i, j, (at(i, j) % 2) != 0);
  return out;
}

std::vector<ElementaryFactor> elementary_factors(const Gf2Matrix& c) {
  if (!c.is_square()) throw std::invalid_argument("elementary_factors: matrix is not square");
  const int n = c.rows();
  std::vector<std::uint64_t> a = c.row_data();
  std::vector<ElementaryFactor> ops;
  for (int col = 0; col < n; ++col) {
    const std::uint64_t bit = std::uint64_t{1} << col;
    int piv = col;
    while (piv < n && (a[piv] & bit) == 0) ++piv;
    if (piv == n) throw std::invalid_argument("elementary_factors: matrix is singular");
    if (piv != col) {
      std::swap(a[col], a[piv]);
      ops.push_back({ElementaryFactor::Kind::kSwap, col, piv});
    }
    for (int i = 0; i < n; ++i) {
      if (i != col && (a[i] & bit)) {
        a[i] ^= a[col];
        ops.push_back({ElementaryFactor::Kind::kAdd, i, col});
      }
    }
  }
  // E_k ... E_1 C = 1 and every E is an involution mod 2, so C = E_1 ... E_k.
  return ops;
}

IntMatrix lift_to_integers(const Gf2Matrix& c) {
  const int n = c.rows();
  IntMatrix out = IntMatrix::identity(n);
  for (const ElementaryFactor& f : elementary_factors(c)) {
    IntMatrix e = IntMatrix::identity(n);
    if (f.kind == ElementaryFactor::Kind::kSwap) {
      e.at(f.i, f.i) = 0;
      e.at(f.j, f.j) = 0;
      e.at(f.i, f.j) = 1;
      e.at(f.j, f.i) = 1;
    } else {
      e.at(f.i, f.j) = 1;
    }
    out = out * e;
  }
  return out;
}

}  // namespace bott
