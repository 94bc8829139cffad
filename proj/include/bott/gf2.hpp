#pragma once

// Bit-packed linear algebra over Z/2. A vector of dimension n <= 64 lives in
// one machine word; bit i is coordinate i (0-based).

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace bott {

inline constexpr int kMaxDim = 64;
inline constexpr int kDefaultGlCeiling = 6;

constexpr std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

class Gf2Vector {
 public:
  Gf2Vector() = default;
  explicit Gf2Vector(int dim, std::uint64_t bits = 0);

  static Gf2Vector unit(int dim, int i);

  int dim() const { return dim_; }
  std::uint64_t bits() const { return bits_; }

  bool get(int i) const { return (bits_ >> i) & 1u; }
  void set(int i, bool v);
  void flip(int i) { set(i, !get(i)); }

  bool is_zero() const { return bits_ == 0; }
  int weight() const;
  bool dot(const Gf2Vector& other) const;

  Gf2Vector& operator^=(const Gf2Vector& other);
  friend Gf2Vector operator^(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }
  friend Gf2Vector operator+(Gf2Vector a, const Gf2Vector& b) { return a ^= b; }

  friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
  friend auto operator<=>(const Gf2Vector&, const Gf2Vector&) = default;

 private:
  int dim_ = 0;
  std::uint64_t bits_ = 0;
};

class Gf2Matrix {
 public:
  Gf2Matrix() = default;
  Gf2Matrix(int rows, int cols);

  static Gf2Matrix identity(int n);
  // Row i is the bitmask rows[i]; bit j is entry (i, j).
  static Gf2Matrix from_rows(int cols, const std::vector<std::uint64_t>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  bool get(int i, int j) const { return (data_[i] >> j) & 1u; }
  void set(int i, int j, bool v);
  std::uint64_t row_bits(int i) const { return data_[i]; }
  void set_row(int i, std::uint64_t bits);
  Gf2Vector row(int i) const { return Gf2Vector(cols_, data_[i]); }
  Gf2Vector column(int j) const;
  const std::vector<std::uint64_t>& row_data() const { return data_; }

  Gf2Matrix transpose() const;

  Gf2Matrix operator*(const Gf2Matrix& rhs) const;
  // Matrix-vector product M v (v is a column vector of dimension cols()).
  Gf2Vector operator*(const Gf2Vector& v) const;
  Gf2Matrix operator+(const Gf2Matrix& rhs) const;

  friend bool operator==(const Gf2Matrix&, const Gf2Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint64_t> data_;
};

int rank(const Gf2Matrix& m);

// Throws std::invalid_argument on a non-square matrix.
bool is_invertible(const Gf2Matrix& m);

std::optional<Gf2Matrix> inverse(const Gf2Matrix& m);

// One solution x of M x = b, if any.
std::optional<Gf2Vector> solve(const Gf2Matrix& m, const Gf2Vector& b);

// Row-reduced basis of the row space, in reduced echelon form.
std::vector<std::uint64_t> row_space_basis(const std::vector<std::uint64_t>& rows);

// Invertible C with C * from == to, when from and to have the same row space.
std::optional<Gf2Matrix> left_transform(const Gf2Matrix& from, const Gf2Matrix& to);

// |GL(m, 2)|.
std::uint64_t gl_order(int m);

// Streams GL(m, 2) in lexicographic order of the row bit patterns
// (row 0 most significant, each row read as an unsigned integer).
class GlStream {
 public:
  explicit GlStream(int m, int ceiling = kDefaultGlCeiling);
  // Restricts the stream to matrices whose first row is first_row.
  GlStream(int m, std::uint64_t first_row, int ceiling = kDefaultGlCeiling);

  bool next(Gf2Matrix& out);
  int size() const { return m_; }

 private:
  bool advance(int level);

  int m_;
  bool started_ = false;
  bool done_ = false;
  bool fixed_first_ = false;
  std::vector<std::uint64_t> rows_;
  // span_[k] is the membership mask (over 2^m values) of span(rows_[0..k-1]).
  std::vector<std::uint64_t> span_;
};

std::vector<Gf2Matrix> gl_all(int m, int ceiling = kDefaultGlCeiling);

class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n);

  static IntMatrix identity(int n);

  int size() const { return n_; }
  std::int64_t at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  std::int64_t& at(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  std::int64_t determinant() const;
  Gf2Matrix mod2() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::int64_t> a_;
};

// An elementary row operation over Z/2: a swap of rows i and j, or the
// transvection adding row j to row i.
struct ElementaryFactor {
  enum class Kind { kSwap, kAdd };
  Kind kind;
  int i;
  int j;
};

// C = E_1 E_2 ... E_k with each E an elementary matrix.
std::vector<ElementaryFactor> elementary_factors(const Gf2Matrix& c);

// Integer matrix with determinant +-1 reducing to c mod 2, built by lifting
// each elementary factor verbatim.
IntMatrix lift_to_integers(const Gf2Matrix& c);

}  // namespace bott
