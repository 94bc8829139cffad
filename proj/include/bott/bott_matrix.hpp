#pragma once

// Strictly upper-triangular (0,1) matrices and the three Bott operations.
//
// Internally indices are 0-based: row i is a bitmask whose bit j is A^i_j.
// All text I/O (BMAT, compact form, operation descriptions) is 1-based.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "bott/gf2.hpp"

namespace bott {

// Largest n for which a matrix fits a 64-bit compact code (n(n-1)/2 <= 64).
inline constexpr int kMaxCodeN = 11;

class BottMatrix {
 public:
  BottMatrix() = default;  // the 0x0 matrix
  explicit BottMatrix(int n);

  static BottMatrix from_rows(int n, const std::vector<std::uint64_t>& rows);
  // Ones at the listed 1-based (row, column) positions.
  static BottMatrix from_ones(int n, std::initializer_list<std::pair<int, int>> ones);
  static BottMatrix from_code(int n, std::uint64_t code);

  int size() const { return n_; }
  bool get(int i, int j) const { return (rows_[i] >> j) & 1u; }
  void set(int i, int j, bool v);

  std::uint64_t row_bits(int i) const { return rows_[i]; }
  std::uint64_t column_bits(int j) const;
  Gf2Vector row(int i) const { return Gf2Vector(n_, rows_[i]); }
  Gf2Vector column(int j) const { return Gf2Vector(n_, column_bits(j)); }
  const std::vector<std::uint64_t>& rows() const { return rows_; }

  bool is_zero() const;
  int nonzero_columns() const;

  // Upper-triangle bits in row-major order, (1,2) most significant. n <= 11.
  std::uint64_t code() const;
  Gf2Matrix as_gf2() const;

  friend bool operator==(const BottMatrix&, const BottMatrix&) = default;
  friend auto operator<=>(const BottMatrix&, const BottMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

// sigma.image[i] is the image of i (0-based).
struct Permutation {
  std::vector<int> image;

  static Permutation identity(int n);
  // From 1-based images, e.g. {2, 3, 1} for 1->2->3->1.
  static Permutation from_one_based(std::initializer_list<int> images);

  int size() const { return static_cast<int>(image.size()); }
  bool valid() const;
  Permutation inverse() const;
  // (this o other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
};

struct Op1 {
  Permutation sigma;
};
struct Op2 {
  int k;  // 0-based
};
struct Op3 {
  std::vector<int> cls;  // 0-based, ascending
  Gf2Matrix c;           // |cls| x |cls|, indexed by position within cls
};
using BottOperation = std::variant<Op1, Op2, Op3>;

// Human-readable, 1-based: "Op1 sigma=[2,3,1]", "Op2 k=2", "Op3 I={1,2} C=[11,01]".
std::string describe(const BottOperation& op);

// BMAT text: "n" then n lines of n characters from {0,1}.
BottMatrix from_text(std::string_view text);
std::string to_text(const BottMatrix& a);

// "b{n}:" followed by the upper-triangle bit string, big-endian, left-aligned
// in 64-bit words, each word rendered as 16 hex digits.
std::string to_compact(const BottMatrix& a);
BottMatrix from_compact(std::string_view text);

// Accepts either BMAT text or a compact encoding.
BottMatrix parse_matrix(std::string_view text);

// B with B^{sigma(i)}_{sigma(j)} = A^i_j, or nullopt when B leaves B(n).
std::optional<BottMatrix> apply_op1(const BottMatrix& a, const Permutation& sigma);

// Column j becomes A_j + A^k_j A_k.
BottMatrix apply_op2(const BottMatrix& a, int k);

// Partition of indices by column equality, ordered by smallest member.
std::vector<std::vector<int>> equal_column_classes(const BottMatrix& a);

// Rows in cls replaced by C-mixtures of rows in cls, or nullopt when the
// mixture puts a one on or below the diagonal (possible when cls is not a
// run of consecutive indices). Throws std::invalid_argument unless cls is
// exactly one equal-column class and c is invertible.
std::optional<BottMatrix> apply_op3(const BottMatrix& a, const std::vector<int>& cls, const Gf2Matrix& c);

// Throws std::invalid_argument when the operation is not legal for a.
BottMatrix apply_operation(const BottMatrix& a, const BottOperation& op);

// Connected components of the graph with edges {i,j} for A^i_j = 1, each
// sorted, ordered by smallest member.
std::vector<std::vector<int>> support_components(const BottMatrix& a);

BottMatrix direct_sum(const BottMatrix& a, const BottMatrix& b);

// Principal submatrix on the given (ascending) indices.
BottMatrix submatrix(const BottMatrix& a, const std::vector<int>& indices);

bool in_delta(const BottMatrix& a);

// Zeroes the (i,i+2) entries of a Delta(n) matrix by Op2 at k = i+1, in
// increasing i. Throws std::invalid_argument if a is not in Delta(n).
BottMatrix delta_reduce(const BottMatrix& a);
// Same elimination, also reporting the Op2 indices used.
BottMatrix delta_reduce(const BottMatrix& a, std::vector<int>& ops_used);

// True iff every principal minor of M + E is 1 over Z/2. n <= 20.
bool principal_minor_check(const Gf2Matrix& m);

// Image of a under an arbitrary permutation, without the triangularity filter.
Gf2Matrix conjugate(const BottMatrix& a, const Permutation& sigma);

}  // namespace bott
