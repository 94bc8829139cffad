#include "bott/bott_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bott/errors.hpp"

namespace bott {

namespace {

int pair_count(int n) { return n * (n - 1) / 2; }

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

BottMatrix::BottMatrix(int n) : n_(n), rows_(n, 0) {
  if (n < 0 || n > kMaxDim) throw std::invalid_argument("BottMatrix: size out of range");
}

BottMatrix BottMatrix::from_rows(int n, const std::vector<std::uint64_t>& rows) {
  if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("BottMatrix: row count mismatch");
  BottMatrix a(n);
  for (int i = 0; i < n; ++i) {
    // Only columns j > i may be set.
    const std::uint64_t allowed = low_mask(n) & ~low_mask(i + 1);
    if ((rows[i] & ~allowed) != 0)
      throw std::invalid_argument("BottMatrix: entry on or below the diagonal in row " + std::to_string(i + 1));
    a.rows_[i] = rows[i];
  }
  return a;
}

BottMatrix BottMatrix::from_ones(int n, std::initializer_list<std::pair<int, int>> ones) {
  BottMatrix a(n);
  for (auto [i, j] : ones) a.set(i - 1, j - 1, true);
  return a;
}

BottMatrix BottMatrix::from_code(int n, std::uint64_t code) {
  if (n > kMaxCodeN) throw std::invalid_argument("BottMatrix::from_code: n above 11");
  const int total = pair_count(n);
  if (total < 64 && (code >> total) != 0) throw std::invalid_argument("BottMatrix::from_code: code out of range");
  BottMatrix a(n);
  int t = total - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, --t)
      if ((code >> t) & 1u) a.rows_[i] |= std::uint64_t{1} << j;
  return a;
}

void BottMatrix::set(int i, int j, bool v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::invalid_argument("BottMatrix::set: index out of range");
  if (i >= j && v) throw std::invalid_argument("BottMatrix::set: entry on or below the diagonal");
  const std::uint64_t bit = std::uint64_t{1} << j;
  rows_[i] = v ? (rows_[i] | bit) : (rows_[i] & ~bit);
}

std::uint64_t BottMatrix::column_bits(int j) const {
  std::uint64_t bits = 0;
  for (int i = 0; i < j; ++i) bits |= ((rows_[i] >> j) & 1u) << i;
  return bits;
}

bool BottMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](std::uint64_t r) { return r == 0; });
}

int BottMatrix::nonzero_columns() const {
  std::uint64_t any = 0;
  for (std::uint64_t r : rows_) any |= r;
  return std::popcount(any);
}

std::uint64_t BottMatrix::code() const {
  if (n_ > kMaxCodeN) throw std::invalid_argument("BottMatrix::code: n above 11");
  std::uint64_t code = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) code = (code << 1) | ((rows_[i] >> j) & 1u);
  return code;
}

Gf2Matrix BottMatrix::as_gf2() const { return Gf2Matrix::from_rows(n_, rows_); }

Permutation Permutation::identity(int n) {
  Permutation p;
  p.image.resize(n);
  for (int i = 0; i < n; ++i) p.image[i] = i;
  return p;
}

Permutation Permutation::from_one_based(std::initializer_list<int> images) {
  Permutation p;
  for (int v : images) p.image.push_back(v - 1);
  if (!p.valid()) throw std::invalid_argument("Permutation: not a permutation");
  return p;
}

bool Permutation::valid() const {
  std::vector<bool> seen(image.size(), false);
  for (int v : image) {
    if (v < 0 || v >= size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.image.resize(image.size());
  for (int i = 0; i < size(); ++i) p.image[image[i]] = i;
  return p;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) throw std::invalid_argument("Permutation::compose: size mismatch");
  Permutation p;
  p.image.resize(image.size());
  for (int i = 0; i < size(); ++i) p.image[i] = image[other.image[i]];
  return p;
}

std::string describe(const BottOperation& op) {
  std::ostringstream out;
  if (const auto* o1 = std::get_if<Op1>(&op)) {
    out << "Op1 sigma=[";
    for (int i = 0; i < o1->sigma.size(); ++i) out << (i ? "," : "") << o1->sigma.image[i] + 1;
    out << "]";
  } else if (const auto* o2 = std::get_if<Op2>(&op)) {
    out << "Op2 k=" << o2->k + 1;
  } else {
    const auto& o3 = std::get<Op3>(op);
    out << "Op3 I={";
    for (std::size_t i = 0; i < o3.cls.size(); ++i) out << (i ? "," : "") << o3.cls[i] + 1;
    out << "} C=[";
    for (int i = 0; i < o3.c.rows(); ++i) {
      if (i) out << ",";
      for (int j = 0; j < o3.c.cols(); ++j) out << (o3.c.get(i, j) ? '1' : '0');
    }
    out << "]";
  }
  return out.str();
}

BottMatrix from_text(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    std::string t = trim(line);
    if (!t.empty()) lines.push_back(t);
  }
  if (lines.empty()) throw ParseError("empty matrix text");
  int n = 0;
  for (char ch : lines[0])
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("first line must be a decimal size, got '" + lines[0] + "'");
  if (lines[0].size() > 3) throw ParseError("size too large: " + lines[0]);
  n = std::stoi(lines[0]);
  if (n > kMaxDim) throw ParseError("size above 64: " + lines[0]);
  if (static_cast<int>(lines.size()) - 1 != n)
    throw ParseError("expected " + std::to_string(n) + " rows, got " + std::to_string(lines.size() - 1));
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i) {
    const std::string& row = lines[i + 1];
    if (static_cast<int>(row.size()) != n)
      throw ParseError("row " + std::to_string(i + 1) + " has " + std::to_string(row.size()) + " entries, expected " +
                       std::to_string(n));
    for (int j = 0; j < n; ++j) {
      if (row[j] != '0' && row[j] != '1')
        throw ParseError("bad character '" + std::string(1, row[j]) + "' at row " + std::to_string(i + 1));
      if (row[j] == '1') {
        if (j <= i)
          throw ParseError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") is on or below the diagonal");
        rows[i] |= std::uint64_t{1} << j;
      }
    }
  }
  return BottMatrix::from_rows(n, rows);
}

std::string to_text(const BottMatrix& a) {
  std::string out = std::to_string(a.size()) + "\n";
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) out += a.get(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string to_compact(const BottMatrix& a) {
  const int n = a.size();
  const int total = pair_count(n);
  const int words = std::max(1, (total + 63) / 64);
  std::vector<std::uint64_t> w(words, 0);
  int t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++t)
      if (a.get(i, j)) w[t / 64] |= std::uint64_t{1} << (63 - t % 64);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "b" + std::to_string(n) + ":";
  for (std::uint64_t word : w)
    for (int s = 60; s >= 0; s -= 4) out += kHex[(word >> s) & 0xf];
  return out;
}

BottMatrix from_compact(std::string_view text) {
  const std::string s = trim(text);
  const auto colon = s.find(':');
  if (s.size() < 3 || s[0] != 'b' || colon == std::string::npos || colon == 1)
    throw ParseError("compact form must look like b<n>:<hex>");
  const std::string size_part = s.substr(1, colon - 1);
  for (char ch : size_part)
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad size in compact form: " + size_part);
  if (size_part.size() > 3) throw ParseError("size too large: " + size_part);
  const int n = std::stoi(size_part);
  if (n > kMaxDim) throw ParseError("size above 64: " + size_part);
  const std::string hex = s.substr(colon + 1);
  const int total = pair_count(n);
  if (static_cast<int>(hex.size()) * 4 < total) throw ParseError("compact form too short for n=" + size_part);
  std::vector<std::uint64_t> rows(n, 0);
  const auto pos_of = [n](int t) {
    int i = 0;
    while (t >= n - 1 - i) {
      t -= n - 1 - i;
      ++i;
    }
    return std::pair<int, int>{i, i + 1 + t};
  };
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[d])));
    int v = 0;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else throw ParseError("bad hex digit '" + std::string(1, hex[d]) + "' in compact form");
    for (int b = 0; b < 4; ++b) {
      if (((v >> (3 - b)) & 1) == 0) continue;
      const int t = static_cast<int>(d) * 4 + b;
      if (t >= total) throw ParseError("compact form has bits beyond the upper triangle");
      const auto [i, j] = pos_of(t);
      rows[i] |= std::uint64_t{1} << j;
    }
  }
  return BottMatrix::from_rows(n, rows);
}

BottMatrix parse_matrix(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t[0] == 'b') return from_compact(t);
  return from_text(t);
}

std::optional<BottMatrix> apply_op1(const BottMatrix& a, const Permutation& sigma) {
  const int n = a.size();
  if (sigma.size() != n || !sigma.valid()) throw std::invalid_argument("apply_op1: bad permutation");
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t r = a.row_bits(i); r != 0; r &= r - 1) {
      const int j = std::countr_zero(r);
      const int si = sigma.image[i];
      const int sj = sigma.image[j];
      if (si >= sj) return std::nullopt;
      rows[si] |= std::uint64_t{1} << sj;
    }
  }
  return BottMatrix::from_rows(n, rows);
}

BottMatrix apply_op2(const BottMatrix& a, int k) {
  const int n = a.size();
  if (k < 0 || k >= n) throw std::invalid_argument("apply_op2: index out of range");
  // Row form of A_j + A^k_j A_k: row i gains row k wherever A^i_k = 1.
  std::vector<std::uint64_t> rows = a.rows();
  for (int i = 0; i < n; ++i)
    if ((rows[i] >> k) & 1u) rows[i] ^= a.row_bits(k);
  return BottMatrix::from_rows(n, rows);
}

std::vector<std::vector<int>> equal_column_classes(const BottMatrix& a) {
  std::map<std::uint64_t, std::vector<int>> by_column;
  for (int j = 0; j < a.size(); ++j) by_column[a.column_bits(j)].push_back(j);
  std::vector<std::vector<int>> classes;
  for (auto& [col, members] : by_column) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end());
  return classes;
}

std::optional<BottMatrix> apply_op3(const BottMatrix& a, const std::vector<int>& cls, const Gf2Matrix& c) {
  const auto classes = equal_column_classes(a);
  if (std::find(classes.begin(), classes.end(), cls) == classes.end())
    throw std::invalid_argument("apply_op3: index set is not an equal-column class");
  const int m = static_cast<int>(cls.size());
  if (c.rows() != m || c.cols() != m) throw std::invalid_argument("apply_op3: C has the wrong size");
  if (!is_invertible(c)) throw std::invalid_argument("apply_op3: C is singular");
  std::vector<std::uint64_t> rows = a.rows();
  for (int p = 0; p < m; ++p) {
    std::uint64_t mixed = 0;
    for (int q = 0; q < m; ++q)
      if (c.get(p, q)) mixed ^= a.row_bits(cls[q]);
    if ((mixed & low_mask(cls[p] + 1)) != 0) return std::nullopt;
    rows[cls[p]] = mixed;
  }
  return BottMatrix::from_rows(a.size(), rows);
}

BottMatrix apply_operation(const BottMatrix& a, const BottOperation& op) {
  if (const auto* o1 = std::get_if<Op1>(&op)) {
    auto b = apply_op1(a, o1->sigma);
    if (!b) throw std::invalid_argument("apply_operation: permutation leaves B(n)");
    return *b;
  }
  if (const auto* o2 = std::get_if<Op2>(&op)) return apply_op2(a, o2->k);
  const auto& o3 = std::get<Op3>(op);
  auto b = apply_op3(a, o3.cls, o3.c);
  if (!b) throw std::invalid_argument("apply_operation: Op3 image leaves B(n)");
  return *b;
}

std::vector<std::vector<int>> support_components(const BottMatrix& a) {
  const int n = a.size();
  std::vector<std::uint64_t> adj(n, 0);
  for (int i = 0; i < n; ++i) {
    adj[i] |= a.row_bits(i);
    for (std::uint64_t r = a.row_bits(i); r != 0; r &= r - 1) adj[std::countr_zero(r)] |= std::uint64_t{1} << i;
  }
  std::vector<std::vector<int>> comps;
  std::uint64_t seen = 0;
  for (int s = 0; s < n; ++s) {
    if ((seen >> s) & 1u) continue;
    std::uint64_t comp = std::uint64_t{1} << s;
    std::uint64_t frontier = comp;
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= adj[std::countr_zero(f)];
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    std::vector<int> members;
    for (std::uint64_t c = comp; c != 0; c &= c - 1) members.push_back(std::countr_zero(c));
    comps.push_back(std::move(members));
  }
  return comps;
}

BottMatrix direct_sum(const BottMatrix& a, const BottMatrix& b) {
  const int n = a.size() + b.size();
  if (n > kMaxDim) throw std::invalid_argument("direct_sum: size above 64");
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < a.size(); ++i) rows[i] = a.row_bits(i);
  for (int i = 0; i < b.size(); ++i) rows[a.size() + i] = b.row_bits(i) << a.size();
  return BottMatrix::from_rows(n, rows);
}

BottMatrix submatrix(const BottMatrix& a, const std::vector<int>& indices) {
  const int m = static_cast<int>(indices.size());
  std::vector<std::uint64_t> rows(m, 0);
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      if (a.get(indices[p], indices[q])) rows[p] |= std::uint64_t{1} << q;
  return BottMatrix::from_rows(m, rows);
}

bool in_delta(const BottMatrix& a) {
  for (int i = 0; i + 1 < a.size(); ++i)
    if (!a.get(i, i + 1)) return false;
  return true;
}

BottMatrix delta_reduce(const BottMatrix& a, std::vector<int>& ops_used) {
  if (!in_delta(a)) throw std::invalid_argument("delta_reduce: superdiagonal is not all ones");
  BottMatrix b = a;
  for (int i = 0; i + 2 < b.size(); ++i) {
    if (b.get(i, i + 2)) {
      b = apply_op2(b, i + 1);
      ops_used.push_back(i + 1);
    }
  }
  return b;
}

BottMatrix delta_reduce(const BottMatrix& a) {
  std::vector<int> unused;
  return delta_reduce(a, unused);
}

bool principal_minor_check(const Gf2Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("principal_minor_check: matrix is not square");
  const int n = m.rows();
  if (n > 20) throw std::invalid_argument("principal_minor_check: n above 20");
  const Gf2Matrix shifted = m + Gf2Matrix::identity(n);
  std::vector<std::uint64_t> sub;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    sub.clear();
    for (std::uint64_t r = s; r != 0; r &= r - 1) {
      const std::uint64_t row = shifted.row_bits(std::countr_zero(r));
      // Compress the row onto the columns in s.
      std::uint64_t packed = 0;
      int q = 0;
      for (std::uint64_t c = s; c != 0; c &= c - 1, ++q) packed |= ((row >> std::countr_zero(c)) & 1u) << q;
      sub.push_back(packed);
    }
    if (row_space_basis(sub).size() != sub.size()) return false;
  }
  return true;
}

Gf2Matrix conjugate(const BottMatrix& a, const Permutation& sigma) {
  const int n = a.size();
  if (sigma.size() != n || !sigma.valid()) throw std::invalid_argument("conjugate: bad permutation");
  Gf2Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (std::uint64_t r = a.row_bits(i); r != 0; r &= r - 1) out.set(sigma.image[i], sigma.image[std::countr_zero(r)], true);
  return out;
}

}  // namespace bott
