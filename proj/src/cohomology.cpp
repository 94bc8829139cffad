#include "bott/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace bott {

namespace {

// Degree first; within a degree the ascending index lists compare
// lexicographically, i.e. the lowest differing bit decides.
bool monomial_less(std::uint64_t a, std::uint64_t b) {
  const int pa = std::popcount(a);
  const int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  const std::uint64_t d = a ^ b;
  return (a & d & (~d + 1)) != 0;
}

std::uint64_t binomial(int n, int q) {
  std::uint64_t r = 1;
  for (int i = 1; i <= q; ++i) r = r * static_cast<std::uint64_t>(n - q + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

SquareFreePoly SquareFreePoly::one() { return monomial(0); }

SquareFreePoly SquareFreePoly::monomial(std::uint64_t mask) {
  SquareFreePoly p;
  p.terms_.push_back(mask);
  return p;
}

SquareFreePoly SquareFreePoly::generator(int i) { return monomial(std::uint64_t{1} << i); }

SquareFreePoly SquareFreePoly::linear(const Gf2Vector& v) {
  SquareFreePoly p;
  for (std::uint64_t b = v.bits(); b != 0; b &= b - 1) p.terms_.push_back(b & (~b + 1));
  return p;  // single-bit masks ascending by value are already in order
}

bool SquareFreePoly::contains(std::uint64_t mask) const {
  return std::binary_search(terms_.begin(), terms_.end(), mask, monomial_less);
}

int SquareFreePoly::degree() const {
  if (terms_.empty()) return -1;
  const int d = std::popcount(terms_.front());
  if (std::popcount(terms_.back()) != d) throw std::logic_error("SquareFreePoly::degree: not homogeneous");
  return d;
}

void SquareFreePoly::toggle(std::uint64_t mask) {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), mask, monomial_less);
  if (it != terms_.end() && *it == mask) terms_.erase(it);
  else terms_.insert(it, mask);
}

SquareFreePoly& SquareFreePoly::operator+=(const SquareFreePoly& other) {
  std::vector<std::uint64_t> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && monomial_less(*a, *b))) merged.push_back(*a++);
    else if (a == terms_.end() || monomial_less(*b, *a)) merged.push_back(*b++);
    else {
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Gf2Vector SquareFreePoly::linear_part(int n) const {
  Gf2Vector v(n);
  for (std::uint64_t m : terms_)
    if (std::popcount(m) == 1) v.set(std::countr_zero(m), true);
  return v;
}

std::string to_string(const SquareFreePoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first_term = true;
  for (std::uint64_t m : p.monomials()) {
    if (!first_term) out << " + ";
    first_term = false;
    if (m == 0) {
      out << "1";
      continue;
    }
    bool first = true;
    for (std::uint64_t b = m; b != 0; b &= b - 1) {
      if (!first) out << '*';
      first = false;
      out << 'x' << std::countr_zero(b) + 1;
    }
  }
  return out.str();
}

RingPresentation::RingPresentation(const BottMatrix& a) : a_(a) {
  const int n = a.size();
  if (n > kMaxCodeN) throw std::invalid_argument("RingPresentation: n above 11");
  for (int j = 0; j < n; ++j) alphas_.push_back(a.column(j));
  pair_of_.assign(static_cast<std::size_t>(n) * n, -1);
  int t = 0;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) pair_of_[x * n + y] = pair_of_[y * n + x] = t++;
  pair_product_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      std::uint64_t& cell = pair_product_[x * n + y];
      if (x != y) {
        cell = std::uint64_t{1} << pair_of_[x * n + y];
        continue;
      }
      // x_x^2 = x_x alpha_x, and alpha_x only involves indices below x.
      for (std::uint64_t c = alphas_[x].bits(); c != 0; c &= c - 1)
        cell ^= std::uint64_t{1} << pair_of_[std::countr_zero(c) * n + x];
    }
}

SquareFreePoly RingPresentation::multiply_generator(const SquareFreePoly& p, int i) const {
  SquareFreePoly out;
  const std::uint64_t bit = std::uint64_t{1} << i;
  for (std::uint64_t m : p.monomials()) {
    if ((m & bit) == 0) {
      out.toggle(m | bit);
      continue;
    }
    // m x_i = m alpha_i; every index of alpha_i is smaller than i.
    for (std::uint64_t c = alphas_[i].bits(); c != 0; c &= c - 1)
      out += multiply_generator(SquareFreePoly::monomial(m), std::countr_zero(c));
  }
  return out;
}

SquareFreePoly RingPresentation::multiply(const SquareFreePoly& p, const SquareFreePoly& q) const {
  SquareFreePoly out;
  for (std::uint64_t m : q.monomials()) {
    SquareFreePoly term = p;
    for (std::uint64_t b = m; b != 0 && !term.is_zero(); b &= b - 1) term = multiply_generator(term, std::countr_zero(b));
    out += term;
  }
  return out;
}

std::uint64_t RingPresentation::product1(std::uint64_t u, std::uint64_t v) const {
  const int n = a_.size();
  std::uint64_t acc = 0;
  for (std::uint64_t x = u; x != 0; x &= x - 1) {
    const std::uint64_t* row = &pair_product_[static_cast<std::size_t>(std::countr_zero(x)) * n];
    for (std::uint64_t y = v; y != 0; y &= y - 1) acc ^= row[std::countr_zero(y)];
  }
  return acc;
}

int RingPresentation::pair_index(int a, int b) const {
  if (a == b) throw std::invalid_argument("pair_index: equal indices");
  return pair_of_[a * a_.size() + b];
}

SquareFreePoly RingPresentation::degree2_poly(std::uint64_t pairs) const {
  SquareFreePoly p;
  const int n = a_.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if ((pairs >> pair_of_[x * n + y]) & 1u) p.toggle((std::uint64_t{1} << x) | (std::uint64_t{1} << y));
  return p;
}

std::vector<std::uint64_t> RingPresentation::basis(int q) const {
  const int n = a_.size();
  if (q < 0 || q > n) throw std::invalid_argument("basis: degree out of range");
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (std::popcount(m) == q) out.push_back(m);
  std::sort(out.begin(), out.end(), monomial_less);
  return out;
}

std::uint64_t RingPresentation::betti(int q) const {
  const std::uint64_t counted = basis(q).size();
  if (counted != binomial(n(), q)) throw std::logic_error("betti: basis count differs from the binomial");
  return counted;
}

bool EigenSpace::contains(const Gf2Vector& v) const {
  std::vector<std::uint64_t> rows;
  for (const auto& b : basis) rows.push_back(b.bits());
  const std::size_t r = row_space_basis(rows).size();
  rows.push_back(v.bits());
  return row_space_basis(rows).size() == r;
}

std::vector<EigenElement> eigen_elements(const RingPresentation& h) {
  std::vector<EigenElement> out;
  for (int j = 0; j < h.n(); ++j) {
    const auto it = std::find_if(out.begin(), out.end(), [&](const EigenElement& e) { return e.alpha == h.alpha(j); });
    if (it != out.end()) it->indices.push_back(j);
    else out.push_back(EigenElement{h.alpha(j), {j}});
  }
  std::sort(out.begin(), out.end(), [](const EigenElement& a, const EigenElement& b) { return a.alpha.bits() < b.alpha.bits(); });
  return out;
}

EigenSpace eigen_space(const RingPresentation& h, const Gf2Vector& alpha) {
  EigenSpace e;
  e.alpha = alpha;
  std::vector<std::uint64_t> span;
  const auto add = [&](const Gf2Vector& v) {
    span.push_back(v.bits());
    if (row_space_basis(span).size() < span.size()) span.pop_back();
    else e.basis.push_back(v);
  };
  if (!alpha.is_zero()) add(alpha);
  bool found = false;
  for (int i = 0; i < h.n(); ++i)
    if (h.alpha(i) == alpha) {
      found = true;
      add(Gf2Vector::unit(h.n(), i));
    }
  if (!found) {
    e.basis.clear();
    e.trivial = true;
    return e;
  }
  e.reduced_dim = e.dim() - (alpha.is_zero() ? 0 : 1);
  return e;
}

EigenSpace nilpotent_space(const RingPresentation& h) { return eigen_space(h, Gf2Vector(h.n())); }

std::vector<SElement> s_set(const RingPresentation& h) {
  std::vector<SElement> out;
  for (const auto& ee : eigen_elements(h)) {
    if (ee.alpha.is_zero()) continue;
    const EigenSpace e = eigen_space(h, ee.alpha);
    for (std::uint64_t c = 1; c < (std::uint64_t{1} << e.dim()); ++c) {
      Gf2Vector x(h.n());
      for (int t = 0; t < e.dim(); ++t)
        if ((c >> t) & 1u) x ^= e.basis[t];
      if (x == ee.alpha) continue;
      out.push_back(SElement{x, x + ee.alpha, ee.alpha});
    }
  }
  std::sort(out.begin(), out.end(), [](const SElement& a, const SElement& b) { return a.x.bits() < b.x.bits(); });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].x == out[i - 1].x) throw std::logic_error("s_set: element in two eigen-spaces");
  return out;
}

SquareFreePoly pullback(const Gf2Matrix& f, const RingPresentation& h_b, const SquareFreePoly& p) {
  const int n = h_b.n();
  if (f.rows() != n || f.cols() != n) throw std::invalid_argument("pullback: F must be n x n");
  SquareFreePoly out;
  for (std::uint64_t m : p.monomials()) {
    if (m >> n) throw std::invalid_argument("pullback: generator index out of range");
    SquareFreePoly term = SquareFreePoly::one();
    for (std::uint64_t b = m; b != 0 && !term.is_zero(); b &= b - 1)
      term = h_b.multiply(term, SquareFreePoly::linear(f.column(std::countr_zero(b))));
    out += term;
  }
  return out;
}

bool induces_ring_iso(const Gf2Matrix& f, const RingPresentation& h_a, const RingPresentation& h_b) {
  const int n = h_a.n();
  if (h_b.n() != n || f.rows() != n || f.cols() != n) throw std::invalid_argument("induces_ring_iso: size mismatch");
  if (!is_invertible(f)) return false;
  for (int j = 0; j < n; ++j) {
    const Gf2Vector u = f.column(j);
    const Gf2Vector w = f * h_a.alpha(j);
    if (h_b.product1(u.bits(), (u + w).bits()) != 0) return false;
  }
  return true;
}

Gf2Matrix op_pullback_matrix(const BottMatrix& a, const BottOperation& op) {
  const int n = a.size();
  Gf2Matrix f = Gf2Matrix::identity(n);
  if (const auto* o1 = std::get_if<Op1>(&op)) {
    if (o1->sigma.size() != n) throw std::invalid_argument("op_pullback_matrix: permutation size");
    f = Gf2Matrix(n, n);
    for (int j = 0; j < n; ++j) f.set(o1->sigma.image[j], j, true);  // x_j -> y_sigma(j)
  } else if (const auto* o2 = std::get_if<Op2>(&op)) {
    for (int i = 0; i < n; ++i)
      if (a.get(i, o2->k)) f.set(i, o2->k, true);  // x_k -> y_k + alpha_k
  } else {
    const auto& o3 = std::get<Op3>(op);
    const int m = static_cast<int>(o3.cls.size());
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) f.set(o3.cls[p], o3.cls[q], o3.c.get(p, q));
  }
  return f;
}

}  // namespace bott
