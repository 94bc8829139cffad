#include <doctest.h>

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "bott/cohomology.hpp"

using namespace bott;

namespace {

std::uint64_t count(int n) { return std::uint64_t{1} << (n * (n - 1) / 2); }

// Independent normal form: exponent vectors, always rewriting the largest
// index with exponent >= 2 as x_j^2 -> x_j alpha_j.
std::set<std::uint64_t> oracle_product(const BottMatrix& a, std::uint64_t m1, std::uint64_t m2) {
  const int n = a.size();
  std::map<std::vector<int>, int> work;
  std::vector<int> e(n, 0);
  for (int i = 0; i < n; ++i) e[i] = static_cast<int>(((m1 >> i) & 1u) + ((m2 >> i) & 1u));
  work[e] = 1;
  std::set<std::uint64_t> out;
  while (!work.empty()) {
    auto it = work.begin();
    std::vector<int> cur = it->first;
    const int parity = it->second & 1;
    work.erase(it);
    if (!parity) continue;
    int j = -1;
    for (int i = n - 1; i >= 0; --i)
      if (cur[i] >= 2) {
        j = i;
        break;
      }
    if (j < 0) {
      std::uint64_t mask = 0;
      for (int i = 0; i < n; ++i)
        if (cur[i]) mask |= std::uint64_t{1} << i;
      if (!out.insert(mask).second) out.erase(mask);
      continue;
    }
    --cur[j];
    for (int i = 0; i < j; ++i)
      if (a.get(i, j)) {
        std::vector<int> next = cur;
        ++next[i];
        work[next] ^= 1;
      }
  }
  return out;
}

std::set<std::uint64_t> terms(const SquareFreePoly& p) { return {p.monomials().begin(), p.monomials().end()}; }

SquareFreePoly random_poly(int n, std::mt19937_64& rng) {
  SquareFreePoly p;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (rng() % 3 == 0) p.toggle(m);
  return p;
}

// x^2 == alpha x in degree 1, computed with the generic multiply.
bool eigen_relation(const RingPresentation& h, std::uint64_t x, std::uint64_t alpha) {
  const SquareFreePoly px = SquareFreePoly::linear(Gf2Vector(h.n(), x));
  const SquareFreePoly pa = SquareFreePoly::linear(Gf2Vector(h.n(), alpha));
  return h.multiply(px, px) == h.multiply(pa, px);
}

std::set<std::uint64_t> span_of(const std::vector<Gf2Vector>& basis) {
  std::set<std::uint64_t> s;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << basis.size()); ++c) {
    std::uint64_t v = 0;
    for (std::size_t t = 0; t < basis.size(); ++t)
      if ((c >> t) & 1u) v ^= basis[t].bits();
    s.insert(v);
  }
  return s;
}

const BottMatrix kKlein = BottMatrix::from_ones(2, {{1, 2}});
const BottMatrix kClass3 = BottMatrix::from_ones(3, {{1, 2}, {1, 3}});
const BottMatrix kClass4 = BottMatrix::from_ones(3, {{1, 2}, {2, 3}});

}  // namespace

TEST_CASE("polynomial text form") {
  SquareFreePoly p;
  CHECK(to_string(p) == "0");
  p.toggle(0b0010);
  p.toggle(0b1101);
  CHECK(to_string(p) == "x2 + x1*x3*x4");
  p.toggle(0b0101);
  CHECK(to_string(p) == "x2 + x1*x3 + x1*x3*x4");
  p.toggle(0b0101);
  CHECK(to_string(p) == "x2 + x1*x3*x4");
  CHECK(to_string(SquareFreePoly::one()) == "1");
}

TEST_CASE("Klein and torus products") {
  const RingPresentation h(kKlein);
  const SquareFreePoly x2 = SquareFreePoly::generator(1);
  CHECK(to_string(h.multiply(x2, x2)) == "x1*x2");
  CHECK(h.multiply(h.multiply(x2, x2), x2).is_zero());
  const RingPresentation t(BottMatrix(4));
  for (int i = 0; i < 4; ++i) CHECK(t.square(SquareFreePoly::generator(i)).is_zero());
}

TEST_CASE("multiply agrees with the exponent-vector oracle on B(4)") {
  for (std::uint64_t c = 0; c < count(4); ++c) {
    const BottMatrix a = BottMatrix::from_code(4, c);
    const RingPresentation h(a);
    for (std::uint64_t m1 = 0; m1 < 16; ++m1)
      for (std::uint64_t m2 = 0; m2 < 16; ++m2)
        CHECK(terms(h.multiply(SquareFreePoly::monomial(m1), SquareFreePoly::monomial(m2))) ==
              oracle_product(a, m1, m2));
  }
}

TEST_CASE("degree-one product table matches multiply") {
  for (std::uint64_t c = 0; c < count(4); ++c) {
    const RingPresentation h(BottMatrix::from_code(4, c));
    for (std::uint64_t u = 0; u < 16; ++u)
      for (std::uint64_t v = 0; v < 16; ++v)
        CHECK(h.degree2_poly(h.product1(u, v)) ==
              h.multiply(SquareFreePoly::linear(Gf2Vector(4, u)), SquareFreePoly::linear(Gf2Vector(4, v))));
  }
}

TEST_CASE("ring axioms on random triples") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const RingPresentation h(BottMatrix::from_code(n, rng() % count(n)));
    const SquareFreePoly p = random_poly(n, rng);
    const SquareFreePoly q = random_poly(n, rng);
    const SquareFreePoly r = random_poly(n, rng);
    CHECK(h.multiply(p, q) == h.multiply(q, p));
    CHECK(h.multiply(h.multiply(p, q), r) == h.multiply(p, h.multiply(q, r)));
    CHECK(h.multiply(p, q + r) == h.multiply(p, q) + h.multiply(p, r));
    CHECK(h.multiply(p, SquareFreePoly::one()) == p);
  }
}

TEST_CASE("betti numbers are binomial") {
  const std::uint64_t binom4[] = {1, 4, 6, 4, 1};
  for (std::uint64_t c = 0; c < count(4); ++c) {
    const RingPresentation h(BottMatrix::from_code(4, c));
    for (int q = 0; q <= 4; ++q) {
      CHECK(h.betti(q) == binom4[q]);
      for (std::uint64_t m : h.basis(q)) CHECK(std::popcount(m) == q);
    }
  }
  CHECK(RingPresentation(BottMatrix(5)).betti(5) == 1);
  CHECK(RingPresentation(BottMatrix(3)).betti(0) == 1);
}

TEST_CASE("eigen-elements") {
  const auto zero = eigen_elements(RingPresentation(BottMatrix(3)));
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].alpha.is_zero());
  CHECK(zero[0].indices == std::vector<int>{0, 1, 2});

  const auto c4 = eigen_elements(RingPresentation(kClass4));
  REQUIRE(c4.size() == 3);
  CHECK(c4[0].alpha.bits() == 0);
  CHECK(c4[1].alpha.bits() == 0b001);
  CHECK(c4[2].alpha.bits() == 0b010);

  const auto c3 = eigen_elements(RingPresentation(kClass3));
  REQUIRE(c3.size() == 2);
  CHECK(c3[1].alpha.bits() == 0b001);
  CHECK(c3[1].indices == std::vector<int>{1, 2});
}

TEST_CASE("only the alpha_j are eigen-elements (B(4), exhaustive)") {
  for (std::uint64_t c = 0; c < count(4); ++c) {
    const BottMatrix a = BottMatrix::from_code(4, c);
    const RingPresentation h(a);
    std::set<std::uint64_t> alphas;
    for (int j = 0; j < 4; ++j) alphas.insert(a.column_bits(j));
    for (std::uint64_t alpha = 0; alpha < 16; ++alpha)
      for (std::uint64_t x = 1; x < 16; ++x)
        if (x != alpha && eigen_relation(h, x, alpha)) CHECK(alphas.count(alpha) == 1);
  }
}

TEST_CASE("eigen-space examples") {
  const EigenSpace e3 = eigen_space(RingPresentation(kClass3), Gf2Vector(3, 0b001));
  CHECK(e3.dim() == 3);
  CHECK(e3.reduced_dim == 2);
  const EigenSpace e4 = eigen_space(RingPresentation(kClass4), Gf2Vector(3, 0b001));
  CHECK(e4.dim() == 2);
  CHECK(span_of(e4.basis) == std::set<std::uint64_t>{0b000, 0b001, 0b010, 0b011});
  const EigenSpace z = eigen_space(RingPresentation(BottMatrix(3)), Gf2Vector(3));
  CHECK(z.dim() == 3);
  const EigenSpace none = eigen_space(RingPresentation(kClass4), Gf2Vector(3, 0b100));
  CHECK(none.trivial);
  CHECK(none.dim() == 0);
}

TEST_CASE("eigen-spaces equal the brute-force solution sets (n <= 4)") {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t c = 0; c < count(n); ++c) {
      const RingPresentation h(BottMatrix::from_code(n, c));
      for (const auto& ee : eigen_elements(h)) {
        std::set<std::uint64_t> brute;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
          if (eigen_relation(h, x, ee.alpha.bits())) brute.insert(x);
        const EigenSpace e = eigen_space(h, ee.alpha);
        CHECK(span_of(e.basis) == brute);
        CHECK(e.reduced_dim == e.dim() - (ee.alpha.is_zero() ? 0 : 1));
        if (!ee.alpha.is_zero()) CHECK(e.contains(ee.alpha));
      }
    }
}

TEST_CASE("nilpotent space") {
  CHECK(nilpotent_space(RingPresentation(BottMatrix(3))).dim() == 3);
  CHECK(nilpotent_space(RingPresentation(kClass3)).dim() == 1);
  const EigenSpace k = nilpotent_space(RingPresentation(kKlein));
  CHECK(k.dim() == 1);
  CHECK(k.basis[0].bits() == 0b01);
  for (std::uint64_t c = 0; c < count(4); ++c) {
    const BottMatrix a = BottMatrix::from_code(4, c);
    CHECK((nilpotent_space(RingPresentation(a)).dim() == 4) == a.is_zero());
  }
}

TEST_CASE("S(H) examples") {
  CHECK(s_set(RingPresentation(BottMatrix(3))).empty());
  const auto k = s_set(RingPresentation(kKlein));
  REQUIRE(k.size() == 2);
  CHECK(k[0].x.bits() == 0b10);
  CHECK(k[0].partner.bits() == 0b11);
  CHECK(k[1].partner.bits() == 0b10);
  std::set<std::uint64_t> got;
  for (const auto& s : s_set(RingPresentation(kClass3))) got.insert(s.x.bits());
  CHECK(got == std::set<std::uint64_t>{0b010, 0b100, 0b110, 0b011, 0b101, 0b111});
}

TEST_CASE("S(H) equals elements with a zero-product partner (n <= 4)") {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t c = 0; c < count(n); ++c) {
      const RingPresentation h(BottMatrix::from_code(n, c));
      std::set<std::uint64_t> brute;
      for (std::uint64_t x = 1; x < (std::uint64_t{1} << n); ++x)
        for (std::uint64_t y = 1; y < (std::uint64_t{1} << n); ++y)
          if (y != x && h.multiply(SquareFreePoly::linear(Gf2Vector(n, x)), SquareFreePoly::linear(Gf2Vector(n, y)))
                            .is_zero())
            brute.insert(x);
      std::set<std::uint64_t> got;
      for (const auto& s : s_set(h)) {
        got.insert(s.x.bits());
        CHECK(h.product1(s.x.bits(), s.partner.bits()) == 0);
        CHECK(s.partner == s.x + s.alpha);
      }
      CHECK(got == brute);
    }
}

TEST_CASE("pullback along identity and Op1") {
  const RingPresentation h(kClass4);
  const SquareFreePoly p = SquareFreePoly::generator(2) + SquareFreePoly::monomial(0b011);
  CHECK(pullback(Gf2Matrix::identity(3), h, p) == p);

  const BottMatrix a = BottMatrix::from_ones(3, {{1, 2}});
  const Permutation sigma = Permutation::from_one_based({2, 3, 1});
  const auto b_opt = apply_op1(a, sigma);
  REQUIRE(b_opt.has_value());
  const BottMatrix b = *b_opt;
  const Gf2Matrix f = op_pullback_matrix(a, Op1{sigma});
  const RingPresentation hb(b);
  for (int j = 0; j < 3; ++j)
    CHECK(pullback(f, hb, SquareFreePoly::generator(j)) == SquareFreePoly::generator(sigma.image[j]));
  CHECK_THROWS_AS(pullback(Gf2Matrix::identity(2), hb, p), std::invalid_argument);
}

TEST_CASE("Op2 pullback sends x_k to y_k + alpha_k and kills every relation") {
  const BottMatrix a = BottMatrix::from_ones(3, {{1, 2}, {2, 3}});
  const BottMatrix b = apply_op2(a, 1);
  const RingPresentation ha(a);
  const RingPresentation hb(b);
  const Gf2Matrix f = op_pullback_matrix(a, Op2{1});
  CHECK(to_string(pullback(f, hb, SquareFreePoly::generator(1))) == "x1 + x2");
  for (int j = 0; j < 3; ++j) {
    const SquareFreePoly x = SquareFreePoly::generator(j);
    const SquareFreePoly img = pullback(f, hb, x);
    const SquareFreePoly rel = hb.square(img) + hb.multiply(img, pullback(f, hb, SquareFreePoly::linear(ha.alpha(j))));
    CHECK(rel.is_zero());
  }
}

TEST_CASE("every legal operation on B(3) induces a ring isomorphism") {
  for (std::uint64_t c = 0; c < count(3); ++c) {
    const BottMatrix a = BottMatrix::from_code(3, c);
    const RingPresentation ha(a);
    const auto check = [&](const BottOperation& op) {
      const BottMatrix b = apply_operation(a, op);
      CHECK(induces_ring_iso(op_pullback_matrix(a, op), ha, RingPresentation(b)));
    };
    Permutation s = Permutation::identity(3);
    do
      if (apply_op1(a, s)) check(Op1{s});
    while (std::next_permutation(s.image.begin(), s.image.end()));
    for (int k = 0; k < 3; ++k) check(Op2{k});
    for (const auto& cls : equal_column_classes(a))
      for (const Gf2Matrix& m : gl_all(static_cast<int>(cls.size())))
        if (apply_op3(a, cls, m)) check(Op3{cls, m});
  }
  // A non-isomorphism is rejected: identity from the torus ring to the Klein ring.
  CHECK_FALSE(induces_ring_iso(Gf2Matrix::identity(2), RingPresentation(BottMatrix(2)), RingPresentation(kKlein)));
}
