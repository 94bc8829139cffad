#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "bott/classify.hpp"
#include "bott/cohomology.hpp"
#include "bott/decomp.hpp"

using namespace bott;

namespace {

std::uint64_t count(int n) { return std::uint64_t{1} << (n * (n - 1) / 2); }

KleinPair pair_of(int n, std::uint64_t x, std::uint64_t xbar) { return {Gf2Vector(n, x), Gf2Vector(n, xbar)}; }

std::vector<std::string> compact_list(const std::vector<BottMatrix>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(to_compact(m));
  return out;
}

// A rank n-2 map L on degree one, killing x and xbar and carrying every
// relation of H_A to zero in H_B, exists iff H_B presents H_A / (x, xbar).
bool presents_quotient(const BottMatrix& a, const KleinPair& p, const BottMatrix& b) {
  const int n = a.size();
  const int m = n - 2;
  if (b.size() != m) return false;
  const RingPresentation hb(b);
  const std::uint64_t cells = std::uint64_t{1} << (m * n);
  for (std::uint64_t code = 0; code < cells; ++code) {
    Gf2Matrix l(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) l.set(i, j, (code >> (i * n + j)) & 1u);
    if (rank(l) != m || !(l * p.x).is_zero() || !(l * p.xbar).is_zero()) continue;
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      const Gf2Vector img = l * Gf2Vector::unit(n, j);
      const Gf2Vector a_img = l * a.column(j);
      ok = hb.product1(img.bits(), (img + a_img).bits()) == 0;
    }
    if (ok) return true;
  }
  return false;
}

BottMatrix zeros_plus(int k, const std::vector<BottMatrix>& factors) {
  BottMatrix out(k);
  for (const auto& f : factors) out = direct_sum(out, f);
  return out;
}

const BottMatrix kKlein = BottMatrix::from_ones(2, {{1, 2}});

}  // namespace

TEST_CASE("extract_hs examples") {
  const HsSplit z = extract_hs(BottMatrix(3));
  CHECK(z.exterior_rank == 3);
  CHECK(z.a_s.size() == 0);

  const HsSplit k = extract_hs(kKlein);
  CHECK(k.exterior_rank == 0);
  CHECK(k.a_s == kKlein);
  CHECK(k.ops.empty());

  const HsSplit kz = extract_hs(direct_sum(kKlein, BottMatrix(1)));
  CHECK(kz.exterior_rank == 1);
  CHECK(canonical_form(kz.a_s) == kKlein);

  CHECK(is_semisimple(kKlein));
  CHECK_FALSE(is_semisimple(BottMatrix(1)));
  CHECK(is_semisimple(BottMatrix(0)));
}

TEST_CASE("extract_hs operations replay to zeros plus the remainder (n <= 5)") {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t c = 0; c < count(n); ++c) {
      const BottMatrix a = BottMatrix::from_code(n, c);
      const HsSplit s = extract_hs(a);
      BottMatrix b = a;
      for (const auto& op : s.ops) b = apply_operation(b, op);
      CHECK(b == direct_sum(BottMatrix(s.exterior_rank), s.a_s));
      CHECK(is_semisimple(s.a_s));
    }
}

TEST_CASE("Klein pair examples") {
  const auto k = find_klein_pair(kKlein);
  REQUIRE(k.has_value());
  CHECK(*k == pair_of(2, 0b10, 0b11));
  CHECK(is_klein_pair(kKlein, *k));
  CHECK_FALSE(is_klein_pair(kKlein, pair_of(2, 0b01, 0b10)));
  CHECK_FALSE(is_klein_pair(kKlein, pair_of(2, 0b10, 0b10)));
  CHECK_FALSE(is_klein_pair(kKlein, pair_of(3, 0b10, 0b11)));
  CHECK_FALSE(find_klein_pair(BottMatrix(4)).has_value());
  CHECK(klein_pairs(BottMatrix(4)).empty());
}

TEST_CASE("Klein pairs match the brute-force definition (n <= 4)") {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t c = 0; c < count(n); ++c) {
      const BottMatrix a = BottMatrix::from_code(n, c);
      const RingPresentation h(a);
      std::vector<KleinPair> brute;
      for (std::uint64_t x = 1; x < (std::uint64_t{1} << n); ++x)
        for (std::uint64_t y = x + 1; y < (std::uint64_t{1} << n); ++y)
          if (h.product1(x, y) == 0 && h.product1(x ^ y, x ^ y) == 0) brute.push_back(pair_of(n, x, y));
      const auto got = klein_pairs(a);
      CHECK(got == brute);
      CHECK(find_klein_pair(a).has_value() == !a.is_zero());
      if (const auto p = find_klein_pair(a)) CHECK(is_klein_pair(a, *p));
    }
}

TEST_CASE("quotient examples") {
  std::vector<std::string> log;
  CHECK(quotient_by_klein_pair(kKlein, *find_klein_pair(kKlein), &log).size() == 0);
  REQUIRE(!log.empty());
  CHECK(log.front() == "pair x=x2 alpha=x1");
  CHECK(log.back() == "delete rows/columns 1,2");

  const BottMatrix kk = direct_sum(kKlein, kKlein);
  CHECK(canonical_form(quotient_by_klein_pair(kk, *find_klein_pair(kk))) == kKlein);

  const BottMatrix c4 = BottMatrix::from_ones(3, {{1, 2}, {2, 3}});
  CHECK(quotient_by_klein_pair(c4, *find_klein_pair(c4)) == BottMatrix(1));

  CHECK_THROWS_AS(quotient_by_klein_pair(kKlein, pair_of(2, 0b01, 0b10)), std::invalid_argument);
}

TEST_CASE("the quotient class depends on the chosen pair") {
  const BottMatrix a = BottMatrix::from_ones(4, {{1, 2}, {1, 4}, {2, 3}});
  const KleinPair p = pair_of(4, 0b0010, 0b0011);
  const KleinPair q = pair_of(4, 0b1000, 0b1001);
  REQUIRE(is_klein_pair(a, p));
  REQUIRE(is_klein_pair(a, q));
  CHECK(canonical_form(quotient_by_klein_pair(a, p)) == BottMatrix(2));
  CHECK(canonical_form(quotient_by_klein_pair(a, q)) == kKlein);
  CHECK(presents_quotient(a, p, quotient_by_klein_pair(a, p)));
  CHECK(presents_quotient(a, q, quotient_by_klein_pair(a, q)));
}

TEST_CASE("every quotient presents H / (x, xbar) (n <= 4)") {
  for (int n = 2; n <= 4; ++n)
    for (std::uint64_t c = 0; c < count(n); ++c) {
      const BottMatrix a = BottMatrix::from_code(n, c);
      for (const auto& p : klein_pairs(a)) {
        const BottMatrix b = quotient_by_klein_pair(a, p);
        CHECK(presents_quotient(a, p, b));
        // Swapping the roles of x and xbar presents the same quotient ring.
        CHECK(presents_quotient(a, KleinPair{p.xbar, p.x}, quotient_by_klein_pair(a, KleinPair{p.xbar, p.x})));
      }
    }
}

TEST_CASE("decompose examples") {
  const Decomposition z = decompose(BottMatrix(3));
  CHECK(z.exterior_rank == 3);
  CHECK(z.factors.empty());
  CHECK(z.size() == 3);

  const Decomposition k = decompose(direct_sum(BottMatrix(1), kKlein));
  CHECK(k.exterior_rank == 1);
  CHECK(compact_list(k.factors) == std::vector<std::string>{"b2:8000000000000000"});
  CHECK(k.provenance.rfind("member=", 0) == 0);

  const Decomposition kk = decompose(direct_sum(kKlein, kKlein));
  CHECK(kk.exterior_rank == 0);
  CHECK(kk.factors.size() == 2);

  const Decomposition c4 = decompose(BottMatrix::from_ones(3, {{1, 2}, {2, 3}}));
  CHECK(c4.exterior_rank + static_cast<int>(c4.factors.size()) >= 1);
  CHECK(c4.size() == 3);
}

TEST_CASE("decomposition invariants (n <= 5)") {
  for (int n = 1; n <= 5; ++n) {
    const ClassTable t = classify_all(n);
    for (const auto& cls : t.classes) {
      const Decomposition d = decompose(cls.canonical);
      CHECK(d.size() == n);
      CHECK(canonical_form(zeros_plus(d.exterior_rank, d.factors)) == cls.canonical);
      CHECK(std::is_sorted(d.factors.begin(), d.factors.end(),
                           [](const BottMatrix& x, const BottMatrix& y) { return to_compact(x) < to_compact(y); }));
      for (const auto& f : d.factors) {
        CHECK(f.size() >= 2);
        CHECK(canonical_form(f) == f);
        const Decomposition fd = decompose(f);
        CHECK(fd.exterior_rank == 0);
        CHECK(fd.factors.size() == 1);
      }
    }
  }
}

TEST_CASE("decomposition is constant on classes (n <= 4)") {
  for (int n = 2; n <= 4; ++n) {
    const ClassTable t = classify_all(n);
    for (std::uint64_t c = 0; c < count(n); ++c) {
      const Decomposition d = decompose(BottMatrix::from_code(n, c));
      const Decomposition e = decompose(t.classes[t.labels[c]].canonical);
      CHECK(d.exterior_rank == e.exterior_rank);
      CHECK(d.factors == e.factors);
    }
  }
}

TEST_CASE("decomposition is additive under direct sums") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = 1 + static_cast<int>(rng() % 3);
    const int q = 1 + static_cast<int>(rng() % 3);
    const BottMatrix a = BottMatrix::from_code(p, rng() % count(p));
    const BottMatrix b = BottMatrix::from_code(q, rng() % count(q));
    const Decomposition da = decompose(a);
    const Decomposition db = decompose(b);
    const Decomposition ds = decompose(direct_sum(a, b));
    CHECK(ds.exterior_rank == da.exterior_rank + db.exterior_rank);
    std::vector<std::string> expect = compact_list(da.factors);
    for (const auto& s : compact_list(db.factors)) expect.push_back(s);
    std::sort(expect.begin(), expect.end());
    CHECK(compact_list(ds.factors) == expect);
  }
}

TEST_CASE("unique decomposition suite") {
  for (int n = 2; n <= 5; ++n) {
    const VerifyReport r = verify_unique_decomposition(n);
    CHECK(r.passed());
    CHECK(r.classes_checked == classify_all(n).classes.size());
  }
}

TEST_CASE("cancellation suite") {
  for (int n = 1; n <= 4; ++n) {
    const VerifyReport r = verify_cancellation(n);
    CHECK(r.passed());
    CHECK(r.cases_checked == count(n) * count(n));
  }
}
