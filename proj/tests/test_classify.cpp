#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "bott/classify.hpp"
#include "bott/errors.hpp"

using namespace bott;

namespace {

std::set<std::uint64_t> member_codes(const ClassTable& t, const BottMatrix& a) {
  std::set<std::uint64_t> s;
  const std::uint32_t label = t.labels[a.code()];
  for (std::uint64_t c = 0; c < t.labels.size(); ++c)
    if (t.labels[c] == label) s.insert(c);
  return s;
}

std::set<std::uint64_t> codes(std::initializer_list<BottMatrix> ms) {
  std::set<std::uint64_t> s;
  for (const auto& m : ms) s.insert(m.code());
  return s;
}

// Places the lower-right corner block b inside an n x n zero matrix.
BottMatrix corner(int n, const BottMatrix& b) { return direct_sum(BottMatrix(n - b.size()), b); }

std::size_t classes_among(const ClassTable& t, int k) {
  std::set<std::uint32_t> labels;
  for (std::uint64_t c = 0; c < t.labels.size(); ++c)
    if (BottMatrix::from_code(t.n, c).nonzero_columns() == k) labels.insert(t.labels[c]);
  return labels.size();
}

}  // namespace

TEST_CASE("class counts for n <= 5") {
  const std::size_t expected[] = {1, 1, 2, 4, 12, 54};
  for (int n = 0; n <= 5; ++n) CHECK(classify_all(n).classes.size() == expected[n]);
}

TEST_CASE("parallel classifier matches the literal serial reference") {
  for (int n = 0; n <= 5; ++n) {
    const ClassTable fast = classify_all(n);
    const ClassTable ref = classify_reference(n);
    CHECK(fast.labels == ref.labels);
    REQUIRE(fast.classes.size() == ref.classes.size());
    for (std::size_t i = 0; i < fast.classes.size(); ++i) {
      CHECK(fast.classes[i].canonical == ref.classes[i].canonical);
      CHECK(fast.classes[i].size == ref.classes[i].size);
    }
  }
}

TEST_CASE("thread count does not change the partition") {
  ClassifyOptions one;
  one.threads = 1;
  ClassifyOptions four;
  four.threads = 4;
  const ClassTable a = classify_all(6, one);
  const ClassTable b = classify_all(6, four);
  CHECK(a.labels == b.labels);
  CHECK(a.classes.size() == b.classes.size());
  CHECK(a.classes.size() >= 64);
  CHECK(a.classes.size() <= 32768);
}

TEST_CASE("the four classes of B(3)") {
  const ClassTable t = classify_all(3);
  REQUIRE(t.classes.size() == 4);
  const BottMatrix zero(3);
  CHECK(member_codes(t, zero) == codes({zero}));
  CHECK(member_codes(t, BottMatrix::from_ones(3, {{1, 2}})) ==
        codes({BottMatrix::from_ones(3, {{1, 2}}), BottMatrix::from_ones(3, {{1, 3}}),
               BottMatrix::from_ones(3, {{2, 3}}), BottMatrix::from_ones(3, {{1, 3}, {2, 3}})}));
  CHECK(member_codes(t, BottMatrix::from_ones(3, {{1, 2}, {1, 3}})) ==
        codes({BottMatrix::from_ones(3, {{1, 2}, {1, 3}})}));
  CHECK(member_codes(t, BottMatrix::from_ones(3, {{1, 2}, {2, 3}})) ==
        codes({BottMatrix::from_ones(3, {{1, 2}, {2, 3}}), BottMatrix::from_ones(3, {{1, 2}, {1, 3}, {2, 3}})}));
}

TEST_CASE("orbit agrees with the class table") {
  const ClassTable t = classify_all(4);
  for (const BottClass& c : t.classes) {
    const BottClass o = orbit(c.canonical);
    CHECK(o.canonical == c.canonical);
    CHECK(o.size == c.size);
    std::set<std::uint64_t> got;
    for (const auto& m : o.members) got.insert(m.code());
    CHECK(got == member_codes(t, c.canonical));
  }
}

TEST_CASE("witnesses replay to the target") {
  const BottMatrix a = BottMatrix::from_ones(3, {{1, 2}, {2, 3}});
  const BottMatrix b = BottMatrix::from_ones(3, {{1, 2}, {1, 3}, {2, 3}});
  const Equivalence e = are_equivalent(a, b);
  REQUIRE(e.equivalent);
  REQUIRE(e.witness.size() == 1);
  CHECK(describe(e.witness[0]) == "Op2 k=2");

  const ClassTable t = classify_all(4);
  for (std::uint64_t x = 0; x < 64; x += 5)
    for (std::uint64_t y = 0; y < 64; y += 3) {
      const BottMatrix p = BottMatrix::from_code(4, x);
      const BottMatrix q = BottMatrix::from_code(4, y);
      const Equivalence r = are_equivalent(p, q);
      CHECK(r.equivalent == (t.labels[x] == t.labels[y]));
      if (r.equivalent) {
        BottMatrix cur = p;
        for (const auto& op : r.witness) cur = apply_operation(cur, op);
        CHECK(cur == q);
      }
    }
}

TEST_CASE("subfamilies by number of nonzero columns") {
  for (int n = 3; n <= 5; ++n) CHECK(classes_among(classify_all(n), 1) == 1);
  CHECK(classes_among(classify_all(3), 2) == 2);
  CHECK(classes_among(classify_all(4), 2) == 4);
  CHECK(classes_among(classify_all(5), 2) == 4);

  const BottMatrix r1 = BottMatrix::from_ones(3, {{1, 2}, {1, 3}});
  const BottMatrix r2 = BottMatrix::from_ones(3, {{1, 2}, {2, 3}});
  const BottMatrix r3 = BottMatrix::from_ones(4, {{1, 4}, {2, 3}, {3, 4}});
  const BottMatrix r4 = BottMatrix::from_ones(4, {{1, 4}, {2, 3}});
  for (int n = 4; n <= 5; ++n) {
    const ClassTable t = classify_all(n);
    std::set<std::uint32_t> labels;
    for (const BottMatrix& r : {r1, r2, r3, r4}) {
      const BottMatrix m = corner(n, r);
      CHECK(m.nonzero_columns() == 2);
      labels.insert(t.labels[m.code()]);
    }
    CHECK(labels.size() == 4);
  }
}

TEST_CASE("count_by_nonzero_columns sums to the class count") {
  for (int n = 2; n <= 6; ++n) {
    const ClassTable t = classify_all(n);
    std::size_t sum = 0;
    for (int k = 0; k < n; ++k) sum += count_by_nonzero_columns(t, k);
    CHECK(sum == t.classes.size());
  }
}

TEST_CASE("Delta(n): one reduced form per class") {
  for (int n = 4; n <= 6; ++n) {
    CHECK(count_delta_classes(n) == (std::size_t{1} << ((n - 2) * (n - 3) / 2)));
    const ClassTable t = classify_all(n);
    std::set<std::uint64_t> reduced;
    for (std::uint64_t c = 0; c < t.labels.size(); ++c) {
      const BottMatrix a = BottMatrix::from_code(n, c);
      if (in_delta(a)) reduced.insert(delta_reduce(a).code());
    }
    std::set<std::uint32_t> labels;
    for (std::uint64_t r : reduced) labels.insert(t.labels[r]);
    CHECK(labels.size() == reduced.size());
  }
  CHECK(count_delta_classes(4) == 2);
  CHECK(count_delta_classes(5) == 8);
  CHECK(count_delta_classes(6) == 64);
}

TEST_CASE("class table TSV round-trips") {
  const ClassTable t = classify_all(4);
  std::stringstream buf;
  write_class_table(buf, t);
  const std::string text = buf.str();
  CHECK(text.rfind("# bott-classes n=4 generators=full\n", 0) == 0);
  const ClassTable back = read_class_table(buf);
  CHECK(back.n == 4);
  REQUIRE(back.classes.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(back.classes[i].canonical == t.classes[i].canonical);
    CHECK(back.classes[i].size == t.classes[i].size);
  }
  CHECK(back.class_of(BottMatrix::from_code(4, 63)) == t.labels[63]);

  std::stringstream bad("# something else\n");
  CHECK_THROWS_AS(read_class_table(bad), ParseError);
  std::stringstream bad_row("# bott-classes n=2 generators=full\nb2:8000000000000000 1\n");
  CHECK_THROWS_AS(read_class_table(bad_row), ParseError);
}

TEST_CASE("bounds and budgets") {
  CHECK_THROWS_AS(classify_all(8), BoundError);
  ClassifyOptions small;
  small.max_n = 4;
  CHECK_THROWS_AS(classify_all(5, small), BoundError);
  OrbitOptions tiny;
  tiny.memory_budget = 128;
  CHECK_THROWS_AS(orbit(BottMatrix::from_ones(4, {{1, 2}}), tiny), ResourceError);
}
