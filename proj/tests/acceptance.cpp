// One line per acceptance criterion; exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "bott/affine.hpp"
#include "bott/classify.hpp"
#include "bott/cli.hpp"
#include "bott/cohomology.hpp"

using namespace bott;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome r{false, ""};
  try {
    r = body();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!r.ok) ++failures;
  std::printf("[%s] %2d %s: %s (%.2fs)\n", r.ok ? "PASS" : "FAIL", id, title.c_str(), r.detail.c_str(), secs);
  std::fflush(stdout);
}

std::uint64_t count(int n) { return std::uint64_t{1} << (n * (n - 1) / 2); }

std::string field(const std::string& text, const std::string& key) {
  const std::string tag = key + "=";
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(tag, 0) == 0) return line.substr(tag.size());
  return {};
}

std::set<std::uint64_t> class_codes(const ClassTable& t, const BottMatrix& a) {
  std::set<std::uint64_t> s;
  for (std::uint64_t c = 0; c < t.labels.size(); ++c)
    if (t.labels[c] == t.labels[a.code()]) s.insert(c);
  return s;
}

std::set<std::uint64_t> codes(std::initializer_list<BottMatrix> ms) {
  std::set<std::uint64_t> s;
  for (const auto& m : ms) s.insert(m.code());
  return s;
}

std::size_t classes_with_nonzero_columns(const ClassTable& t, int k) {
  std::set<std::uint32_t> labels;
  for (std::uint64_t c = 0; c < t.labels.size(); ++c)
    if (BottMatrix::from_code(t.n, c).nonzero_columns() == k) labels.insert(t.labels[c]);
  return labels.size();
}

Outcome verify_suite(const std::string& suite, int n, std::size_t pairs = 0) {
  VerifyArgs args;
  args.suite = suite;
  args.n = n;
  args.pairs = pairs;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cmd_verify(Config{}, args, out, err);
  const std::string text = out.str();
  return {code == kExitOk && field(text, "result") == "pass",
          "n=" + std::to_string(n) + " classes=" + field(text, "classes_checked") +
              " cases=" + field(text, "cases_checked") + " violations=" + field(text, "violations")};
}

}  // namespace

int main() {
  criterion(1, "class counts n=2..5", [] {
    const std::size_t expected[] = {2, 4, 12, 54};
    std::string detail;
    bool ok = true;
    for (int n = 2; n <= 5; ++n) {
      std::ostringstream out;
      std::ostringstream err;
      const int code = cmd_classify(Config{}, n, "", out, err);
      const std::string first = out.str().substr(0, out.str().find('\n'));
      ok = ok && code == 0 && first == std::to_string(expected[n - 2]) + " classes";
      detail += (n > 2 ? ", " : "") + first;
    }
    return Outcome{ok, detail};
  });

  criterion(2, "explicit B(3) classes", [] {
    const ClassTable t = classify_all(3);
    const auto m = [](std::initializer_list<std::pair<int, int>> ones) { return BottMatrix::from_ones(3, ones); };
    const bool ok = t.classes.size() == 4 && class_codes(t, BottMatrix(3)) == codes({BottMatrix(3)}) &&
                    class_codes(t, m({{1, 2}})) ==
                        codes({m({{1, 2}}), m({{1, 3}}), m({{2, 3}}), m({{1, 3}, {2, 3}})}) &&
                    class_codes(t, m({{1, 2}, {1, 3}})) == codes({m({{1, 2}, {1, 3}})}) &&
                    class_codes(t, m({{1, 2}, {2, 3}})) == codes({m({{1, 2}, {2, 3}}), m({{1, 2}, {1, 3}, {2, 3}})});
    return Outcome{ok, "orbit sizes 1, 4, 1, 2"};
  });

  criterion(3, "subfamily counts", [] {
    bool ok = true;
    std::string detail;
    const std::map<int, std::pair<std::size_t, std::size_t>> expected{{3, {1, 2}}, {4, {1, 4}}, {5, {1, 4}}};
    const BottMatrix reps[] = {BottMatrix::from_ones(3, {{1, 2}, {1, 3}}), BottMatrix::from_ones(3, {{1, 2}, {2, 3}}),
                               BottMatrix::from_ones(4, {{1, 4}, {2, 3}, {3, 4}}),
                               BottMatrix::from_ones(4, {{1, 4}, {2, 3}})};
    for (const auto& [n, want] : expected) {
      const ClassTable t = classify_all(n);
      const std::size_t b1 = classes_with_nonzero_columns(t, 1);
      const std::size_t b2 = classes_with_nonzero_columns(t, 2);
      ok = ok && b1 == want.first && b2 == want.second;
      detail += "B1(" + std::to_string(n) + ")=" + std::to_string(b1) + " B2(" + std::to_string(n) +
                ")=" + std::to_string(b2) + " ";
      if (n >= 4) {
        std::set<std::uint32_t> labels;
        for (const auto& r : reps) labels.insert(t.labels[direct_sum(BottMatrix(n - r.size()), r).code()]);
        ok = ok && labels.size() == 4;
      }
    }
    return Outcome{ok, detail + "representatives distinct"};
  });

  criterion(4, "Delta(n) reduced forms n=4,5,6", [] {
    bool ok = true;
    std::string detail;
    for (int n = 4; n <= 6; ++n) {
      const std::size_t want = std::size_t{1} << ((n - 2) * (n - 3) / 2);
      const ClassTable t = classify_all(n);
      std::set<std::uint64_t> reduced;
      for (std::uint64_t c = 0; c < count(n); ++c) {
        const BottMatrix a = BottMatrix::from_code(n, c);
        if (!in_delta(a)) continue;
        const BottMatrix r = delta_reduce(a);
        ok = ok && t.labels[r.code()] == t.labels[c];
        reduced.insert(r.code());
      }
      std::set<std::uint32_t> labels;
      for (std::uint64_t r : reduced) labels.insert(t.labels[r]);
      ok = ok && reduced.size() == want && labels.size() == reduced.size() && count_delta_classes(n) == want;
      detail += (n > 4 ? ", " : "") + std::to_string(reduced.size());
    }
    return Outcome{ok, detail + " (one per orbit)"};
  });

  criterion(5, "Betti numbers on B(4)", [] {
    const std::uint64_t binom[] = {1, 4, 6, 4, 1};
    bool ok = true;
    for (std::uint64_t c = 0; c < count(4); ++c) {
      const RingPresentation h(BottMatrix::from_code(4, c));
      for (int q = 0; q <= 4; ++q) ok = ok && h.basis(q).size() == binom[q];
    }
    return Outcome{ok, "64 matrices, dims 1,4,6,4,1"};
  });

  criterion(6, "ring isomorphism iff Bott equivalence", [] {
    const Outcome a = verify_suite("theorem-1", 3);
    const Outcome b = verify_suite("theorem-1", 4, 500);
    return Outcome{a.ok && b.ok, a.detail + "; " + b.detail};
  });

  criterion(7, "equivariant affine maps", [] {
    const AffineSweep all3 = verify_affine(3, 10, 1);
    const AffineSweep rnd4 = verify_affine(4, 10, 2, 250);
    std::size_t inst = 0;
    for (std::size_t k = 1; k < 4; ++k) inst += all3.rows[k].instances;
    return Outcome{all3.report.passed() && rnd4.report.passed() && rnd4.rows[4].instances >= 200,
                   "n=3 exhaustive " + std::to_string(inst) + " ops, n=4 random " +
                       std::to_string(rnd4.rows[4].instances) + " ops, violations " +
                       std::to_string(all3.report.violations.size() + rnd4.report.violations.size())};
  });

  criterion(8, "unique decomposition n=5", [] { return verify_suite("unique-decomposition", 5); });

  criterion(9, "cancellation n=4", [] { return verify_suite("cancellation", 4); });

  criterion(10, "n=6 classification properties", [] {
    std::ostringstream o1, o2, e;
    Config one;
    one.threads = 1;
    Config two;
    two.threads = 2;
    const int c1 = cmd_classify(one, 6, "", o1, e);
    const int c2 = cmd_classify(two, 6, "", o2, e);
    ClassifyOptions opt;
    opt.threads = 2;
    const ClassTable t = classify_all(6, opt);
    std::size_t strata = 0;
    for (int k = 0; k <= 6; ++k) strata += count_by_nonzero_columns(t, k);
    const std::size_t classes = t.classes.size();
    const bool ok = c1 == 0 && c2 == 0 && o1.str() == o2.str() && classes >= 64 && classes <= 32768 &&
                    strata == classes && t.labels.size() == 32768;
    return Outcome{ok, std::to_string(classes) + " classes, thread-independent, refines nonzero-column strata"};
  });

  std::printf("%s\n", failures == 0 ? "ALL PASS" : "FAILURES");
  return failures == 0 ? 0 : 1;
}
