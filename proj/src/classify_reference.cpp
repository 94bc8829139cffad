#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "bott/classify.hpp"

namespace bott {

namespace {

// Literal neighbour set: every permutation, every k, every C in GL(|I|, 2).
template <class F>
void for_each_literal_neighbour(const BottMatrix& a, int gl_ceiling, F&& f) {
  const int n = a.size();
  Permutation sigma = Permutation::identity(n);
  do {
    if (auto b = apply_op1(a, sigma)) f(*b);
  } while (std::next_permutation(sigma.image.begin(), sigma.image.end()));

  for (int k = 0; k < n; ++k) f(apply_op2(a, k));

  for (const auto& cls : equal_column_classes(a)) {
    // C * 0 = 0: a class whose rows all vanish has only the trivial image.
    if (std::all_of(cls.begin(), cls.end(), [&](int i) { return a.row_bits(i) == 0; })) continue;
    GlStream stream(static_cast<int>(cls.size()), gl_ceiling);
    Gf2Matrix c;
    while (stream.next(c))
      if (auto b = apply_op3(a, cls, c)) f(*b);
  }
}

}  // namespace

ClassTable classify_reference(int n, int gl_ceiling) {
  if (n < 0 || n > 6) throw std::invalid_argument("classify_reference: n must be in [0, 6]");
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
  std::vector<std::int64_t> label(total, -1);
  ClassTable table;
  table.n = n;
  table.provenance = "generators=literal serial-bfs";
  for (std::uint64_t start = 0; start < total; ++start) {
    if (label[start] >= 0) continue;
    const auto idx = static_cast<std::int64_t>(table.classes.size());
    BottClass cls;
    cls.canonical = BottMatrix::from_code(n, start);
    std::deque<std::uint64_t> queue{start};
    label[start] = idx;
    while (!queue.empty()) {
      const BottMatrix cur = BottMatrix::from_code(n, queue.front());
      queue.pop_front();
      ++cls.size;
      for_each_literal_neighbour(cur, gl_ceiling, [&](const BottMatrix& b) {
        const std::uint64_t code = b.code();
        if (label[code] >= 0) return;
        label[code] = idx;
        queue.push_back(code);
      });
    }
    table.classes.push_back(std::move(cls));
  }
  table.labels.assign(label.begin(), label.end());
  return table;
}

}  // namespace bott
