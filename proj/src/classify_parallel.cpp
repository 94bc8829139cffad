#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bott/classify.hpp"
#include "bott/errors.hpp"
#include "kernels.hpp"

namespace bott {

namespace {

using detail::Packed;
using Edge = std::pair<std::uint32_t, std::uint32_t>;

constexpr int kHardMaxN = 7;
constexpr std::uint64_t kChunk = std::uint64_t{1} << 16;

class UnionFind {
 public:
  explicit UnionFind(std::size_t size) : parent_(size) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // The smaller root survives, so every root is the minimum of its set.
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Every generator used here has its inverse in the set (Op2 and the adjacent
// swaps are involutions; Op3 preserves the column partition, so C^{-1} is
// legal from the image), hence each undirected edge is seen from both ends
// and only the edge towards the smaller code is emitted.
void generate_edges(int n, std::uint32_t code, std::vector<Edge>& out) {
  const Packed a = detail::decode(n, code);
  const auto emit = [&](const Packed& b) {
    const auto other = static_cast<std::uint32_t>(detail::encode(b));
    if (other < code) out.emplace_back(code, other);
  };
  for (int k = 0; k < n; ++k) emit(detail::op2(a, k));
  for (int p = 0; p + 1 < n; ++p)
    if (((a.rows[p] >> (p + 1)) & 1u) == 0) emit(detail::adjacent_swap(a, p));
  detail::for_each_op3_image(a, [&](std::uint64_t, const Packed& b) { emit(b); });
}

}  // namespace

ClassTable classify_all(int n, const ClassifyOptions& options) {
  if (n < 0) throw std::invalid_argument("classify_all: negative n");
  if (n > options.max_n || n > kHardMaxN)
    throw BoundError("classify_all: n=" + std::to_string(n) + " above max_n=" +
                     std::to_string(std::min(options.max_n, kHardMaxN)));
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
  int threads = options.threads;
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#else
  threads = 1;
#endif

  UnionFind uf(total);
  std::vector<std::vector<Edge>> buffers(threads);
  for (std::uint64_t base = 0; base < total; base += kChunk) {
    const auto end = static_cast<std::int64_t>(std::min(total, base + kChunk));
#pragma omp parallel num_threads(threads)
    {
#ifdef _OPENMP
      auto& buf = buffers[omp_get_thread_num()];
#else
      auto& buf = buffers[0];
#endif
      buf.clear();
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t c = static_cast<std::int64_t>(base); c < end; ++c)
        generate_edges(n, static_cast<std::uint32_t>(c), buf);
    }
    // The final partition does not depend on merge order.
    for (const auto& buf : buffers)
      for (const auto& [x, y] : buf) uf.unite(x, y);
  }

  ClassTable table;
  table.n = n;
  table.provenance = "generators=op2,adjacent-op1,op3-rowspace union-find; bott " + std::string(kToolVersion);
  std::vector<std::uint32_t> labels(total);
  for (std::uint64_t c = 0; c < total; ++c) {
    const std::uint32_t root = uf.find(static_cast<std::uint32_t>(c));
    if (root == c) {
      labels[c] = static_cast<std::uint32_t>(table.classes.size());
      BottClass cls;
      cls.canonical = BottMatrix::from_code(n, c);
      table.classes.push_back(std::move(cls));
    } else {
      labels[c] = labels[root];
    }
    ++table.classes[labels[c]].size;
  }
  if (options.keep_labels) table.labels = std::move(labels);
  return table;
}

}  // namespace bott
