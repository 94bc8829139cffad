#include "bott/iso.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bott/errors.hpp"

namespace bott {

namespace {

void check_sizes(const BottMatrix& a, const BottMatrix& b, const IsoOptions& options) {
  if (a.size() != b.size()) throw std::invalid_argument("find_iso: size mismatch");
  if (a.size() > options.max_n)
    throw BoundError("find_iso: n=" + std::to_string(a.size()) + " above ceiling " + std::to_string(options.max_n));
}

class Search {
 public:
  Search(const BottMatrix& a, const BottMatrix& b) : n_(a.size()), h_b_(b) {
    for (int j = 0; j < n_; ++j) alpha_.push_back(a.column_bits(j));
  }

  bool accepts(const Gf2Matrix& p) const {
    std::uint64_t cols[kMaxCodeN] = {};
    for (int i = 0; i < n_; ++i)
      for (std::uint64_t r = p.row_bits(i); r != 0; r &= r - 1) cols[std::countr_zero(r)] |= std::uint64_t{1} << i;
    for (int j = 0; j < n_; ++j) {
      std::uint64_t image = 0;  // P alpha_j
      for (std::uint64_t c = alpha_[j]; c != 0; c &= c - 1) image ^= cols[std::countr_zero(c)];
      if (h_b_.product1(cols[j], cols[j] ^ image) != 0) return false;
    }
    return true;
  }

  // First accepted matrix whose first row is first_row.
  std::optional<Gf2Matrix> scan(std::uint64_t first_row) const {
    GlStream stream(n_, first_row, n_);
    Gf2Matrix p;
    while (stream.next(p))
      if (accepts(p)) return p;
    return std::nullopt;
  }

  int n() const { return n_; }

 private:
  int n_;
  RingPresentation h_b_;
  std::vector<std::uint64_t> alpha_;
};

}  // namespace

std::optional<IsoWitness> find_iso_serial(const BottMatrix& a, const BottMatrix& b, const IsoOptions& options) {
  check_sizes(a, b, options);
  const int n = a.size();
  if (n == 0) return IsoWitness{Gf2Matrix(0, 0)};
  const Search search(a, b);
  for (std::uint64_t r = 1; r < (std::uint64_t{1} << n); ++r)
    if (auto p = search.scan(r)) return IsoWitness{*p};
  return std::nullopt;
}

std::optional<IsoWitness> find_iso(const BottMatrix& a, const BottMatrix& b, const IsoOptions& options) {
  check_sizes(a, b, options);
  const int n = a.size();
  if (n == 0) return IsoWitness{Gf2Matrix(0, 0)};
  const Search search(a, b);
  const auto rows = static_cast<std::int64_t>(std::uint64_t{1} << n);
  std::vector<std::optional<Gf2Matrix>> found(static_cast<std::size_t>(rows));
  // Smallest first row with a witness so far; larger rows are skipped.
  std::atomic<std::int64_t> best{rows};
  int threads = options.threads;
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#endif
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads > 0 ? threads : 1)
  for (std::int64_t r = 1; r < rows; ++r) {
    if (r > best.load(std::memory_order_relaxed)) continue;
    found[r] = search.scan(static_cast<std::uint64_t>(r));
    if (found[r]) {
      std::int64_t cur = best.load();
      while (r < cur && !best.compare_exchange_weak(cur, r)) {
      }
    }
  }
  const std::int64_t r = best.load();
  if (r == rows) return std::nullopt;
  return IsoWitness{*found[r]};
}

bool verify_iso(const BottMatrix& a, const BottMatrix& b, const IsoWitness& w) {
  const int n = a.size();
  if (b.size() != n || w.p.rows() != n || w.p.cols() != n) return false;
  if (n > 0 && !is_invertible(w.p)) return false;
  const RingPresentation h_a(a);
  const RingPresentation h_b(b);
  for (int j = 0; j < n; ++j) {
    const SquareFreePoly x = SquareFreePoly::generator(j);
    // x_j^2 + x_j alpha_j, written without normalizing in H_A.
    SquareFreePoly relation_image = h_b.square(pullback(w.p, h_b, x));
    relation_image += h_b.multiply(pullback(w.p, h_b, x), pullback(w.p, h_b, SquareFreePoly::linear(h_a.alpha(j))));
    if (!relation_image.is_zero()) return false;
  }
  return true;
}

Fingerprint fingerprint(const BottMatrix& a) {
  const RingPresentation h(a);
  Fingerprint f;
  f.nilpotent_dim = nilpotent_space(h).dim();
  f.s_size = s_set(h).size();
  const auto elements = eigen_elements(h);
  f.distinct_eigen = static_cast<int>(elements.size());
  for (const auto& e : elements)
    if (!e.alpha.is_zero()) f.eigen.emplace_back(eigen_space(h, e.alpha).dim(), static_cast<int>(e.indices.size()));
  std::sort(f.eigen.begin(), f.eigen.end());
  return f;
}

namespace {

std::string eigen_text(const std::vector<std::pair<int, int>>& e) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << '(' << e[i].first << ',' << e[i].second << ')';
  out << '}';
  return out.str();
}

}  // namespace

std::string to_string(const Fingerprint& f) {
  std::ostringstream out;
  out << '(' << f.nilpotent_dim << ", " << f.s_size << ", " << eigen_text(f.eigen) << ", " << f.distinct_eigen << ')';
  return out.str();
}

std::optional<std::string> fingerprint_difference(const Fingerprint& a, const Fingerprint& b) {
  if (a.nilpotent_dim != b.nilpotent_dim)
    return "dim N(H): " + std::to_string(a.nilpotent_dim) + " vs " + std::to_string(b.nilpotent_dim);
  if (a.s_size != b.s_size) return "|S(H)|: " + std::to_string(a.s_size) + " vs " + std::to_string(b.s_size);
  if (a.eigen != b.eigen) return "eigen-spaces: " + eigen_text(a.eigen) + " vs " + eigen_text(b.eigen);
  if (a.distinct_eigen != b.distinct_eigen)
    return "eigen-elements: " + std::to_string(a.distinct_eigen) + " vs " + std::to_string(b.distinct_eigen);
  return std::nullopt;
}

}  // namespace bott
