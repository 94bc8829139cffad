// Serial reference versus OpenMP kernels: classification and ring isomorphism search.

#include <chrono>
#include <cstdio>
#include <random>

#include <omp.h>

#include "bott/classify.hpp"
#include "bott/iso.hpp"

using namespace bott;

namespace {

template <class F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-10s %3s %8s %12s %12s %8s %6s\n", "kernel", "n", "classes", "serial_s", "parallel_s", "speedup", "same");
  for (int n = 2; n <= 5; ++n) {
    ClassTable ref;
    ClassTable fast;
    const double ts = seconds([&] { ref = classify_reference(n); });
    const double tp = seconds([&] { fast = classify_all(n); });
    std::printf("%-10s %3d %8zu %12.4f %12.4f %8.2f %6s\n", "classify", n, fast.classes.size(), ts, tp, ts / tp,
                ref.labels == fast.labels ? "yes" : "NO");
  }
  for (int threads : {1, 0}) {
    ClassifyOptions o;
    o.threads = threads;
    ClassTable t;
    const double tp = seconds([&] { t = classify_all(6, o); });
    std::printf("%-10s %3d %8zu %12s %12.4f %8s %6s  (threads=%s)\n", "classify", 6, t.classes.size(), "-", tp, "-",
                "-", threads == 0 ? "all" : "1");
  }

  std::printf("\n%-10s %3s %8s %12s %12s %8s %6s\n", "kernel", "n", "pairs", "serial_s", "parallel_s", "speedup", "same");
  std::mt19937_64 rng(1);
  for (int n = 3; n <= 5; ++n) {
    const int pairs = n == 5 ? 8 : 200;
    const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
    std::vector<std::pair<BottMatrix, BottMatrix>> work;
    for (int k = 0; k < pairs; ++k)
      work.emplace_back(BottMatrix::from_code(n, rng() % total), BottMatrix::from_code(n, rng() % total));
    std::vector<bool> s_found;
    std::vector<bool> p_found;
    const double ts = seconds([&] {
      for (const auto& [a, b] : work) s_found.push_back(find_iso_serial(a, b).has_value());
    });
    const double tp = seconds([&] {
      for (const auto& [a, b] : work) p_found.push_back(find_iso(a, b).has_value());
    });
    std::printf("%-10s %3d %8d %12.4f %12.4f %8.2f %6s\n", "find_iso", n, pairs, ts, tp, ts / tp,
                s_found == p_found ? "yes" : "NO");
  }
  return 0;
}
