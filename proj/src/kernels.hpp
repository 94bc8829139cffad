#pragma once

// Allocation-free neighbour generators on packed matrices (n <= 11), shared by
// the orbit search and the parallel classifier.

#include <array>
#include <bit>
#include <cstdint>

#include "bott/bott_matrix.hpp"
#include "bott/errors.hpp"

namespace bott::detail {

struct Packed {
  int n = 0;
  std::array<std::uint64_t, kMaxCodeN> rows{};
};

inline Packed decode(int n, std::uint64_t code) {
  Packed p;
  p.n = n;
  int t = n * (n - 1) / 2 - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, --t)
      if ((code >> t) & 1u) p.rows[i] |= std::uint64_t{1} << j;
  return p;
}

inline std::uint64_t encode(const Packed& p) {
  std::uint64_t code = 0;
  for (int i = 0; i < p.n; ++i)
    for (int j = i + 1; j < p.n; ++j) code = (code << 1) | ((p.rows[i] >> j) & 1u);
  return code;
}

inline Packed pack(const BottMatrix& a) {
  Packed p;
  p.n = a.size();
  for (int i = 0; i < p.n; ++i) p.rows[i] = a.row_bits(i);
  return p;
}

inline std::array<std::uint64_t, kMaxCodeN> columns(const Packed& a) {
  std::array<std::uint64_t, kMaxCodeN> cols{};
  for (int i = 0; i < a.n; ++i)
    for (std::uint64_t r = a.rows[i]; r != 0; r &= r - 1) cols[std::countr_zero(r)] |= std::uint64_t{1} << i;
  return cols;
}

inline Packed op2(const Packed& a, int k) {
  Packed b = a;
  for (int i = 0; i < a.n; ++i)
    if ((a.rows[i] >> k) & 1u) b.rows[i] ^= a.rows[k];
  return b;
}

// Conjugation by the transposition (p p+1); legal iff A^p_{p+1} = 0.
inline Packed adjacent_swap(const Packed& a, int p) {
  Packed b;
  b.n = a.n;
  const auto swap_bits = [p](std::uint64_t r) {
    const std::uint64_t lo = (r >> p) & 1u;
    const std::uint64_t hi = (r >> (p + 1)) & 1u;
    r &= ~(std::uint64_t{3} << p);
    return r | (lo << (p + 1)) | (hi << p);
  };
  for (int i = 0; i < a.n; ++i) b.rows[i] = swap_bits(a.rows[i]);
  std::swap(b.rows[p], b.rows[p + 1]);
  return b;
}

// Calls f(sigma, image) for every permutation sigma whose Op1 image stays
// strictly upper triangular. Such sigma are exactly the topological orders of
// the support DAG: sigma^{-1} lists the vertices in an order respecting every
// edge i -> j with A^i_j = 1.
template <class F>
void for_each_linear_extension(const Packed& a, F&& f) {
  const int n = a.n;
  const auto pred = columns(a);
  std::array<int, kMaxCodeN> order{};
  std::array<int, kMaxCodeN> sigma{};
  const auto emit = [&] {
    for (int p = 0; p < n; ++p) sigma[order[p]] = p;
    Packed b;
    b.n = n;
    for (int i = 0; i < n; ++i) {
      std::uint64_t row = 0;
      for (std::uint64_t r = a.rows[i]; r != 0; r &= r - 1) row |= std::uint64_t{1} << sigma[std::countr_zero(r)];
      b.rows[sigma[i]] = row;
    }
    f(sigma, b);
  };
  // DFS over placement depth.
  const auto recurse = [&](auto&& self, int depth, std::uint64_t placed) -> void {
    if (depth == n) {
      emit();
      return;
    }
    for (int v = 0; v < n; ++v) {
      if ((placed >> v) & 1u) continue;
      if ((pred[v] & ~placed) != 0) continue;
      order[depth] = v;
      self(self, depth + 1, placed | (std::uint64_t{1} << v));
    }
  };
  recurse(recurse, 0, 0);
}

// Calls f(cls_mask, image) for every Op3 image of a that stays strictly upper
// triangular: for each equal-column class I with |I| >= 2 and nonzero rows,
// every |I|-tuple of rows spanning the row space of the rows in I. These are
// exactly the images C * R_I over C in GL(|I|, 2).
template <class F>
void for_each_op3_image(const Packed& a, F&& f) {
  const int n = a.n;
  const auto cols = columns(a);
  std::uint64_t assigned = 0;
  for (int s = 0; s < n; ++s) {
    if ((assigned >> s) & 1u) continue;
    std::uint64_t cls = 0;
    for (int j = s; j < n; ++j)
      if (cols[j] == cols[s]) cls |= std::uint64_t{1} << j;
    assigned |= cls;
    const int m = std::popcount(cls);
    if (m < 2) continue;

    std::array<int, kMaxCodeN> members{};
    std::array<std::uint64_t, kMaxCodeN> basis{};
    int idx = 0;
    for (std::uint64_t c = cls; c != 0; c &= c - 1) members[idx++] = std::countr_zero(c);
    int r = 0;
    {
      std::array<std::uint64_t, kMaxCodeN> work{};
      for (int p = 0; p < m; ++p) work[p] = a.rows[members[p]];
      for (int p = 0; p < m; ++p) {
        std::uint64_t v = work[p];
        for (int t = 0; t < r; ++t)
          if ((v ^ basis[t]) < v) v ^= basis[t];
        if (v == 0) continue;
        // Keep the basis sorted so the greedy reduction above is exact.
        basis[r++] = v;
        for (int t = r - 1; t > 0 && basis[t] > basis[t - 1]; --t) std::swap(basis[t], basis[t - 1]);
      }
    }
    if (r == 0) continue;
    if (r * m > 30) throw ResourceError("Op3 image enumeration too large (|I| * rank > 30)");

    const std::uint64_t digit_mask = (std::uint64_t{1} << r) - 1;
    const std::uint64_t total = std::uint64_t{1} << (r * m);
    for (std::uint64_t assign = 0; assign < total; ++assign) {
      // Spanning test on the m coefficient vectors in F^r.
      std::array<std::uint64_t, kMaxCodeN> ech{};
      int rk = 0;
      for (int p = 0; p < m && rk < r; ++p) {
        std::uint64_t v = (assign >> (p * r)) & digit_mask;
        for (int t = 0; t < rk; ++t)
          if ((v ^ ech[t]) < v) v ^= ech[t];
        if (v == 0) continue;
        ech[rk++] = v;
        for (int t = rk - 1; t > 0 && ech[t] > ech[t - 1]; --t) std::swap(ech[t], ech[t - 1]);
      }
      if (rk < r) continue;
      Packed b = a;
      bool upper = true;
      for (int p = 0; p < m && upper; ++p) {
        const std::uint64_t d = (assign >> (p * r)) & digit_mask;
        std::uint64_t row = 0;
        for (int t = 0; t < r; ++t)
          if ((d >> t) & 1u) row ^= basis[t];
        upper = (row & low_mask(members[p] + 1)) == 0;
        b.rows[members[p]] = row;
      }
      if (upper) f(cls, b);
    }
  }
}

}  // namespace bott::detail
