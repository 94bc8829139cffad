#pragma once

// Brute-force graded ring isomorphism between two Bott cohomology rings.
// A ring map is fixed by its degree-1 part, so the search runs over GL(n, 2).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bott/bott_matrix.hpp"
#include "bott/cohomology.hpp"

namespace bott {

inline constexpr int kIsoMaxN = 5;

struct IsoOptions {
  int max_n = kIsoMaxN;
  int threads = 0;  // 0 = OpenMP default
};

// P with x_j -> sum_i P^i_j y_i.
struct IsoWitness {
  Gf2Matrix p;
};

// First P in GlStream order mapping every relation of H_A to zero in H_B.
// Throws std::invalid_argument on a size mismatch, BoundError above max_n.
std::optional<IsoWitness> find_iso(const BottMatrix& a, const BottMatrix& b, const IsoOptions& options = {});
// Single-threaded scan in the same order; same result.
std::optional<IsoWitness> find_iso_serial(const BottMatrix& a, const BottMatrix& b, const IsoOptions& options = {});

// Re-checks a witness by normalizing each relation image in SquareFreePoly form.
bool verify_iso(const BottMatrix& a, const BottMatrix& b, const IsoWitness& w);

struct Fingerprint {
  int nilpotent_dim = 0;
  std::size_t s_size = 0;
  std::vector<std::pair<int, int>> eigen;  // (dim E(alpha), multiplicity), alpha != 0, sorted
  int distinct_eigen = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const BottMatrix& a);
std::string to_string(const Fingerprint& f);

// First differing field, e.g. "dim N(H): 2 vs 1"; nullopt when equal.
std::optional<std::string> fingerprint_difference(const Fingerprint& a, const Fingerprint& b);

}  // namespace bott
