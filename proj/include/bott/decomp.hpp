#pragma once

// Splitting H = Lambda(V) (x) H_S, Klein pairs and quotients, and the
// factorization of a Bott manifold into indecomposable factors.

#include <optional>
#include <string>
#include <vector>

#include "bott/bott_matrix.hpp"
#include "bott/classify.hpp"
#include "bott/report.hpp"

namespace bott {

struct HsSplit {
  int exterior_rank = 0;
  BottMatrix a_s;
  // Takes A to (exterior_rank zero 1x1 blocks) (+) a_s.
  std::vector<BottOperation> ops;
};

HsSplit extract_hs(const BottMatrix& a);

bool is_semisimple(const BottMatrix& a);

struct KleinPair {
  Gf2Vector x;
  Gf2Vector xbar;

  friend bool operator==(const KleinPair&, const KleinPair&) = default;
};

bool is_klein_pair(const BottMatrix& a, const KleinPair& p);

// {x_j, x_j + alpha_j} for the smallest j whose column is nonzero and
// supported on zero columns. Absent iff A = 0.
std::optional<KleinPair> find_klein_pair(const BottMatrix& a);

// Every Klein pair, each once, with x < xbar by bits.
std::vector<KleinPair> klein_pairs(const BottMatrix& a);

// Moves the pair to x = x_{l+1}, x + xbar = x_l (l = number of zero columns)
// with Op1 and two Op3 steps, then deletes rows and columns l and l+1.
// Throws std::invalid_argument if p is not a Klein pair of a. Each step is
// appended to log when given.
BottMatrix quotient_by_klein_pair(const BottMatrix& a, const KleinPair& p, std::vector<std::string>* log = nullptr);

struct Decomposition {
  int exterior_rank = 0;
  std::vector<BottMatrix> factors;  // canonical, sorted by compact encoding
  std::string provenance;

  int size() const;
};

// Splits the orbit member with the most support components and recurses.
Decomposition decompose(const BottMatrix& a, const OrbitOptions& options = {});

// Every support-disconnected member of every class of B(n) yields the same
// factor multiset. n <= 6.
VerifyReport verify_unique_decomposition(int n, const ClassifyOptions& options = {});

// (0) (+) A equivalent to (0) (+) A' implies A equivalent to A'. n <= 6.
VerifyReport verify_cancellation(int n, const ClassifyOptions& options = {});

}  // namespace bott
