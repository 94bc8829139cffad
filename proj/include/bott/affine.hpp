#pragma once

// Exact checks of the G(A) action on the torus, the crystallographic group
// Gamma(A), and the equivariant affine maps behind Op1, Op2 and Op3.
//
// A torus point z is stored by its angle coordinates u in Q/Z, with
// z_i = exp(2 pi sqrt(-1) u_i): conjugation is u -> -u, -z is u + 1/2 and
// sqrt(-1) z is u + 1/4.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bott/bott_matrix.hpp"
#include "bott/report.hpp"

namespace bott {

inline constexpr std::int64_t kDefaultDenominatorCap = std::int64_t{1} << 20;

class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  // Representative in [0, 1).
  Rational mod1() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::string to_string(const Rational& r);

using TorusPoint = std::vector<Rational>;  // every coordinate in [0, 1)

std::string to_string(const TorusPoint& u);

// prod a_i^{e_i} in G(A).
struct GroupElement {
  int n = 0;
  std::uint64_t e = 0;

  static GroupElement generator(int n, int i) { return {n, std::uint64_t{1} << i}; }
  friend GroupElement operator*(GroupElement a, GroupElement b) { return {a.n, a.e ^ b.e}; }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// u -> sign * u + t on R^n.
struct EuclideanMotion {
  std::vector<int> sign;
  std::vector<Rational> t;

  static EuclideanMotion identity(int n);
  // s_i: u_i + 1/2, u_j -> (-1)^{A^i_j} u_j for j > i.
  static EuclideanMotion generator(const BottMatrix& a, int i);

  std::vector<Rational> apply(const std::vector<Rational>& u) const;
  EuclideanMotion compose(const EuclideanMotion& inner) const;  // this o inner
  EuclideanMotion inverse() const;
  bool is_translation() const;
};

TorusPoint act(const BottMatrix& a, const GroupElement& g, const TorusPoint& z);

// Generic rational points: denominators 2^k with 8 <= 2^k <= cap, no
// coordinate in {0, 1/4, 1/2, 3/4}. Fully determined by the seed.
class TorusSampler {
 public:
  explicit TorusSampler(std::uint64_t seed, std::int64_t denominator_cap = kDefaultDenominatorCap);
  TorusPoint next(int n);

 private:
  std::mt19937_64 rng_;
  int max_bits_;
};

VerifyReport check_commutativity_and_freeness(const BottMatrix& a, int samples, std::uint64_t seed);
VerifyReport check_gamma(const BottMatrix& a, int samples, std::uint64_t seed);

// phi: G(B) -> G(A) as a matrix F with phi(b_i) = prod_j a_j^{F^i_j}.
Gf2Matrix phi_matrix(const BottMatrix& a, const BottOperation& op);

// The lifted map f~ on angle coordinates, sending (T^n, G(B)) to (T^n, G(A)).
TorusPoint equivariant_map(const BottMatrix& a, const BottOperation& op, const TorusPoint& u);

// f~(b z) = phi(b) f~(z) for every generator b of G(B) = G(op(a)) on sampled
// points. Also checks that phi is bijective.
VerifyReport check_equivariance(const BottMatrix& a, const BottOperation& op, int samples, std::uint64_t seed);
VerifyReport check_equivariance_op1(const BottMatrix& a, const Permutation& sigma, int samples, std::uint64_t seed);
VerifyReport check_equivariance_op2(const BottMatrix& a, int k, int samples, std::uint64_t seed);
VerifyReport check_equivariance_op3(const BottMatrix& a, const std::vector<int>& cls, const Gf2Matrix& c, int samples,
                                    std::uint64_t seed);

// One line of the affine sweep: an operation kind and its totals.
struct AffineRow {
  std::string check;
  std::size_t instances = 0;
  std::size_t failures = 0;
};

struct AffineSweep {
  std::vector<AffineRow> rows;
  VerifyReport report;
};

// Every legal (A, op) in B(n) when max_instances is 0, otherwise that many
// random instances drawn with the seed. Also runs the action checks on
// every sampled matrix.
AffineSweep verify_affine(int n, int samples, std::uint64_t seed, std::size_t max_instances = 0);

}  // namespace bott
