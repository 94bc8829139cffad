#pragma once

// Mod-2 cohomology ring of a real Bott manifold:
//   H = Z/2[x_1..x_n] / (x_j^2 = x_j alpha_j),  alpha_j = sum_i A^i_j x_i.
// Elements are kept in square-free normal form.

#include <cstdint>
#include <string>
#include <vector>

#include "bott/bott_matrix.hpp"
#include "bott/gf2.hpp"

namespace bott {

// A set of square-free monomials, each a bitmask of generator indices
// (bit i = x_{i+1}). Coefficients are implicit: present means 1.
class SquareFreePoly {
 public:
  SquareFreePoly() = default;

  static SquareFreePoly one();
  static SquareFreePoly monomial(std::uint64_t mask);
  static SquareFreePoly generator(int i);
  static SquareFreePoly linear(const Gf2Vector& v);

  // Sorted by degree, then by the ascending index lists.
  const std::vector<std::uint64_t>& monomials() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool contains(std::uint64_t mask) const;
  // -1 for zero; otherwise the degree if homogeneous, else throws.
  int degree() const;

  // Adds (toggles) a monomial.
  void toggle(std::uint64_t mask);
  SquareFreePoly& operator+=(const SquareFreePoly& other);
  friend SquareFreePoly operator+(SquareFreePoly a, const SquareFreePoly& b) { return a += b; }

  // Degree-1 part as a vector of the given dimension.
  Gf2Vector linear_part(int n) const;

  friend bool operator==(const SquareFreePoly&, const SquareFreePoly&) = default;

 private:
  std::vector<std::uint64_t> terms_;
};

// "x1*x3 + x2", or "0".
std::string to_string(const SquareFreePoly& p);

class RingPresentation {
 public:
  explicit RingPresentation(const BottMatrix& a);

  const BottMatrix& matrix() const { return a_; }
  int n() const { return a_.size(); }
  const std::vector<Gf2Vector>& alphas() const { return alphas_; }
  const Gf2Vector& alpha(int j) const { return alphas_[j]; }

  SquareFreePoly multiply(const SquareFreePoly& p, const SquareFreePoly& q) const;
  SquareFreePoly square(const SquareFreePoly& p) const { return multiply(p, p); }
  // p * x_i.
  SquareFreePoly multiply_generator(const SquareFreePoly& p, int i) const;

  // Product of two degree-1 elements as a bitmask over pair indices
  // (see pair_index). Table-driven.
  std::uint64_t product1(std::uint64_t u, std::uint64_t v) const;
  int pair_index(int a, int b) const;  // a < b
  SquareFreePoly degree2_poly(std::uint64_t pairs) const;

  // Square-free monomials of degree q, in monomial order.
  std::vector<std::uint64_t> basis(int q) const;
  // C(n, q), cross-checked against the monomial count. 0 <= q <= n.
  std::uint64_t betti(int q) const;

 private:
  BottMatrix a_;
  std::vector<Gf2Vector> alphas_;
  std::vector<int> pair_of_;                  // n*n, -1 off the upper triangle
  std::vector<std::uint64_t> pair_product_;   // n*n, x_a x_b as pair mask
};

struct EigenElement {
  Gf2Vector alpha;
  std::vector<int> indices;  // the j with alpha_j = alpha (0-based)
};

// {alpha_j} with duplicates merged, ascending by bits (0 first if present).
std::vector<EigenElement> eigen_elements(const RingPresentation& h);

struct EigenSpace {
  Gf2Vector alpha;
  std::vector<Gf2Vector> basis;  // alpha (when nonzero) first, then x_i with alpha_i = alpha
  int reduced_dim = 0;
  bool trivial = false;  // alpha is not an eigen-element; basis empty

  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const Gf2Vector& v) const;
};

EigenSpace eigen_space(const RingPresentation& h, const Gf2Vector& alpha);

// Elements with zero square: the eigen-space of 0.
EigenSpace nilpotent_space(const RingPresentation& h);

struct SElement {
  Gf2Vector x;
  Gf2Vector partner;  // x + alpha
  Gf2Vector alpha;
};

// S(H), ascending by x bits.
std::vector<SElement> s_set(const RingPresentation& h);

// Substitutes x_j -> sum_i F^i_j y_i and normalizes in h_b.
SquareFreePoly pullback(const Gf2Matrix& f, const RingPresentation& h_b, const SquareFreePoly& p);

// True iff v -> F v sends every relation x_j^2 + x_j alpha_j of h_a to zero
// in h_b and F is invertible, i.e. it induces a graded ring isomorphism.
bool induces_ring_iso(const Gf2Matrix& f, const RingPresentation& h_a, const RingPresentation& h_b);

// Degree-1 maps H_A -> H_B induced by each operation, where B = op(A).
Gf2Matrix op_pullback_matrix(const BottMatrix& a, const BottOperation& op);

}  // namespace bott
