#include "bott/affine.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "bott/cohomology.hpp"

namespace bott {

namespace {

Rational reduce(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num;
  __int128 b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  constexpr __int128 kMax = INT64_MAX;
  if (num > kMax || num < -kMax || den > kMax) throw std::overflow_error("Rational: value exceeds 64 bits");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::mod1() const {
  std::int64_t r = num_ % den_;
  if (r < 0) r += den_;
  return Rational(r, den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return reduce(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return reduce(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string to_string(const Rational& r) {
  if (r.den() == 1) return std::to_string(r.num());
  return std::to_string(r.num()) + "/" + std::to_string(r.den());
}

std::string to_string(const TorusPoint& u) {
  std::string s = "(";
  for (std::size_t i = 0; i < u.size(); ++i) s += (i ? ", " : "") + to_string(u[i]);
  return s + ")";
}

EuclideanMotion EuclideanMotion::identity(int n) { return {std::vector<int>(n, 1), std::vector<Rational>(n)}; }

EuclideanMotion EuclideanMotion::generator(const BottMatrix& a, int i) {
  EuclideanMotion s = identity(a.size());
  s.t[i] = Rational(1, 2);
  for (int j = i + 1; j < a.size(); ++j)
    if (a.get(i, j)) s.sign[j] = -1;
  return s;
}

std::vector<Rational> EuclideanMotion::apply(const std::vector<Rational>& u) const {
  std::vector<Rational> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (sign[i] < 0 ? -u[i] : u[i]) + t[i];
  return out;
}

EuclideanMotion EuclideanMotion::compose(const EuclideanMotion& inner) const {
  EuclideanMotion out = identity(static_cast<int>(sign.size()));
  for (std::size_t i = 0; i < sign.size(); ++i) {
    out.sign[i] = sign[i] * inner.sign[i];
    out.t[i] = (sign[i] < 0 ? -inner.t[i] : inner.t[i]) + t[i];
  }
  return out;
}

EuclideanMotion EuclideanMotion::inverse() const {
  EuclideanMotion out = identity(static_cast<int>(sign.size()));
  for (std::size_t i = 0; i < sign.size(); ++i) {
    out.sign[i] = sign[i];
    out.t[i] = sign[i] < 0 ? t[i] : -t[i];
  }
  return out;
}

bool EuclideanMotion::is_translation() const {
  return std::all_of(sign.begin(), sign.end(), [](int s) { return s == 1; });
}

namespace {

void generator_act(const BottMatrix& a, int i, TorusPoint& u) {
  u[i] = (u[i] + Rational(1, 2)).mod1();
  for (std::uint64_t r = a.row_bits(i); r != 0; r &= r - 1) {
    const int j = std::countr_zero(r);
    u[j] = (-u[j]).mod1();
  }
}

TorusPoint reduce_mod1(std::vector<Rational> u) {
  for (auto& x : u) x = x.mod1();
  return u;
}

std::string point_note(const TorusPoint& z) { return " at u=" + to_string(z); }

}  // namespace

TorusPoint act(const BottMatrix& a, const GroupElement& g, const TorusPoint& z) {
  if (static_cast<int>(z.size()) != a.size() || g.n != a.size()) throw std::invalid_argument("act: size mismatch");
  TorusPoint u = z;
  for (std::uint64_t e = g.e; e != 0; e &= e - 1) generator_act(a, std::countr_zero(e), u);
  return u;
}

TorusSampler::TorusSampler(std::uint64_t seed, std::int64_t denominator_cap) : rng_(seed) {
  max_bits_ = 63 - std::countl_zero(static_cast<std::uint64_t>(denominator_cap));
  if (max_bits_ < 3) throw std::invalid_argument("TorusSampler: denominator cap below 8");
}

TorusPoint TorusSampler::next(int n) {
  TorusPoint u(n);
  for (auto& x : u) {
    const int bits = std::uniform_int_distribution<int>(3, max_bits_)(rng_);
    const std::int64_t den = std::int64_t{1} << bits;
    std::uniform_int_distribution<std::int64_t> pick(0, den - 1);
    std::int64_t num = 0;
    do num = pick(rng_);
    while (num % (den / 4) == 0);
    x = Rational(num, den);
  }
  return u;
}

VerifyReport check_commutativity_and_freeness(const BottMatrix& a, int samples, std::uint64_t seed) {
  const int n = a.size();
  VerifyReport r;
  r.suite = "commutativity-freeness";
  r.n = n;
  TorusSampler sampler(seed);
  for (int s = 0; s < samples; ++s) {
    const TorusPoint z = sampler.next(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        ++r.cases_checked;
        const TorusPoint ij = act(a, GroupElement::generator(n, i), act(a, GroupElement::generator(n, j), z));
        const TorusPoint ji = act(a, GroupElement::generator(n, j), act(a, GroupElement::generator(n, i), z));
        if (ij != ji)
          r.violations.push_back(to_compact(a) + ": a" + std::to_string(i + 1) + " a" + std::to_string(j + 1) +
                                 " do not commute" + point_note(z));
      }
    for (std::uint64_t e = 1; e < (std::uint64_t{1} << n); ++e) {
      ++r.cases_checked;
      if (act(a, GroupElement{n, e}, z) == z)
        r.violations.push_back(to_compact(a) + ": element " + std::to_string(e) + " fixes" + point_note(z));
    }
  }
  return r;
}

VerifyReport check_gamma(const BottMatrix& a, int samples, std::uint64_t seed) {
  const int n = a.size();
  VerifyReport r;
  r.suite = "gamma";
  r.n = n;
  TorusSampler sampler(seed);
  std::vector<EuclideanMotion> s;
  for (int i = 0; i < n; ++i) s.push_back(EuclideanMotion::generator(a, i));
  for (int k = 0; k < samples; ++k) {
    const TorusPoint z = sampler.next(n);
    for (int i = 0; i < n; ++i) {
      ++r.cases_checked;
      const EuclideanMotion sq = s[i].compose(s[i]);
      std::vector<Rational> diff = sq.apply(z);
      for (int j = 0; j < n; ++j) diff[j] = diff[j] - z[j];
      std::vector<Rational> unit(n);
      unit[i] = Rational(1);
      if (!sq.is_translation() || diff != unit)
        r.violations.push_back(to_compact(a) + ": s" + std::to_string(i + 1) + "^2 is not the unit translation");
      if (reduce_mod1(s[i].apply(z)) != act(a, GroupElement::generator(n, i), z))
        r.violations.push_back(to_compact(a) + ": s" + std::to_string(i + 1) + " does not cover a" +
                               std::to_string(i + 1) + point_note(z));
      for (int j = i + 1; j < n; ++j) {
        ++r.cases_checked;
        if (reduce_mod1(s[i].compose(s[j]).apply(z)) != reduce_mod1(s[j].compose(s[i]).apply(z)))
          r.violations.push_back(to_compact(a) + ": s" + std::to_string(i + 1) + ", s" + std::to_string(j + 1) +
                                 " do not commute mod Z^n" + point_note(z));
      }
    }
  }
  return r;
}

Gf2Matrix phi_matrix(const BottMatrix& a, const BottOperation& op) {
  const int n = a.size();
  Gf2Matrix f = Gf2Matrix::identity(n);
  if (const auto* o1 = std::get_if<Op1>(&op)) {
    f = Gf2Matrix(n, n);
    for (int i = 0; i < n; ++i) f.set(o1->sigma.image[i], i, true);  // phi(b_sigma(i)) = a_i
  } else if (const auto* o2 = std::get_if<Op2>(&op)) {
    for (int i = 0; i < n; ++i)
      if (a.get(i, o2->k)) f.set(i, o2->k, true);  // phi(b_i) = a_i a_k^{A^i_k}
  } else {
    const auto& o3 = std::get<Op3>(op);
    const int m = static_cast<int>(o3.cls.size());
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q) f.set(o3.cls[p], o3.cls[q], o3.c.get(p, q));
  }
  return f;
}

TorusPoint equivariant_map(const BottMatrix& a, const BottOperation& op, const TorusPoint& u) {
  const int n = a.size();
  if (static_cast<int>(u.size()) != n) throw std::invalid_argument("equivariant_map: size mismatch");
  if (const auto* o1 = std::get_if<Op1>(&op)) {
    TorusPoint out(n);
    for (int k = 0; k < n; ++k) out[k] = u[o1->sigma.image[k]];
    return out;
  }
  if (const auto* o2 = std::get_if<Op2>(&op)) {
    TorusPoint out = u;
    out[o2->k] = (out[o2->k] + Rational(1, 4)).mod1();
    return out;
  }
  const auto& o3 = std::get<Op3>(op);
  const IntMatrix lift = lift_to_integers(o3.c);
  const int m = static_cast<int>(o3.cls.size());
  TorusPoint out = u;
  for (int q = 0; q < m; ++q) {
    Rational v;
    for (int p = 0; p < m; ++p) v = v + Rational(lift.at(p, q)) * u[o3.cls[p]];
    out[o3.cls[q]] = v.mod1();
  }
  return out;
}

VerifyReport check_equivariance(const BottMatrix& a, const BottOperation& op, int samples, std::uint64_t seed) {
  const int n = a.size();
  VerifyReport r;
  r.suite = "equivariance";
  r.n = n;
  const BottMatrix b = apply_operation(a, op);
  const Gf2Matrix f = phi_matrix(a, op);
  const std::string label = to_compact(a) + " " + describe(op);
  if (n > 0 && !is_invertible(f)) r.violations.push_back(label + ": phi is not bijective");
  TorusSampler sampler(seed);
  for (int s = 0; s < samples; ++s) {
    const TorusPoint z = sampler.next(n);
    const TorusPoint fz = equivariant_map(a, op, z);
    for (int i = 0; i < n; ++i) {
      ++r.cases_checked;
      const TorusPoint lhs = equivariant_map(a, op, act(b, GroupElement::generator(n, i), z));
      const TorusPoint rhs = act(a, GroupElement{n, f.row_bits(i)}, fz);
      if (lhs != rhs) r.violations.push_back(label + ": fails for b" + std::to_string(i + 1) + point_note(z));
    }
  }
  return r;
}

VerifyReport check_equivariance_op1(const BottMatrix& a, const Permutation& sigma, int samples, std::uint64_t seed) {
  return check_equivariance(a, Op1{sigma}, samples, seed);
}

VerifyReport check_equivariance_op2(const BottMatrix& a, int k, int samples, std::uint64_t seed) {
  return check_equivariance(a, Op2{k}, samples, seed);
}

VerifyReport check_equivariance_op3(const BottMatrix& a, const std::vector<int>& cls, const Gf2Matrix& c, int samples,
                                    std::uint64_t seed) {
  return check_equivariance(a, Op3{cls, c}, samples, seed);
}

namespace {

struct Instance {
  BottMatrix a;
  BottOperation op;
};

template <class F>
void for_each_legal_op(const BottMatrix& a, F&& f) {
  const int n = a.size();
  Permutation sigma = Permutation::identity(n);
  do {
    if (apply_op1(a, sigma)) f(BottOperation{Op1{sigma}});
  } while (std::next_permutation(sigma.image.begin(), sigma.image.end()));
  for (int k = 0; k < n; ++k) f(BottOperation{Op2{k}});
  for (const auto& cls : equal_column_classes(a))
    for (const Gf2Matrix& c : gl_all(static_cast<int>(cls.size())))
      if (apply_op3(a, cls, c)) f(BottOperation{Op3{cls, c}});
}

// A uniformly random linear extension of the support order.
Permutation random_legal_permutation(const BottMatrix& a, std::mt19937_64& rng) {
  const int n = a.size();
  std::vector<int> indegree(n, 0);
  for (int j = 0; j < n; ++j) indegree[j] = std::popcount(a.column_bits(j));
  Permutation sigma = Permutation::identity(n);
  std::vector<bool> placed(n, false);
  for (int pos = 0; pos < n; ++pos) {
    std::vector<int> ready;
    for (int i = 0; i < n; ++i)
      if (!placed[i] && indegree[i] == 0) ready.push_back(i);
    const int pick = ready[std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng)];
    placed[pick] = true;
    sigma.image[pick] = pos;
    for (std::uint64_t r = a.row_bits(pick); r != 0; r &= r - 1) --indegree[std::countr_zero(r)];
  }
  return sigma;
}

Instance random_instance(int n, std::mt19937_64& rng) {
  const int bits = n * (n - 1) / 2;
  const std::uint64_t code = bits == 0 ? 0 : rng() & low_mask(bits);
  const BottMatrix a = BottMatrix::from_code(n, code);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return {a, Op1{random_legal_permutation(a, rng)}};
    case 1:
      return {a, Op2{std::uniform_int_distribution<int>(0, n - 1)(rng)}};
    default:
      break;
  }
  const auto classes = equal_column_classes(a);
  const auto& cls = classes[std::uniform_int_distribution<std::size_t>(0, classes.size() - 1)(rng)];
  const int m = static_cast<int>(cls.size());
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<std::uint64_t> rows(m);
    for (auto& row : rows) row = rng() & low_mask(m);
    const Gf2Matrix c = Gf2Matrix::from_rows(m, rows);
    if (is_invertible(c) && apply_op3(a, cls, c)) return {a, Op3{cls, c}};
  }
  return {a, Op3{cls, Gf2Matrix::identity(m)}};
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

AffineSweep verify_affine(int n, int samples, std::uint64_t seed, std::size_t max_instances) {
  if (n < 1 || n > kMaxCodeN) throw std::invalid_argument("verify_affine: n must be in [1, 11]");
  std::vector<Instance> instances;
  if (max_instances == 0) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * (n - 1) / 2)); ++code) {
      const BottMatrix a = BottMatrix::from_code(n, code);
      for_each_legal_op(a, [&](const BottOperation& op) { instances.push_back({a, op}); });
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < max_instances; ++k) instances.push_back(random_instance(n, rng));
  }

  AffineSweep sweep;
  sweep.report.suite = "affine";
  sweep.report.n = n;
  AffineRow action{"action"}, op1{"Op1"}, op2{"Op2"}, op3{"Op3"}, ring{"ring-iso"};
  std::vector<std::uint64_t> seen;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const auto& [a, op] = instances[k];
    const std::uint64_t s = mix(seed, k);
    if (std::find(seen.begin(), seen.end(), a.code()) == seen.end()) {
      seen.push_back(a.code());
      VerifyReport act_report = check_commutativity_and_freeness(a, samples, s);
      act_report.merge(check_gamma(a, samples, s));
      ++action.instances;
      if (!act_report.passed()) ++action.failures;
      sweep.report.merge(act_report);
      ++sweep.report.classes_checked;
    }
    const VerifyReport eq = check_equivariance(a, op, samples, s);
    AffineRow& row = std::holds_alternative<Op1>(op) ? op1 : std::holds_alternative<Op2>(op) ? op2 : op3;
    ++row.instances;
    if (!eq.passed()) ++row.failures;
    sweep.report.merge(eq);

    ++ring.instances;
    ++sweep.report.cases_checked;
    const BottMatrix b = apply_operation(a, op);
    const Gf2Matrix f = phi_matrix(a, op);
    if (!(f == op_pullback_matrix(a, op)) || !induces_ring_iso(f, RingPresentation(a), RingPresentation(b))) {
      ++ring.failures;
      sweep.report.violations.push_back(to_compact(a) + " " + describe(op) + ": F does not induce a ring isomorphism");
    }
  }
  sweep.rows = {action, op1, op2, op3, ring};
  return sweep;
}

}  // namespace bott
