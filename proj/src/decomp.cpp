#include "bott/decomp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "bott/cohomology.hpp"
#include "bott/errors.hpp"

namespace bott {

void VerifyReport::merge(const VerifyReport& other) {
  classes_checked += other.classes_checked;
  cases_checked += other.cases_checked;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

namespace {

std::uint64_t zero_column_mask(const BottMatrix& a) {
  std::uint64_t z = 0;
  for (int j = 0; j < a.size(); ++j)
    if (a.column_bits(j) == 0) z |= std::uint64_t{1} << j;
  return z;
}

// sigma sending order[p] to p.
Permutation placing(const std::vector<int>& order) {
  Permutation s;
  s.image.assign(order.size(), 0);
  for (std::size_t p = 0; p < order.size(); ++p) s.image[order[p]] = static_cast<int>(p);
  return s;
}

bool is_identity(const Permutation& s) {
  for (int i = 0; i < s.size(); ++i)
    if (s.image[i] != i) return false;
  return true;
}

// Invertible m x m C with C c = e_target.
Gf2Matrix send_to_unit(std::uint64_t c, int m, int target) {
  std::vector<std::uint64_t> cols{c};
  for (int k = 0; k < m && static_cast<int>(cols.size()) < m; ++k) {
    cols.push_back(std::uint64_t{1} << k);
    if (static_cast<int>(row_space_basis(cols).size()) < static_cast<int>(cols.size())) cols.pop_back();
  }
  // D has c in column target and the completion elsewhere; C = D^{-1}.
  Gf2Matrix d(m, m);
  int next = 1;
  for (int q = 0; q < m; ++q) {
    const std::uint64_t col = q == target ? cols[0] : cols[next++];
    for (int i = 0; i < m; ++i)
      if ((col >> i) & 1u) d.set(i, q, true);
  }
  return *inverse(d);
}

// Coordinates of v restricted to the (ascending) index set idx.
std::uint64_t restrict_to(const Gf2Vector& v, const std::vector<int>& idx) {
  std::uint64_t r = 0;
  for (std::size_t p = 0; p < idx.size(); ++p)
    if (v.get(idx[p])) r |= std::uint64_t{1} << p;
  return r;
}

std::uint64_t index_mask(const std::vector<int>& idx) {
  std::uint64_t m = 0;
  for (int i : idx) m |= std::uint64_t{1} << i;
  return m;
}

std::vector<int> range(int from, int to) {
  std::vector<int> r;
  for (int i = from; i < to; ++i) r.push_back(i);
  return r;
}

struct Tracked {
  BottMatrix a;
  std::vector<Gf2Vector> vectors;  // degree-1 elements carried along
  std::vector<BottOperation> ops;
  std::vector<std::string>* log = nullptr;

  void apply(const BottOperation& op) {
    const Gf2Matrix f = op_pullback_matrix(a, op);
    a = apply_operation(a, op);
    for (auto& v : vectors) v = f * v;
    if (log != nullptr) log->push_back(describe(op));
    ops.push_back(op);
  }
};

}  // namespace

HsSplit extract_hs(const BottMatrix& a) {
  const int n = a.size();
  const std::uint64_t zeros = zero_column_mask(a);
  std::vector<int> order;
  for (int j = 0; j < n; ++j)
    if ((zeros >> j) & 1u) order.push_back(j);
  const int ell = static_cast<int>(order.size());
  for (int j = 0; j < n; ++j)
    if (!((zeros >> j) & 1u)) order.push_back(j);

  Tracked t{a, {}, {}, nullptr};
  const Permutation sigma = placing(order);
  if (!is_identity(sigma)) t.apply(Op1{sigma});

  std::vector<std::uint64_t> rows;
  for (int i = 0; i < ell; ++i) rows.push_back(t.a.row_bits(i));
  const std::vector<std::uint64_t> basis = row_space_basis(rows);
  const int m = static_cast<int>(basis.size());
  if (ell > 0 && m < ell) {
    std::vector<std::uint64_t> target(ell - m, 0);
    target.insert(target.end(), basis.begin(), basis.end());
    const auto c = left_transform(Gf2Matrix::from_rows(n, rows), Gf2Matrix::from_rows(n, target));
    if (!c) throw std::logic_error("extract_hs: no row transform");
    if (!(*c == Gf2Matrix::identity(ell))) t.apply(Op3{range(0, ell), *c});
  }
  HsSplit out;
  out.exterior_rank = ell - m;
  out.a_s = submatrix(t.a, range(ell - m, n));
  out.ops = std::move(t.ops);
  return out;
}

bool is_semisimple(const BottMatrix& a) { return extract_hs(a).exterior_rank == 0; }

bool is_klein_pair(const BottMatrix& a, const KleinPair& p) {
  const int n = a.size();
  if (p.x.dim() != n || p.xbar.dim() != n) return false;
  if (p.x.is_zero() || p.xbar.is_zero() || p.x == p.xbar) return false;
  const RingPresentation h(a);
  const Gf2Vector alpha = p.x + p.xbar;
  return h.product1(p.x.bits(), p.xbar.bits()) == 0 && h.product1(alpha.bits(), alpha.bits()) == 0;
}

std::optional<KleinPair> find_klein_pair(const BottMatrix& a) {
  const std::uint64_t zeros = zero_column_mask(a);
  for (int j = 0; j < a.size(); ++j) {
    const std::uint64_t col = a.column_bits(j);
    if (col != 0 && (col & ~zeros) == 0) {
      const Gf2Vector x = Gf2Vector::unit(a.size(), j);
      return KleinPair{x, x + a.column(j)};
    }
  }
  return std::nullopt;
}

std::vector<KleinPair> klein_pairs(const BottMatrix& a) {
  const RingPresentation h(a);
  std::vector<KleinPair> out;
  for (const SElement& s : s_set(h))
    if (s.x.bits() < s.partner.bits() && h.product1(s.alpha.bits(), s.alpha.bits()) == 0)
      out.push_back(KleinPair{s.x, s.partner});
  return out;
}

BottMatrix quotient_by_klein_pair(const BottMatrix& a, const KleinPair& p, std::vector<std::string>* log) {
  if (!is_klein_pair(a, p)) throw std::invalid_argument("quotient_by_klein_pair: not a Klein pair");
  const int n = a.size();
  const Gf2Vector alpha = p.x + p.xbar;
  const std::uint64_t zeros = zero_column_mask(a);
  std::vector<int> zero_idx;
  std::vector<int> cls;
  std::vector<int> rest;
  for (int j = 0; j < n; ++j) {
    if ((zeros >> j) & 1u) zero_idx.push_back(j);
    else if (a.column(j) == alpha) cls.push_back(j);
    else rest.push_back(j);
  }
  const int ell = static_cast<int>(zero_idx.size());
  const int width = static_cast<int>(cls.size());

  // Pick the member of the pair with no alpha component.
  Gf2Vector x = p.x;
  {
    std::vector<std::uint64_t> span{alpha.bits()};
    for (int i : cls) span.push_back(std::uint64_t{1} << i);
    if (row_space_basis(span).size() != span.size() || cls.empty())
      throw std::logic_error("quotient_by_klein_pair: degenerate eigen-space");
    // x = c_alpha alpha + sum_{i in cls} c_i x_i; alpha lives on zero columns.
    const std::uint64_t off_cls = x.bits() & ~index_mask(cls);
    if (off_cls != 0) x = p.xbar;
  }
  if (log != nullptr) log->push_back("pair x=" + to_string(SquareFreePoly::linear(x)) + " alpha=" + to_string(SquareFreePoly::linear(alpha)));

  Tracked t{a, {x, alpha}, {}, log};
  std::vector<int> order = zero_idx;
  order.insert(order.end(), cls.begin(), cls.end());
  order.insert(order.end(), rest.begin(), rest.end());
  const Permutation sigma = placing(order);
  if (!is_identity(sigma)) t.apply(Op1{sigma});

  const std::vector<int> cls_pos = range(ell, ell + width);
  const Gf2Matrix c1 = send_to_unit(restrict_to(t.vectors[0], cls_pos), width, 0);
  if (!(c1 == Gf2Matrix::identity(width))) t.apply(Op3{cls_pos, c1});

  const std::vector<int> zero_pos = range(0, ell);
  const Gf2Matrix c2 = send_to_unit(restrict_to(t.vectors[1], zero_pos), ell, ell - 1);
  if (!(c2 == Gf2Matrix::identity(ell))) t.apply(Op3{zero_pos, c2});

  if (t.vectors[0] != Gf2Vector::unit(n, ell) || t.vectors[1] != Gf2Vector::unit(n, ell - 1))
    throw std::logic_error("quotient_by_klein_pair: normalization failed");
  std::vector<int> keep;
  for (int i = 0; i < n; ++i)
    if (i != ell - 1 && i != ell) keep.push_back(i);
  if (log != nullptr) log->push_back("delete rows/columns " + std::to_string(ell) + "," + std::to_string(ell + 1));
  return submatrix(t.a, keep);
}

int Decomposition::size() const {
  int n = exterior_rank;
  for (const auto& f : factors) n += f.size();
  return n;
}

namespace {

std::string components_text(const std::vector<std::vector<int>>& comps) {
  std::ostringstream out;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    out << (c ? "," : "") << '{';
    for (std::size_t k = 0; k < comps[c].size(); ++k) out << (k ? "," : "") << comps[c][k] + 1;
    out << '}';
  }
  return out.str();
}

void sort_factors(std::vector<BottMatrix>& factors) {
  std::sort(factors.begin(), factors.end(),
            [](const BottMatrix& x, const BottMatrix& y) { return to_compact(x) < to_compact(y); });
}

// Decomposition of a as split along the given member's support components.
Decomposition split_member(const BottMatrix& member, const std::vector<std::vector<int>>& comps,
                           const OrbitOptions& options) {
  Decomposition d;
  for (const auto& comp : comps) {
    if (comp.size() == 1) {
      ++d.exterior_rank;
      continue;
    }
    const Decomposition sub = decompose(submatrix(member, comp), options);
    d.exterior_rank += sub.exterior_rank;
    d.factors.insert(d.factors.end(), sub.factors.begin(), sub.factors.end());
  }
  sort_factors(d.factors);
  return d;
}

}  // namespace

Decomposition decompose(const BottMatrix& a, const OrbitOptions& options) {
  if (a.size() == 0) return {};
  if (a.size() == 1) return Decomposition{1, {}, "member=" + to_compact(a) + " components={1}"};
  OrbitOptions o = options;
  o.keep_members = true;
  const BottClass cls = orbit(a, o);
  const BottMatrix* best = nullptr;
  std::vector<std::vector<int>> best_comps;
  for (const BottMatrix& m : cls.members) {
    auto comps = support_components(m);
    if (best == nullptr || comps.size() > best_comps.size()) {
      best = &m;
      best_comps = std::move(comps);
    }
  }
  Decomposition d;
  if (best_comps.size() == 1) {
    d.factors.push_back(cls.canonical);
  } else {
    d = split_member(*best, best_comps, options);
  }
  d.provenance = "member=" + to_compact(*best) + " components=" + components_text(best_comps);
  return d;
}

namespace {

std::string factors_text(const Decomposition& d) {
  std::string s = "exterior_rank=" + std::to_string(d.exterior_rank) + "; factors=[";
  for (std::size_t i = 0; i < d.factors.size(); ++i) s += (i ? "," : "") + to_compact(d.factors[i]);
  return s + "]";
}

}  // namespace

VerifyReport verify_unique_decomposition(int n, const ClassifyOptions& options) {
  if (n < 0 || n > 6) throw BoundError("verify_unique_decomposition: n must be in [0, 6]");
  VerifyReport report;
  report.suite = "unique-decomposition";
  report.n = n;
  const ClassTable table = classify_all(n, options);
  for (const BottClass& c : table.classes) {
    ++report.classes_checked;
    const Decomposition ref = decompose(c.canonical);
    if (ref.size() != n) report.violations.push_back(to_compact(c.canonical) + ": sizes do not add up");
    for (const BottMatrix& m : orbit(c.canonical).members) {
      const auto comps = support_components(m);
      if (comps.size() < 2) continue;
      ++report.cases_checked;
      const Decomposition d = split_member(m, comps, {});
      if (d.exterior_rank != ref.exterior_rank || d.factors != ref.factors)
        report.violations.push_back(to_compact(m) + ": " + factors_text(d) + " vs " + factors_text(ref));
    }
  }
  return report;
}

VerifyReport verify_cancellation(int n, const ClassifyOptions& options) {
  if (n < 0 || n > 6) throw BoundError("verify_cancellation: n must be in [0, 6]");
  VerifyReport report;
  report.suite = "cancellation";
  report.n = n;
  ClassifyOptions o = options;
  o.max_n = std::max(o.max_n, n + 1);
  const ClassTable small = classify_all(n, o);
  const ClassTable big = classify_all(n + 1, o);
  report.classes_checked = small.classes.size();
  const BottMatrix point(1);
  // Class of (0) (+) A in B(n+1) -> class of A in B(n); must be single-valued.
  std::map<std::uint32_t, std::uint32_t> back;
  for (std::uint64_t code = 0; code < small.labels.size(); ++code) {
    const BottMatrix a = BottMatrix::from_code(n, code);
    const std::uint32_t up = big.labels[direct_sum(point, a).code()];
    const auto [it, inserted] = back.emplace(up, small.labels[code]);
    if (!inserted && it->second != small.labels[code])
      report.violations.push_back("S1 x " + to_compact(a) + " ~ S1 x " + to_compact(small.classes[it->second].canonical) +
                                  " but the factors differ");
  }
  report.cases_checked = small.labels.size() * small.labels.size();
  return report;
}

}  // namespace bott
