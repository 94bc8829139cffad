#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bott/classify.hpp"
#include "bott/errors.hpp"
#include "kernels.hpp"

namespace bott {

namespace {

using detail::Packed;

enum class EdgeKind : std::uint8_t { kRoot, kOp1, kOp2, kOp3 };

struct Node {
  std::uint64_t parent = 0;
  std::uint64_t data = 0;  // sigma (4 bits per entry), k, or class mask
  EdgeKind kind = EdgeKind::kRoot;
};

// Rough per-node footprint of the hash map, used against the memory budget.
constexpr std::size_t kBytesPerNode = 64;

using Visited = std::unordered_map<std::uint64_t, Node>;

Visited bfs(const BottMatrix& a, const OrbitOptions& options) {
  const int n = a.size();
  if (n > kMaxCodeN) throw BoundError("orbit: n above 11");
  Visited visited;
  std::deque<std::uint64_t> queue;
  const std::uint64_t start = a.code();
  visited.emplace(start, Node{});
  queue.push_back(start);
  const auto visit = [&](std::uint64_t from, const Packed& b, EdgeKind kind, std::uint64_t data) {
    const std::uint64_t code = detail::encode(b);
    if (visited.contains(code)) return;
    if ((visited.size() + 1) * kBytesPerNode > options.memory_budget)
      throw ResourceError("orbit exceeds memory budget of " + std::to_string(options.memory_budget) + " bytes");
    visited.emplace(code, Node{from, data, kind});
    queue.push_back(code);
  };
  while (!queue.empty()) {
    const std::uint64_t code = queue.front();
    queue.pop_front();
    const Packed p = detail::decode(n, code);
    for (int k = 0; k < n; ++k) visit(code, detail::op2(p, k), EdgeKind::kOp2, static_cast<std::uint64_t>(k));
    detail::for_each_linear_extension(p, [&](const auto& sigma, const Packed& b) {
      std::uint64_t packed = 0;
      for (int i = 0; i < n; ++i) packed |= static_cast<std::uint64_t>(sigma[i]) << (4 * i);
      visit(code, b, EdgeKind::kOp1, packed);
    });
    detail::for_each_op3_image(p, [&](std::uint64_t cls, const Packed& b) { visit(code, b, EdgeKind::kOp3, cls); });
  }
  return visited;
}

BottOperation edge_operation(int n, std::uint64_t from, std::uint64_t to, const Node& node) {
  switch (node.kind) {
    case EdgeKind::kOp1: {
      Permutation sigma;
      for (int i = 0; i < n; ++i) sigma.image.push_back(static_cast<int>((node.data >> (4 * i)) & 0xf));
      return Op1{sigma};
    }
    case EdgeKind::kOp2:
      return Op2{static_cast<int>(node.data)};
    case EdgeKind::kOp3: {
      const BottMatrix src = BottMatrix::from_code(n, from);
      const BottMatrix dst = BottMatrix::from_code(n, to);
      Op3 op;
      std::vector<std::uint64_t> r_from;
      std::vector<std::uint64_t> r_to;
      for (std::uint64_t c = node.data; c != 0; c &= c - 1) {
        const int i = std::countr_zero(c);
        op.cls.push_back(i);
        r_from.push_back(src.row_bits(i));
        r_to.push_back(dst.row_bits(i));
      }
      auto c = left_transform(Gf2Matrix::from_rows(n, r_from), Gf2Matrix::from_rows(n, r_to));
      if (!c) throw std::logic_error("orbit: Op3 edge without a transform");
      op.c = *c;
      return op;
    }
    case EdgeKind::kRoot:
      break;
  }
  throw std::logic_error("orbit: root has no incoming operation");
}

}  // namespace

BottClass orbit(const BottMatrix& a, const OrbitOptions& options) {
  const Visited visited = bfs(a, options);
  std::vector<std::uint64_t> codes;
  codes.reserve(visited.size());
  for (const auto& [code, node] : visited) codes.push_back(code);
  std::sort(codes.begin(), codes.end());
  BottClass cls;
  cls.canonical = BottMatrix::from_code(a.size(), codes.front());
  cls.size = codes.size();
  if (options.keep_members) {
    cls.members.reserve(codes.size());
    for (std::uint64_t c : codes) cls.members.push_back(BottMatrix::from_code(a.size(), c));
  }
  return cls;
}

BottMatrix canonical_form(const BottMatrix& a, const OrbitOptions& options) {
  OrbitOptions o = options;
  o.keep_members = false;
  return orbit(a, o).canonical;
}

Equivalence are_equivalent(const BottMatrix& a, const BottMatrix& b, const OrbitOptions& options) {
  if (a.size() != b.size()) throw std::invalid_argument("are_equivalent: size mismatch");
  const int n = a.size();
  const Visited visited = bfs(a, options);
  Equivalence result;
  const auto target = visited.find(b.code());
  if (target == visited.end()) return result;
  result.equivalent = true;
  std::uint64_t cur = target->first;
  while (true) {
    const Node& node = visited.at(cur);
    if (node.kind == EdgeKind::kRoot) break;
    result.witness.push_back(edge_operation(n, node.parent, cur, node));
    cur = node.parent;
  }
  std::reverse(result.witness.begin(), result.witness.end());
  BottMatrix check = a;
  for (const auto& op : result.witness) check = apply_operation(check, op);
  if (check != b) throw std::logic_error("are_equivalent: witness does not reproduce the target");
  return result;
}

std::size_t ClassTable::class_of(const BottMatrix& a) const {
  if (a.size() != n) throw std::invalid_argument("class_of: size mismatch");
  if (!labels.empty()) return labels[a.code()];
  const std::uint64_t canon = canonical_form(a).code();
  const auto it = std::lower_bound(classes.begin(), classes.end(), canon,
                                   [](const BottClass& c, std::uint64_t v) { return c.canonical.code() < v; });
  if (it == classes.end() || it->canonical.code() != canon) throw std::logic_error("class_of: class missing from table");
  return static_cast<std::size_t>(it - classes.begin());
}

std::size_t count_by_nonzero_columns(const ClassTable& table, int k) {
  if (table.labels.empty()) throw std::invalid_argument("count_by_nonzero_columns: table has no labels");
  std::vector<int> per_class(table.classes.size(), -1);
  for (std::uint64_t code = 0; code < table.labels.size(); ++code) {
    const int cols = BottMatrix::from_code(table.n, code).nonzero_columns();
    int& slot = per_class[table.labels[code]];
    if (slot == -1) slot = cols;
    else if (slot != cols) throw std::logic_error("count_by_nonzero_columns: count varies inside a class");
  }
  return static_cast<std::size_t>(std::count(per_class.begin(), per_class.end(), k));
}

std::size_t count_delta_classes(int n) {
  if (n < 2 || n > kMaxCodeN) throw std::invalid_argument("count_delta_classes: n must be in [2, 11]");
  std::vector<std::pair<int, int>> free;
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j) free.emplace_back(i, j);
  std::set<std::uint64_t> reduced;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    BottMatrix a(n);
    for (int i = 0; i + 1 < n; ++i) a.set(i, i + 1, true);
    for (std::size_t t = 0; t < free.size(); ++t)
      if ((mask >> t) & 1u) a.set(free[t].first, free[t].second, true);
    reduced.insert(delta_reduce(a).code());
  }
  return reduced.size();
}

void write_class_table(std::ostream& out, const ClassTable& table) {
  out << "# bott-classes n=" << table.n << " generators=full\n";
  if (!table.provenance.empty()) out << "# provenance: " << table.provenance << "\n";
  for (const BottClass& c : table.classes) out << to_compact(c.canonical) << '\t' << c.size << '\n';
}

ClassTable read_class_table(std::istream& in) {
  ClassTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("class table: empty input");
  const std::string prefix = "# bott-classes n=";
  if (line.rfind(prefix, 0) != 0) throw ParseError("class table: bad header '" + line + "'");
  {
    std::istringstream hdr(line.substr(prefix.size()));
    if (!(hdr >> table.n)) throw ParseError("class table: bad n in header");
    std::string gens;
    hdr >> gens;
    if (gens != "generators=full") throw ParseError("class table: unsupported generator set '" + gens + "'");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string p = "# provenance: ";
      if (line.rfind(p, 0) == 0) table.provenance = line.substr(p.size());
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("class table: missing tab in '" + line + "'");
    BottClass c;
    c.canonical = from_compact(line.substr(0, tab));
    if (c.canonical.size() != table.n) throw ParseError("class table: row size does not match header");
    try {
      c.size = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw ParseError("class table: bad class size in '" + line + "'");
    }
    table.classes.push_back(std::move(c));
  }
  return table;
}

}  // namespace bott
