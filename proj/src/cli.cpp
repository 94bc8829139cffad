#include "bott/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bott/affine.hpp"
#include "bott/classify.hpp"
#include "bott/cohomology.hpp"
#include "bott/decomp.hpp"
#include "bott/errors.hpp"
#include "bott/iso.hpp"

namespace bott {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

Config default_config() {
  Config c;
  if (const char* dir = std::getenv("BOTT_CACHE_DIR"); dir != nullptr && *dir != '\0') c.cache_dir = dir;
  else if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0')
    c.cache_dir = (fs::path(xdg) / "bott").string();
  else if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0')
    c.cache_dir = (fs::path(home) / ".cache" / "bott").string();
  return c;
}

void validate(const Config& config) {
  if (config.max_n < 1 || config.max_n > 7) throw BoundError("max_n must be in [1, 7]");
  if (config.orbit_memory_budget == 0) throw BoundError("orbit_memory_budget must be positive");
  if (config.gl_ceiling < 1 || config.gl_ceiling > kDefaultGlCeiling) throw BoundError("gl_ceiling must be in [1, 6]");
  if (config.threads < 0) throw BoundError("threads must be >= 0");
}

std::string cache_path(const Config& config, int n) {
  if (config.cache_dir.empty()) return {};
  return (fs::path(config.cache_dir) / ("classes-n" + std::to_string(n) + ".tsv")).string();
}

namespace {

BottMatrix read_matrix(const std::string& file) {
  std::string text;
  if (file == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot read '" + file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  return parse_matrix(text);
}

std::optional<ClassTable> load_cache(const Config& config, int n) {
  const std::string path = cache_path(config, n);
  if (path.empty() || !fs::exists(path)) return std::nullopt;
  std::ifstream in(path);
  try {
    ClassTable t = read_class_table(in);
    if (t.n != n) return std::nullopt;
    return t;
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

// Index of a canonical form in a cached table, or -1.
long cached_index(const std::optional<ClassTable>& table, const BottMatrix& canonical) {
  if (!table) return -1;
  for (std::size_t i = 0; i < table->classes.size(); ++i)
    if (table->classes[i].canonical == canonical) return static_cast<long>(i);
  return -1;
}

OrbitOptions orbit_options(const Config& config) {
  OrbitOptions o;
  o.memory_budget = config.orbit_memory_budget;
  return o;
}

ClassifyOptions classify_options(const Config& config) {
  ClassifyOptions o;
  o.max_n = config.max_n;
  o.threads = config.threads;
  return o;
}

std::string bmat_lines(const Gf2Matrix& m) {
  std::string s;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) s += m.get(i, j) ? '1' : '0';
    s += '\n';
  }
  return s;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

void emit(const Config& config, const Json& j, const std::string& text, std::ostream& out) {
  if (config.json) out << j.dump(2) << '\n';
  else out << text;
}

// Maps library exceptions onto the exit-code contract.
template <class F>
int guarded(const Config& config, std::ostream& err, F&& body) {
  try {
    validate(config);
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BoundError& e) {
    err << "bound exceeded: " << e.what() << '\n';
    return kExitBound;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource limit: out of memory\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace

int cmd_classify(const Config& config, int n, const std::string& out_path, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    if (n < 0) throw std::invalid_argument("n must be non-negative");
    const ClassTable table = classify_all(n, classify_options(config));
    std::vector<std::string> written;
    const auto write_to = [&](const std::string& path) {
      std::error_code ec;
      const fs::path p(path);
      if (p.has_parent_path()) fs::create_directories(p.parent_path(), ec);
      std::ofstream f(path);
      if (!f) {
        err << "warning: cannot write '" << path << "'\n";
        return;
      }
      write_class_table(f, table);
      written.push_back(path);
    };
    if (!out_path.empty()) write_to(out_path);
    if (const std::string cache = cache_path(config, n); !cache.empty() && cache != out_path) write_to(cache);

    Json j;
    j["n"] = n;
    j["classes"] = table.classes.size();
    j["matrices"] = table.labels.size();
    j["written"] = written;
    std::ostringstream text;
    text << table.classes.size() << " classes\n";
    text << "n=" << n << "\nmatrices=" << table.labels.size() << '\n';
    for (const auto& w : written) text << "table=" << w << '\n';
    emit(config, j, text.str(), out);
    return static_cast<int>(kExitOk);
  });
}

int cmd_iso(const Config& config, const std::string& file_a, const std::string& file_b, std::ostream& out,
            std::ostream& err) {
  return guarded(config, err, [&] {
    const BottMatrix a = read_matrix(file_a);
    const BottMatrix b = read_matrix(file_b);
    Json j;
    std::ostringstream text;
    const auto negative = [&](const std::string& reason) {
      j["result"] = "NOT-EQUIVALENT";
      j["reason"] = reason;
      text << "NOT-EQUIVALENT\nreason=" << reason << '\n';
      emit(config, j, text.str(), out);
      return static_cast<int>(kExitNegative);
    };
    if (a.size() != b.size())
      return negative("n: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    if (auto diff = fingerprint_difference(fingerprint(a), fingerprint(b))) return negative(*diff);

    const Equivalence eq = are_equivalent(a, b, orbit_options(config));
    const auto cache = load_cache(config, a.size());
    if (cache) {
      j["class_a"] = cached_index(cache, canonical_form(a, orbit_options(config)));
      j["class_b"] = cached_index(cache, canonical_form(b, orbit_options(config)));
    }
    if (!eq.equivalent) return negative("fingerprints agree; orbits differ");

    std::vector<std::string> steps;
    for (const auto& op : eq.witness) steps.push_back(describe(op));
    j["result"] = "EQUIVALENT";
    j["witness"] = steps;
    text << "EQUIVALENT\nwitness=" << (steps.empty() ? "identity" : join(steps, "; ")) << '\n';
    if (cache) text << "class=" << j["class_a"].get<long>() << '\n';
    if (a.size() <= kIsoMaxN) {
      IsoOptions io;
      io.threads = config.threads;
      if (const auto w = find_iso(a, b, io)) {
        j["ring_iso"] = bmat_lines(w->p);
        text << "ring_iso:\n" << bmat_lines(w->p);
      }
    }
    emit(config, j, text.str(), out);
    return static_cast<int>(kExitOk);
  });
}

int cmd_decompose(const Config& config, const std::string& file, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    const BottMatrix a = read_matrix(file);
    const Decomposition d = decompose(a, orbit_options(config));
    std::vector<std::string> factors;
    for (const auto& f : d.factors) factors.push_back(to_compact(f));
    Json j;
    j["exterior_rank"] = d.exterior_rank;
    j["factors"] = factors;
    j["provenance"] = d.provenance;
    std::ostringstream text;
    text << "exterior_rank=" << d.exterior_rank << "; factors=[" << join(factors, ",") << "]\n";
    text << "provenance=" << d.provenance << '\n';
    emit(config, j, text.str(), out);
    return static_cast<int>(kExitOk);
  });
}

int cmd_invariants(const Config& config, const std::string& file, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    const BottMatrix a = read_matrix(file);
    const RingPresentation h(a);
    const int n = a.size();
    std::vector<std::uint64_t> betti;
    for (int q = 0; q <= n; ++q) betti.push_back(h.betti(q));
    std::vector<std::string> relations;
    for (int j = 0; j < n; ++j) {
      const SquareFreePoly x = SquareFreePoly::generator(j);
      relations.push_back(to_string(h.multiply(x, x)));
    }
    Json eig = Json::array();
    std::vector<std::string> eig_text;
    for (const auto& e : eigen_elements(h)) {
      const EigenSpace s = eigen_space(h, e.alpha);
      std::vector<int> idx;
      for (int i : e.indices) idx.push_back(i + 1);
      const std::string alpha = to_string(SquareFreePoly::linear(e.alpha));
      eig.push_back({{"alpha", alpha}, {"columns", idx}, {"dim", s.dim()}, {"reduced_dim", s.reduced_dim}});
      eig_text.push_back(alpha + " (dim " + std::to_string(s.dim()) + ")");
    }
    std::vector<std::string> nil;
    for (const auto& v : nilpotent_space(h).basis) nil.push_back(to_string(SquareFreePoly::linear(v)));
    const Fingerprint fp = fingerprint(a);
    const HsSplit hs = extract_hs(a);
    const auto klein = find_klein_pair(a);

    Json j;
    j["n"] = n;
    j["betti"] = betti;
    j["squares"] = relations;
    j["eigen_elements"] = eig;
    j["nilpotent_basis"] = nil;
    j["s_size"] = fp.s_size;
    j["fingerprint"] = to_string(fp);
    j["exterior_rank"] = hs.exterior_rank;
    j["semisimple"] = hs.exterior_rank == 0;
    if (klein)
      j["klein_pair"] = {to_string(SquareFreePoly::linear(klein->x)), to_string(SquareFreePoly::linear(klein->xbar))};
    std::ostringstream text;
    text << "n=" << n << "\nbetti=";
    for (std::size_t q = 0; q < betti.size(); ++q) text << (q ? "," : "") << betti[q];
    text << '\n';
    for (int i = 0; i < n; ++i) text << "x" << i + 1 << "^2=" << relations[i] << '\n';
    text << "eigen_elements=" << join(eig_text, "; ") << '\n';
    text << "N(H)=span{" << join(nil, ", ") << "}\n";
    text << "|S(H)|=" << fp.s_size << '\n';
    text << "fingerprint=" << to_string(fp) << '\n';
    text << "exterior_rank=" << hs.exterior_rank << "\nsemisimple=" << (hs.exterior_rank == 0 ? "yes" : "no") << '\n';
    if (klein)
      text << "klein_pair={" << to_string(SquareFreePoly::linear(klein->x)) << ", "
           << to_string(SquareFreePoly::linear(klein->xbar)) << "}\n";
    emit(config, j, text.str(), out);
    return static_cast<int>(kExitOk);
  });
}

int cmd_canon(const Config& config, const std::string& file, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    const BottMatrix a = read_matrix(file);
    OrbitOptions o = orbit_options(config);
    o.keep_members = false;
    const BottClass c = orbit(a, o);
    Json j;
    j["canonical"] = to_compact(c.canonical);
    j["orbit_size"] = c.size;
    const long idx = cached_index(load_cache(config, a.size()), c.canonical);
    if (idx >= 0) j["class"] = idx;
    std::ostringstream text;
    text << "canonical=" << to_compact(c.canonical) << "\norbit_size=" << c.size << '\n';
    if (idx >= 0) text << "class=" << idx << '\n';
    text << to_text(c.canonical);
    emit(config, j, text.str(), out);
    return static_cast<int>(kExitOk);
  });
}

namespace {

Json report_json(const VerifyReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["n"] = r.n;
  j["classes_checked"] = r.classes_checked;
  j["cases_checked"] = r.cases_checked;
  j["violations"] = r.violations;
  j["result"] = r.passed() ? "pass" : "fail";
  return j;
}

std::string report_text(const VerifyReport& r) {
  std::ostringstream text;
  text << "suite=" << r.suite << "\nn=" << r.n << "\nclasses_checked=" << r.classes_checked
       << "\ncases_checked=" << r.cases_checked << "\nviolations=" << r.violations.size() << '\n';
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < r.violations.size() && i < kShown; ++i) text << "violation: " << r.violations[i] << '\n';
  text << "result=" << (r.passed() ? "pass" : "fail") << '\n';
  return text.str();
}

VerifyReport theorem1(const Config& config, int n, std::size_t pairs) {
  if (n > kIsoMaxN) throw BoundError("theorem-1: n above " + std::to_string(kIsoMaxN));
  VerifyReport r;
  r.suite = "theorem-1";
  r.n = n;
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> todo;
  if (pairs == 0 && n <= 3) {
    for (std::uint64_t x = 0; x < total; ++x)
      for (std::uint64_t y = 0; y < total; ++y) todo.emplace_back(x, y);
  } else {
    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, total - 1);
    for (std::size_t k = 0; k < (pairs == 0 ? 500 : pairs); ++k) todo.emplace_back(pick(rng), pick(rng));
  }
  IsoOptions io;
  io.threads = config.threads;
  for (const auto& [x, y] : todo) {
    const BottMatrix a = BottMatrix::from_code(n, x);
    const BottMatrix b = BottMatrix::from_code(n, y);
    ++r.cases_checked;
    const bool equivalent = are_equivalent(a, b, orbit_options(config)).equivalent;
    const auto w = find_iso(a, b, io);
    if (equivalent != w.has_value())
      r.violations.push_back(to_compact(a) + " / " + to_compact(b) + ": orbit says " +
                             (equivalent ? "equivalent" : "distinct") + ", ring search says " +
                             (w ? "isomorphic" : "not isomorphic"));
    else if (w && !verify_iso(a, b, *w))
      r.violations.push_back(to_compact(a) + " / " + to_compact(b) + ": witness fails symbolic check");
  }
  return r;
}

}  // namespace

int cmd_verify(const Config& config, const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    if (args.n < 0) throw std::invalid_argument("n must be non-negative");
    VerifyReport r;
    Json j;
    std::string table;
    if (args.suite == "affine") {
      const std::size_t instances = args.instances != 0 ? args.instances : (args.n <= 4 ? 0 : 200);
      const AffineSweep sweep = verify_affine(args.n, args.samples, config.seed, instances);
      r = sweep.report;
      Json rows = Json::array();
      std::ostringstream t;
      t << "check\tinstances\tfailures\tresult\n";
      for (const auto& row : sweep.rows) {
        rows.push_back({{"check", row.check}, {"instances", row.instances}, {"failures", row.failures}});
        t << row.check << '\t' << row.instances << '\t' << row.failures << '\t' << (row.failures ? "FAIL" : "pass") << '\n';
      }
      j["rows"] = rows;
      table = t.str();
    } else if (args.suite == "unique-decomposition") {
      r = verify_unique_decomposition(args.n, classify_options(config));
    } else if (args.suite == "cancellation") {
      ClassifyOptions o = classify_options(config);
      if (args.n + 1 > config.max_n) throw BoundError("cancellation needs B(n+1) within max_n");
      r = verify_cancellation(args.n, o);
    } else if (args.suite == "theorem-1") {
      r = theorem1(config, args.n, args.pairs);
    } else {
      throw std::invalid_argument("unknown suite '" + args.suite +
                                  "' (affine, unique-decomposition, cancellation, theorem-1)");
    }
    Json rj = report_json(r);
    for (auto& [k, v] : j.items()) rj[k] = v;
    emit(config, rj, table + report_text(r), out);
    return static_cast<int>(r.passed() ? kExitOk : kExitNegative);
  });
}

int cmd_count_delta(const Config& config, int n, std::ostream& out, std::ostream& err) {
  return guarded(config, err, [&] {
    if (n < 2) throw std::invalid_argument("count-delta needs n >= 2");
    if (n > config.max_n) throw BoundError("n=" + std::to_string(n) + " above max_n=" + std::to_string(config.max_n));
    const std::size_t count = count_delta_classes(n);
    const std::uint64_t expected = std::uint64_t{1} << ((n - 2) * (n - 3) / 2);
    Json j;
    j["n"] = n;
    j["reduced_forms"] = count;
    j["expected"] = expected;
    j["result"] = count == expected ? "pass" : "fail";
    std::ostringstream text;
    text << "n=" << n << "\nreduced_forms=" << count << "\nexpected=" << expected << '\n';
    emit(config, j, text.str(), out);
    return static_cast<int>(count == expected ? kExitOk : kExitNegative);
  });
}

}  // namespace bott
