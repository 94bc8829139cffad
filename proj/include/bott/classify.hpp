#pragma once

// Bott-equivalence orbits and full class tables.
//
// Two classifiers produce the same partition of B(n):
//   classify_all        OpenMP edge generation + union-find over the code
//                       space, with a reduced generating set (adjacent
//                       transpositions for Op1, row-space images for Op3).
//   classify_reference  serial BFS using the literal operation definitions:
//                       all n! permutations filtered by legality and every
//                       C in GL(|I|, 2).
// The reference is kept for tests and benchmarks.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bott/bott_matrix.hpp"

namespace bott {

inline constexpr int kDefaultMaxN = 7;

struct OrbitOptions {
  std::size_t memory_budget = std::size_t{1} << 30;  // bytes
  bool keep_members = true;
};

struct BottClass {
  BottMatrix canonical;  // member with the smallest compact encoding
  std::uint64_t size = 0;
  std::vector<BottMatrix> members;  // ascending by code; empty unless requested
};

// BFS closure of {a} under every legal Op1, Op2 and Op3. Throws ResourceError
// when the orbit outgrows the memory budget. n <= 11.
BottClass orbit(const BottMatrix& a, const OrbitOptions& options = {});

BottMatrix canonical_form(const BottMatrix& a, const OrbitOptions& options = {});

struct Equivalence {
  bool equivalent = false;
  std::vector<BottOperation> witness;  // applied in order, takes a to b
};

Equivalence are_equivalent(const BottMatrix& a, const BottMatrix& b, const OrbitOptions& options = {});

struct ClassTable {
  int n = 0;
  std::vector<BottClass> classes;  // ascending by canonical code
  std::string provenance;
  // labels[code] = index into classes. Empty for tables read from disk.
  std::vector<std::uint32_t> labels;

  std::size_t class_of(const BottMatrix& a) const;
};

struct ClassifyOptions {
  int max_n = kDefaultMaxN;
  int threads = 0;  // 0 = OpenMP default
  bool keep_labels = true;
};

ClassTable classify_all(int n, const ClassifyOptions& options = {});

// Serial BFS with literal generators. Intended for n <= 5.
ClassTable classify_reference(int n, int gl_ceiling = kDefaultGlCeiling);

// Classes whose members have exactly k nonzero columns. Requires labels and
// throws std::logic_error if the count varies inside a class.
std::size_t count_by_nonzero_columns(const ClassTable& table, int k);

// Number of distinct delta_reduce images over Delta(n).
std::size_t count_delta_classes(int n);

// TSV: "# bott-classes n=<n> generators=full", then "canonical<TAB>size".
void write_class_table(std::ostream& out, const ClassTable& table);
ClassTable read_class_table(std::istream& in);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace bott
