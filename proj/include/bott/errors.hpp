#pragma once

#include <stdexcept>
#include <string>

namespace bott {

// Malformed matrix text or compact encoding.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// A computation would exceed its configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A size parameter is above a configured ceiling (max_n, gl_ceiling, ...).
class BoundError : public std::out_of_range {
 public:
  explicit BoundError(const std::string& what) : std::out_of_range(what) {}
};

}  // namespace bott
