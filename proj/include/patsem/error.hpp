#pragma once

#include <stdexcept>
#include <string>

namespace patsem {

// Error taxonomy shared by the library and the CLI exit-code mapping:
// user errors (bad input, type/level violations) exit 2, capacity errors
// (hom objects or enumerations past the configured limits) exit 3.
struct Error : std::runtime_error {
  enum class Kind { User, Capacity };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

struct UserError : Error {
  explicit UserError(const std::string& msg) : Error(Kind::User, msg) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& msg) : Error(Kind::Capacity, msg) {}
};

// Poset sizes are capped: hom-object materialization is exponential and we
// want a loud failure naming the offender rather than a silent blowup.
struct Limits {
  std::size_t max_poset_elements = 16384;
  std::size_t max_enumeration = 150000;
};

Limits& limits();

}  // namespace patsem
