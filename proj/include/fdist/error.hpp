#pragma once

#include <stdexcept>
#include <string>

namespace fdist {

enum class ErrorKind {
  InvalidArgument,    // malformed input, mismatched groups, bad shapes
  SizeLimit,          // outside the desk-scale limits
  Numeric,            // non-finite input or numerical breakdown
  DegenerateSpectrum  // irrep extraction could not split the regular representation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace fdist
