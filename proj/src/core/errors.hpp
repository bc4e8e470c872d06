#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crossn {

// Error taxonomy shared by the C++ core, the C API and the CLI.
//
//   DomainError        bad mathematical input: n < 2, dimension mismatch,
//                      non-finite entries, zero vector where forbidden.
//   ConfigError        bad configuration: unsupported backend/grid combination,
//                      sample budget exceeded, unresolved oscillation k.
//   ParseError         malformed field file; carries the byte offset at which
//                      reading failed.
//   PreconditionError  a method-level precondition does not hold for otherwise
//                      well-formed data: Riesz support check, nonzero mean
//                      where a mean-free field is required.
//   IOError            the file system failed us: unopenable path, short
//                      write.  Distinct from ParseError, which means the bytes
//                      were readable but wrong.
//
// The C API maps these to CROSSN_ERR_* codes; the CLI maps them onto its
// exit-code contract (parse -> 3, precondition -> 4, everything else -> 2).

class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what + " (byte " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

private:
  std::size_t byte_offset_;
};

class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

class IOError : public std::runtime_error {
public:
  explicit IOError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace crossn
