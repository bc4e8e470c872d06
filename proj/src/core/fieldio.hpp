#pragma once

#include <string>

#include "core/grid.hpp"

namespace crossn {

// Field files are one structured-text header line
//   version=1 kind=vector n=2 shape=64,64 rows=2 cols=1 dtype=f64le layout=component-major
// followed by raw little-endian doubles in storage order.  write/read
// round-trip bit-exactly; malformed input raises ParseError carrying the byte
// offset of the failure.
void write_field(const Field& f, const std::string& path);
Field read_field(const std::string& path);

}  // namespace crossn
