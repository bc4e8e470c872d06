#include "core/fieldio.hpp"

#include <bit>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "core/errors.hpp"

namespace crossn {

static_assert(std::endian::native == std::endian::little,
              "field payload is written as raw little-endian doubles");

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

std::string header_line(const Field& f) {
  std::ostringstream os;
  os << "version=1 kind=" << field_kind_name(f.kind()) << " n=" << f.grid().n() << " shape=";
  const auto& shape = f.grid().shape();
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << " rows=" << f.rows() << " cols=" << f.cols()
     << " dtype=f64le layout=component-major\n";
  return os.str();
}

long parse_int(const std::string& s, std::size_t at, const char* what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("invalid ") + what + " '" + s + "'", at);
  }
}

}  // namespace

void write_field(const Field& f, const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IOError("write_field: cannot open '" + path + "' for writing");
  const std::string header = header_line(f);
  if (std::fwrite(header.data(), 1, header.size(), fp.get()) != header.size() ||
      std::fwrite(f.data(), sizeof(double), f.size(), fp.get()) != f.size())
    throw IOError("write_field: short write to '" + path + "'");
  if (std::fflush(fp.get()) != 0)
    throw IOError("write_field: flush failed for '" + path + "'");
}

Field read_field(const std::string& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw IOError("read_field: cannot open '" + path + "'");

  // Header: everything up to the first newline, bounded to keep garbage input
  // from being scanned forever.
  std::string header;
  constexpr std::size_t kMaxHeader = 4096;
  for (;;) {
    int ch = std::fgetc(fp.get());
    if (ch == EOF) throw ParseError("missing end of header", header.size());
    if (ch == '\n') break;
    header.push_back(static_cast<char>(ch));
    if (header.size() > kMaxHeader) throw ParseError("header too long", header.size());
  }

  // Tokens are key=value separated by single spaces; offsets recorded so
  // errors point at the offending byte.
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  std::size_t pos = 0;
  while (pos < header.size()) {
    std::size_t end = header.find(' ', pos);
    if (end == std::string::npos) end = header.size();
    const std::string tok = header.substr(pos, end - pos);
    const std::size_t eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError("malformed header token '" + tok + "'", pos);
    kv[tok.substr(0, eq)] = {tok.substr(eq + 1), pos};
    pos = end + 1;
  }
  auto need = [&](const char* key) -> std::pair<std::string, std::size_t> {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ParseError(std::string("missing header key '") + key + "'", header.size());
    return it->second;
  };

  auto [version, vat] = need("version");
  if (version != "1") throw ParseError("unsupported version '" + version + "'", vat);
  auto [dtype, dat] = need("dtype");
  if (dtype != "f64le") throw ParseError("unsupported dtype '" + dtype + "'", dat);
  auto [layout, lat] = need("layout");
  if (layout != "component-major")
    throw ParseError("unsupported layout '" + layout + "'", lat);

  auto [kind_s, kat] = need("kind");
  FieldKind kind;
  try {
    kind = field_kind_from_name(kind_s);
  } catch (const DomainError&) {
    throw ParseError("unknown kind '" + kind_s + "'", kat);
  }

  const int n = static_cast<int>(parse_int(need("n").first, need("n").second, "n"));
  const int rows = static_cast<int>(parse_int(need("rows").first, need("rows").second, "rows"));
  const int cols = static_cast<int>(parse_int(need("cols").first, need("cols").second, "cols"));

  auto [shape_s, sat] = need("shape");
  std::vector<int> shape;
  std::size_t sp = 0;
  while (sp <= shape_s.size()) {
    std::size_t se = shape_s.find(',', sp);
    if (se == std::string::npos) se = shape_s.size();
    shape.push_back(static_cast<int>(parse_int(shape_s.substr(sp, se - sp), sat, "shape")));
    sp = se + 1;
    if (se == shape_s.size()) break;
  }

  // Inconsistent or oversized geometry in the header is a property of the
  // file, so grid/field construction failures surface as parse errors here.
  Field f = [&]() -> Field {
    try {
      return Field(Grid(n, shape), kind, rows, cols);
    } catch (const DomainError& e) {
      throw ParseError(std::string("inconsistent header: ") + e.what(), sat);
    } catch (const ConfigError& e) {
      throw ParseError(std::string("inconsistent header: ") + e.what(), sat);
    }
  }();

  const std::size_t header_bytes = header.size() + 1;
  const std::size_t got = std::fread(f.data(), sizeof(double), f.size(), fp.get());
  if (got != f.size())
    throw ParseError("truncated payload: expected " + std::to_string(f.size()) +
                         " doubles, got " + std::to_string(got),
                     header_bytes + got * sizeof(double));
  if (std::fgetc(fp.get()) != EOF)
    throw ParseError("trailing bytes after payload", header_bytes + f.size() * sizeof(double));
  return f;
}

}  // namespace crossn
