#pragma once
// Presentation text format: generator list, cyclotomic field order, deglex
// generator order, relations. Parsed into NcPoly relation lists; canonical
// re-rendering feeds the cache key hash.

#include "qcert/cyclotomic.hpp"
#include "qcert/ncalg.hpp"

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcert {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct Presentation {
  // Generator names in deglex priority order; word byte i means names[i].
  std::vector<std::string> names;
  unsigned N = 0;
  std::vector<NcPoly> rels;

  // The parse keeps the field alive for the relation coefficients.
  std::shared_ptr<CycField> field;

  std::string canonical_text() const;
};

// Text lines: `gens a b c d`, `field cyclotomic 3`, `order deglex a b c d`,
// `rel b*a - (1/q)*a*b`, comments starting with '#'. Scalar factors use `z`
// or `q` for the root of unity. Unknown symbols are rejected with
// line/column positions.
Presentation parse_presentation(const std::string& text);

// Convenience for builder output feeding the same machinery.
Presentation make_presentation(std::vector<std::string> names, unsigned N,
                               std::shared_ptr<CycField> field,
                               std::vector<NcPoly> rels);

// Cache key: canonical text plus the tool version string.
std::uint64_t presentation_hash(const Presentation& p,
                                const std::string& tool_version);

std::uint64_t fnv1a64(const std::string& data);

}  // namespace qcert
