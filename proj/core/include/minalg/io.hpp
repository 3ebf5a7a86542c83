#pragma once

#include <string>

#include "minalg/algebra.hpp"

namespace minalg {

// Input document, auto-detected by key:
//   {"field":"Q","dim":6,"diffs":[[],[],[{"i":1,"j":2,"c":"1"}],...]}
//   {"field":"Q","dim":3,"brackets":[{"j":1,"k":2,"i":3,"c":"1"},...]}
// "diffs" lists the terms of each d x_t (i<j, 1-based, empty list = closed
// generator); "brackets" gives Lie structure constants [X_j,X_k] = Σ c·X_i.
struct ParsedInput {
  MinimalAlgebra algebra;
  bool was_lie = false;
};

// mode_override, when nonempty, wins over the document's "field" entry.
ParsedInput parse_algebra_json(const std::string& text,
                               const std::string& mode_override = "");
ParsedInput load_algebra_file(const std::string& path,
                              const std::string& mode_override = "");

std::string algebra_to_json(const MinimalAlgebra& a);

// FNV-1a hash of raw bytes, as fixed-width hex; used for input digests.
std::string digest_hex(const std::string& bytes);

}  // namespace minalg
