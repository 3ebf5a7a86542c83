#include "minalg/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace minalg {

namespace {

using nlohmann::json;

Scalar scalar_from_json(const json& v, std::uint64_t p) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>(), p);
  if (v.is_number_integer()) return Scalar(v.get<long>(), p);
  fail(Err::Parse, "scalar must be a string or integer");
}

}  // namespace

ParsedInput parse_algebra_json(const std::string& text,
                               const std::string& mode_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    fail(Err::Parse, std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(Err::Parse, "top level must be an object");

  FieldMode mode = FieldMode::Q();
  if (!mode_override.empty())
    mode = FieldMode::parse(mode_override);
  else if (doc.contains("field"))
    mode = FieldMode::parse(doc["field"].get<std::string>());

  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    fail(Err::Parse, "missing integer \"dim\"");
  int n = doc["dim"].get<int>();
  if (n < 0 || n > 8) fail(Err::Parse, "dim out of range");

  ParsedInput out;
  std::uint64_t p = mode.modulus();

  if (doc.contains("diffs")) {
    const json& diffs = doc["diffs"];
    if (!diffs.is_array() || static_cast<int>(diffs.size()) != n)
      fail(Err::Parse, "\"diffs\" must be an array of length dim");
    MinimalAlgebra a = MinimalAlgebra::make(n, mode);
    for (int t = 0; t < n; ++t) {
      for (const json& term : diffs[static_cast<std::size_t>(t)]) {
        int i = term.at("i").get<int>(), j = term.at("j").get<int>();
        if (!(1 <= i && i < j && j <= n))
          fail(Err::Parse, "diff term needs 1 <= i < j <= dim");
        a.diffs[static_cast<std::size_t>(t)].add(mono_from_indices({i, j}),
                                                 scalar_from_json(term.at("c"), p));
      }
    }
    out.algebra = a;
    return out;
  }

  if (doc.contains("brackets")) {
    LieAlgebra g;
    g.n = n;
    g.mode = mode;
    for (const json& term : doc["brackets"]) {
      int j = term.at("j").get<int>(), k = term.at("k").get<int>(),
          i = term.at("i").get<int>();
      if (!(1 <= j && j < k && k <= n && 1 <= i && i <= n))
        fail(Err::Parse, "bracket term needs 1 <= j < k <= dim, 1 <= i <= dim");
      Scalar c = scalar_from_json(term.at("c"), p);
      auto key = std::make_tuple(j, k, i);
      auto it = g.c.find(key);
      g.c[key] = it == g.c.end() ? c : it->second + c;
    }
    if (auto bad = jacobi_failure(g)) {
      auto [j, k, l] = *bad;
      fail(Err::NotClosed,
           "Jacobi identity fails for triple (X" + std::to_string(j) + ", X" +
               std::to_string(k) + ", X" + std::to_string(l) + ")");
    }
    out.algebra = from_lie(g);
    out.was_lie = true;
    return out;
  }

  fail(Err::Parse, "document needs either \"diffs\" or \"brackets\"");
}

ParsedInput load_algebra_file(const std::string& path,
                              const std::string& mode_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra_json(ss.str(), mode_override);
}

std::string algebra_to_json(const MinimalAlgebra& a) {
  nlohmann::ordered_json doc;
  doc["field"] = a.mode.str();
  doc["dim"] = a.n;
  nlohmann::ordered_json diffs = nlohmann::ordered_json::array();
  for (int t = 0; t < a.n; ++t) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : a.diffs[static_cast<std::size_t>(t)].terms()) {
      auto idx = mono_indices(m);
      nlohmann::ordered_json term;
      term["i"] = idx[0];
      term["j"] = idx[1];
      term["c"] = c.value().get_str();
      terms.push_back(term);
    }
    diffs.push_back(terms);
  }
  doc["diffs"] = diffs;
  return doc.dump();
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace minalg
