#include <map>

#include "minalg/classify.hpp"

namespace minalg {

namespace {

// Differential expressions use "0", monomials "xIxJ", signs, and the
// parameter slot "a*xIxJ", e.g. "x1x4+x2x3" or "x1x3+a*x2x4".
ExteriorElement parse_diff(const std::string& expr, int n, const FieldMode& mode,
                           const std::optional<Scalar>& param) {
  std::uint64_t p = mode.modulus();
  ExteriorElement out(n, p);
  if (expr == "0" || expr.empty()) return out;
  std::size_t pos = 0;
  while (pos < expr.size()) {
    Scalar sign = Scalar::one(p);
    if (expr[pos] == '+') {
      ++pos;
    } else if (expr[pos] == '-') {
      sign = -sign;
      ++pos;
    }
    Scalar coeff = sign;
    if (expr[pos] == 'a') {
      check(param.has_value(), "registry row needs a parameter");
      coeff = coeff * *param;
      pos += 2;  // skip "a*"
    }
    check(expr[pos] == 'x', "bad registry expression");
    int i = expr[pos + 1] - '0';
    int j = expr[pos + 3] - '0';
    pos += 4;
    out.add(mono_from_indices({i, j}), coeff);
  }
  return out;
}

std::vector<RegistryRow> build_registry() {
  using F = FamilyKind;
  std::vector<RegistryRow> r;
  auto add = [&](std::string base, int dim, std::vector<int> sig,
                 std::string diffs, F fam = F::None) {
    r.push_back({std::move(base), dim, std::move(sig), std::move(diffs), fam});
  };

  add("A0", 0, {}, "");
  add("A1", 1, {1}, "0");
  add("A2", 2, {2}, "0;0");

  add("A3", 3, {3}, "0;0;0");
  add("L3", 3, {2, 1}, "0;0;x1x2");

  add("A4", 4, {4}, "0;0;0;0");
  add("L3+A1", 4, {3, 1}, "0;0;0;x1x2");
  add("L4", 4, {2, 1, 1}, "0;0;x1x2;x1x3");

  add("A5", 5, {5}, "0;0;0;0;0");
  add("L3+A2", 5, {4, 1}, "0;0;0;0;x1x2");
  add("L5_1", 5, {4, 1}, "0;0;0;0;x1x2+x3x4");
  add("L5_2", 5, {3, 2}, "0;0;0;x1x2;x1x3");
  add("L4+A1", 5, {3, 1, 1}, "0;0;0;x1x2;x1x4");
  add("L5_3", 5, {3, 1, 1}, "0;0;0;x1x2;x1x4+x2x3");
  add("L5_5", 5, {2, 1, 2}, "0;0;x1x2;x1x3;x2x3");
  add("L5_4", 5, {2, 1, 1, 1}, "0;0;x1x2;x1x3;x1x4");
  add("L5_6", 5, {2, 1, 1, 1}, "0;0;x1x2;x1x3;x1x4+x2x3");

  add("A6", 6, {6}, "0;0;0;0;0;0");
  add("L3+A3", 6, {5, 1}, "0;0;0;0;0;x1x2");
  add("L5_1+A1", 6, {5, 1}, "0;0;0;0;0;x1x2+x3x4");
  add("L5_2+A1", 6, {4, 2}, "0;0;0;0;x1x2;x1x3");
  add("L3+L3", 6, {4, 2}, "0;0;0;0;x1x2;x3x4");
  add("L6_1", 6, {4, 2}, "0;0;0;0;x1x2;x1x3+x2x4");
  add("L6_2", 6, {4, 2}, "0;0;0;0;x1x3+a*x2x4;x1x4+x2x3", F::LambdaMinusOne);
  add("L4+A2", 6, {4, 1, 1}, "0;0;0;0;x1x2;x1x5");
  add("L6_3", 6, {4, 1, 1}, "0;0;0;0;x1x2;x1x5+x3x4");
  add("L5_3+A1", 6, {4, 1, 1}, "0;0;0;0;x1x2;x1x5+x2x3");
  add("L6_4", 6, {3, 3}, "0;0;0;x1x2;x1x3;x2x3");
  add("L6_5", 6, {3, 2, 1}, "0;0;0;x1x2;x1x3;x1x4");
  add("L6_6", 6, {3, 2, 1}, "0;0;0;x1x2;x1x3;x2x4");
  add("L6_7", 6, {3, 2, 1}, "0;0;0;x1x2;x1x3;x1x5+x2x4");
  add("L6_8", 6, {3, 2, 1}, "0;0;0;x1x2;x1x3;x2x4+a*x3x5", F::Lambda);
  add("L6_9", 6, {3, 2, 1}, "0;0;0;x1x2;x1x3;x1x4+x2x3");
  add("L5_5+A1", 6, {3, 1, 2}, "0;0;0;x1x2;x1x4;x2x4");
  add("L6_10", 6, {3, 1, 2}, "0;0;0;x1x2;x1x4;x2x3+x2x4");
  add("L6_11", 6, {3, 1, 2}, "0;0;0;x1x2;x1x4;x1x3+x2x4");
  add("L6_12", 6, {3, 1, 2}, "0;0;0;x1x2;x1x4+x2x3;x1x3+a*x2x4",
      F::LambdaMinusOne);
  add("L5_4+A1", 6, {3, 1, 1, 1}, "0;0;0;x1x2;x1x4;x1x5");
  add("L6_13", 6, {3, 1, 1, 1}, "0;0;0;x1x2;x1x4;x1x5+x2x3");
  add("L5_6+A1", 6, {3, 1, 1, 1}, "0;0;0;x1x2;x1x4;x1x5+x2x4");
  add("L6_14", 6, {3, 1, 1, 1}, "0;0;0;x1x2;x1x4;x1x5+x2x3+x2x4");
  add("L6_15", 6, {3, 1, 1, 1}, "0;0;0;x1x2;x1x4+x2x3;x1x5-x3x4");
  add("L6_16", 6, {2, 1, 2, 1}, "0;0;x1x2;x1x3;x2x3;x1x4");
  add("L6_17", 6, {2, 1, 2, 1}, "0;0;x1x2;x1x3;x2x3;x1x4+a*x2x5", F::Lambda);
  add("L6_18", 6, {2, 1, 1, 1, 1}, "0;0;x1x2;x1x3;x1x4;x1x5");
  add("L6_19", 6, {2, 1, 1, 1, 1}, "0;0;x1x2;x1x3;x1x4;x1x5+x2x3");
  add("L6_20", 6, {2, 1, 1, 1, 1}, "0;0;x1x2;x1x3;x1x4;x2x5-x3x4");
  add("L6_21", 6, {2, 1, 1, 1, 1}, "0;0;x1x2;x1x3;x1x4+x2x3;x1x5+x2x4");
  add("L6_22", 6, {2, 1, 1, 1, 1}, "0;0;x1x2;x1x3;x1x4+x2x3;x2x5-x3x4");
  return r;
}

}  // namespace

const std::vector<RegistryRow>& registry() {
  static const std::vector<RegistryRow> r = build_registry();
  return r;
}

const RegistryRow* registry_find(const std::string& base) {
  for (const RegistryRow& row : registry())
    if (row.base == base) return &row;
  return nullptr;
}

MinimalAlgebra instantiate_row(const RegistryRow& row, const FieldMode& mode,
                               std::optional<Scalar> param) {
  MinimalAlgebra a = MinimalAlgebra::make(row.dim, mode);
  std::size_t pos = 0;
  int gen = 0;
  const std::string& d = row.diffs;
  while (gen < row.dim) {
    std::size_t next = d.find(';', pos);
    std::string expr =
        next == std::string::npos ? d.substr(pos) : d.substr(pos, next - pos);
    a.diffs[static_cast<std::size_t>(gen)] = parse_diff(expr, row.dim, mode, param);
    pos = next == std::string::npos ? d.size() : next + 1;
    ++gen;
  }
  return a;
}

}  // namespace minalg
