#include <doctest.h>

#include "minalg/classify.hpp"
#include "minalg/io.hpp"
#include "minalg/oracle.hpp"

using namespace minalg;

namespace {

std::optional<Scalar> default_param(const RegistryRow& row, std::uint64_t p) {
  if (row.family == FamilyKind::None) return std::nullopt;
  if (p == 0) return Scalar(-1);
  return Scalar(static_cast<long>(least_nonresidue(p)), p);
}

}  // namespace

TEST_CASE("every registry model validates with the tabulated signature") {
  for (const RegistryRow& row : registry()) {
    MinimalAlgebra a = instantiate_row(row, FieldMode::Q(), default_param(row, 0));
    CHECK_NOTHROW(validate(a));
    if (row.dim > 0) CHECK(filtration(a).signature == row.signature);
  }
}

TEST_CASE("classification is idempotent on canonical models") {
  for (const RegistryRow& row : registry()) {
    MinimalAlgebra a = instantiate_row(row, FieldMode::Q(), default_param(row, 0));
    Classification c = classify(a);
    CHECK(c.label.base == row.base);
    CHECK(c.iso == Matrix::identity(row.dim, 0));
  }
}

TEST_CASE("witness soundness on scrambles") {
  Rng rng(5150);
  for (const std::string& base : {"L6_20", "L6_13", "L6_7", "L5_3", "L4"}) {
    MinimalAlgebra a = canonical_model(base, FieldMode::Q());
    for (int t = 0; t < 10; ++t) {
      auto [b, m] = scramble(a, rng.next());
      Classification c = classify(b);
      CHECK(c.label.base == base);
      CHECK(change_basis(b, c.iso) == c.target);
      CHECK(c.target == canonical_model(base, FieldMode::Q()));
    }
  }
}

TEST_CASE("square-class parameter over F3: Legendre symbol (2|3) = -1") {
  // dx5 = x1x3 + 2 x2x4, dx6 = x1x4 + x2x3 over F3
  ParsedInput in = parse_algebra_json(R"({"field":"F3","dim":6,"diffs":[[],[],[],[],
      [{"i":1,"j":3,"c":"1"},{"i":2,"j":4,"c":"2"}],
      [{"i":1,"j":4,"c":"1"},{"i":2,"j":3,"c":"1"}]]})");
  Classification c = classify(in.algebra);
  CHECK(c.label.base == "L6_2");
  REQUIRE(c.label.param.has_value());
  CHECK(c.label.param->rep == Scalar(2, 3));  // the nonsquare class mod 3
  CHECK(!c.label.param->is_trivial());
}

TEST_CASE("canonical_model examples and parameter validation") {
  MinimalAlgebra l64 = canonical_model("L6_4", FieldMode::Q());
  CHECK(l64.diffs[3].str() == "x1x2");
  CHECK(l64.diffs[4].str() == "x1x3");
  CHECK(l64.diffs[5].str() == "x2x3");

  ClassLabel l68m;
  l68m.base = "L6_8";
  l68m.param = SquareClass{FieldMode::R(), Scalar(-1)};
  MinimalAlgebra m = canonical_model(l68m, FieldMode::R());
  CHECK(m.diffs[5].str() == "x2x4 - x3x5");

  ClassLabel l62c;
  l62c.base = "L6_2";
  l62c.param = SquareClass{FieldMode::C(), Scalar(1)};
  CHECK_THROWS_AS(canonical_model(l62c, FieldMode::C()), Error);

  ClassLabel l62triv;
  l62triv.base = "L6_2";
  l62triv.param = SquareClass{FieldMode::Q(), Scalar(1)};
  CHECK_THROWS_AS(canonical_model(l62triv, FieldMode::Q()), Error);

  CHECK_THROWS_AS(canonical_model("L9_1", FieldMode::Q()), Error);
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_classes(FieldMode::Q(), 2).size() == 1);
  CHECK(enumerate_classes(FieldMode::Q(), 3).size() == 2);
  CHECK(enumerate_classes(FieldMode::Q(), 4).size() == 3);
  CHECK(enumerate_classes(FieldMode::Q(), 5).size() == 9);
  CHECK(enumerate_classes(FieldMode::C(), 6).size() == 30);
  CHECK(enumerate_classes(FieldMode::R(), 6).size() == 34);
  CHECK(enumerate_classes(FieldMode::Fp(5), 6).size() == 34);
  // over Q the families appear symbolically
  auto q6 = enumerate_classes(FieldMode::Q(), 6);
  long rigid = 0, families = 0;
  for (const ClassLabel& l : q6) (l.family ? families : rigid)++;
  CHECK(rigid == 28);
  CHECK(families == 4);
}

TEST_CASE("homotopy equivalence semantics") {
  auto inst = [](const std::string& base, long a) {
    return instantiate_row(*registry_find(base), FieldMode::Q(), Scalar(a));
  };
  // 20/5 = 4 is a square: same rational type
  CHECK(homotopy_equivalent(inst("L6_2", 5), inst("L6_2", 20), FieldMode::Q()));
  CHECK(!homotopy_equivalent(inst("L6_2", 2), inst("L6_2", 3), FieldMode::Q()));
  CHECK(homotopy_equivalent(inst("L6_2", 2), inst("L6_2", 3), FieldMode::C()));
  // both positive: the same sign class over R
  CHECK(homotopy_equivalent(inst("L6_17", 2), inst("L6_17", 1), FieldMode::R()));
  CHECK(!homotopy_equivalent(inst("L6_17", 2), inst("L6_17", 1), FieldMode::Q()));
  // any model vs itself
  MinimalAlgebra self = canonical_model("L6_9", FieldMode::Q());
  CHECK(homotopy_equivalent(self, self, FieldMode::Q()));
  // different lines never match
  CHECK(!homotopy_equivalent(canonical_model("L6_20", FieldMode::Q()),
                             canonical_model("L6_22", FieldMode::Q()),
                             FieldMode::R()));
  CHECK_THROWS_AS(homotopy_equivalent(self, self, FieldMode::Fp(5)), Error);
}

TEST_CASE("R and C mode classification collapses parameters") {
  // over R, a positive parameter in L6_2 is a square: the pencil meets the
  // quadric and the algebra is L3+L3
  MinimalAlgebra a = instantiate_row(*registry_find("L6_2"), FieldMode::R(),
                                     Scalar(2));
  Classification c = classify(a);
  CHECK(c.label.base == "L3+L3");
  CHECK(c.arithmetic_label.base == "L6_2");
  CHECK(c.arithmetic_label.param->rep == Scalar(2));
  // the witness still certifies the rational canonical form
  CHECK(change_basis(a, c.iso) == c.target);

  MinimalAlgebra b = instantiate_row(*registry_find("L6_12"), FieldMode::R(),
                                     Scalar(3));
  CHECK(classify(b).label.base == "L6_10");
  MinimalAlgebra bneg = instantiate_row(*registry_find("L6_12"), FieldMode::R(),
                                        Scalar(-3));
  Classification cneg = classify(bneg);
  CHECK(cneg.label.base == "L6_12");
  CHECK(cneg.label.param->rep == Scalar(-1));

  // over C every parameter collapses to the trivial class
  MinimalAlgebra c8 = instantiate_row(*registry_find("L6_8"), FieldMode::C(),
                                      Scalar(-7));
  Classification cc = classify(c8);
  CHECK(cc.label.base == "L6_8");
  CHECK(cc.label.param->is_trivial());
}

TEST_CASE("degenerations: zero parameter drops each family one line down") {
  auto degenerate = [](const std::string& base) {
    MinimalAlgebra a =
        instantiate_row(*registry_find(base), FieldMode::Q(), Scalar(0));
    return classify(a).label;
  };
  CHECK(degenerate("L6_2").base == "L6_1");
  CHECK(degenerate("L6_8").base == "L6_6");
  CHECK(degenerate("L6_12").base == "L6_9");
  CHECK(degenerate("L6_17").base == "L6_16");
}

TEST_CASE("trivial-class members of the Lambda-minus-one families collapse") {
  // a = 1 in the L6_2 pattern is isomorphic to L3+L3, and in L6_12 to L6_10
  MinimalAlgebra a =
      instantiate_row(*registry_find("L6_2"), FieldMode::Q(), Scalar(1));
  CHECK(classify(a).label.base == "L3+L3");
  MinimalAlgebra b =
      instantiate_row(*registry_find("L6_12"), FieldMode::Q(), Scalar(4));
  CHECK(classify(b).label.base == "L6_10");
}

TEST_CASE("parameters are stable under scrambling, including square moves") {
  Rng rng(808);
  for (const std::string& base : {"L6_2", "L6_8", "L6_12", "L6_17"}) {
    for (long v : {-1L, 2L, 3L}) {
      MinimalAlgebra a = instantiate_row(*registry_find(base), FieldMode::Q(),
                                         Scalar(v));
      // multiply the parameter by a square: same class must come back
      MinimalAlgebra a4 = instantiate_row(*registry_find(base), FieldMode::Q(),
                                          Scalar(4 * v));
      Classification c = classify(a), c4 = classify(a4);
      CHECK(c.label == c4.label);
      for (int t = 0; t < 5; ++t) {
        Classification cs = classify(scramble(a, rng.next()).first);
        CHECK(cs.label == c.label);
      }
    }
  }
}

TEST_CASE("dimension guard and label rendering") {
  MinimalAlgebra a = MinimalAlgebra::make(7, FieldMode::Q());
  CHECK_THROWS_AS(classify(a), Error);

  ClassLabel l;
  l.base = "L6_8";
  l.param = SquareClass{FieldMode::Q(), Scalar(-1)};
  CHECK(l.str() == "L6_8[a=-1]");
  l.param = SquareClass{FieldMode::Fp(5), Scalar(2, 5)};
  CHECK(l.str() == "L6_8[a=2 mod 5]");
  ClassLabel fam;
  fam.base = "L6_2";
  fam.family = true;
  CHECK(fam.str() == "L6_2[a]");
  CHECK(canonical_model("A6", FieldMode::Q()).n == 6);
}

TEST_CASE("low dimensions classify by convention") {
  CHECK(classify(MinimalAlgebra::make(0, FieldMode::Q())).label.base == "A0");
  CHECK(classify(MinimalAlgebra::make(1, FieldMode::Q())).label.base == "A1");
  CHECK(classify(MinimalAlgebra::make(2, FieldMode::Q())).label.base == "A2");
}
