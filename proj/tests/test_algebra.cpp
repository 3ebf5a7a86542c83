#include <doctest.h>

#include "minalg/classify.hpp"
#include "minalg/io.hpp"
#include "minalg/oracle.hpp"
#include "minalg/symplectic.hpp"

using namespace minalg;

namespace {

MinimalAlgebra from_json(const std::string& text) {
  return parse_algebra_json(text).algebra;
}

}  // namespace

TEST_CASE("validate accepts the abelian algebra and Table rows") {
  MinimalAlgebra a6 = canonical_model("A6", FieldMode::Q());
  CHECK_NOTHROW(validate(a6));
  MinimalAlgebra l622 = canonical_model("L6_22", FieldMode::Q());
  CHECK_NOTHROW(validate(l622));
}

TEST_CASE("a generator inside its own differential is not nilpotent") {
  // dx2 = x1x2: W_1 = span{x1} is a fixed point of the filtration
  MinimalAlgebra a = MinimalAlgebra::make(2, FieldMode::Q());
  a.diffs[1].set(mono_from_indices({1, 2}), Scalar(1));
  CHECK_THROWS_WITH_AS(validate(a), doctest::Contains("stabilizes"), Error);
}

TEST_CASE("non-closed differential reports the failing generator") {
  // dx4 = x3x4 with dx3 = x1x2: d(dx4) != 0
  MinimalAlgebra a = MinimalAlgebra::make(4, FieldMode::Q());
  a.diffs[2].set(mono_from_indices({1, 2}), Scalar(1));
  a.diffs[3].set(mono_from_indices({1, 3}), Scalar(1));
  a.diffs[3].set(mono_from_indices({2, 3}), Scalar(1));
  a.diffs[3].set(mono_from_indices({3, 4}), Scalar(1));
  try {
    validate(a);
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.kind() == Err::NotClosed);
    CHECK(e.index() == 4);
  }
}

TEST_CASE("Heisenberg bracket converts to dx3 = x1x2") {
  LieAlgebra g;
  g.n = 3;
  g.mode = FieldMode::Q();
  g.c[{1, 2, 3}] = Scalar(-1);  // [X1,X2] = -X3
  MinimalAlgebra a = from_lie(g);
  CHECK(a.diffs[2].coeff(1, 2) == Scalar(1));
  CHECK(to_lie(a) == g);
}

TEST_CASE("abelian converts to zero differentials and back") {
  LieAlgebra g;
  g.n = 4;
  g.mode = FieldMode::Q();
  MinimalAlgebra a = from_lie(g);
  for (const auto& d : a.diffs) CHECK(d.is_zero());
  CHECK(to_lie(a).c.empty());
}

TEST_CASE("from_lie and to_lie are mutually inverse on random valid algebras") {
  Rng rng(17);
  int done = 0;
  while (done < 50) {
    // random scramble of a random canonical model gives a valid Lie algebra
    const auto& reg = registry();
    const RegistryRow& row = reg[rng.next() % reg.size()];
    if (row.dim < 2) continue;
    MinimalAlgebra a = instantiate_row(
        row, FieldMode::Q(),
        row.family == FamilyKind::None ? std::optional<Scalar>() : Scalar(2));
    MinimalAlgebra b = scramble(a, rng.next()).first;
    LieAlgebra g = to_lie(b);
    CHECK(from_lie(g) == b);
    CHECK(to_lie(from_lie(g)) == g);
    ++done;
  }
}

TEST_CASE("Jacobi fails exactly when d fails to square to zero") {
  // perturb one structure constant of L5_5 and watch both checks fail
  MinimalAlgebra a = canonical_model("L5_5", FieldMode::Q());
  LieAlgebra g = to_lie(a);
  CHECK(!jacobi_failure(g).has_value());
  g.c[{1, 3, 5}] = Scalar(1);  // [X1,X3] += X5
  auto bad = jacobi_failure(g);
  REQUIRE(bad.has_value());
  MinimalAlgebra b = MinimalAlgebra::make(g.n, g.mode);
  for (const auto& [key, c] : g.c) {
    auto [j, k, i] = key;
    b.diffs[static_cast<std::size_t>(i - 1)].add(mono_from_indices({j, k}), -c);
  }
  bool d2_fails = false;
  for (int i = 0; i < b.n; ++i)
    if (!apply_d(b, b.diffs[static_cast<std::size_t>(i)]).is_zero()) d2_fails = true;
  CHECK(d2_fails);
}

TEST_CASE("filtration signatures") {
  CHECK(filtration(canonical_model("A6", FieldMode::Q())).signature ==
        std::vector<int>{6});
  CHECK(filtration(canonical_model("L5_3+A1", FieldMode::Q())).signature ==
        std::vector<int>{4, 1, 1});
  CHECK(filtration(canonical_model("L6_22", FieldMode::Q())).signature ==
        std::vector<int>{2, 1, 1, 1, 1});
  // f1 = 2 forces f2 = 1 on every registry row
  for (const RegistryRow& row : registry())
    if (row.signature.size() >= 2 && row.signature[0] == 2)
      CHECK(row.signature[1] == 1);
}

TEST_CASE("signature is a basis-change invariant") {
  Rng rng(777);
  for (const RegistryRow& row : registry()) {
    if (row.dim != 6) continue;
    MinimalAlgebra a = instantiate_row(
        row, FieldMode::Q(),
        row.family == FamilyKind::None ? std::optional<Scalar>() : Scalar(3));
    for (int t = 0; t < 5; ++t) {
      MinimalAlgebra b = scramble(a, rng.next()).first;
      CHECK(filtration(b).signature == row.signature);
    }
  }
}

TEST_CASE("adapted basis is triangular for the filtration") {
  MinimalAlgebra a = scramble(canonical_model("L6_21", FieldMode::Q()), 5).first;
  FiltrationResult f = filtration(a);
  MinimalAlgebra b = change_basis(a, f.adapted);
  // every level-k generator differential lands in Λ² of the lower levels
  int start = f.signature[0];
  for (int lev = 1; lev < f.levels(); ++lev) {
    for (int i = 0; i < f.signature[static_cast<std::size_t>(lev)]; ++i) {
      const ExteriorElement& d = b.diffs[static_cast<std::size_t>(start + i)];
      for (const auto& [m, c] : d.terms())
        for (int idx : mono_indices(m)) CHECK(idx <= start);
    }
    start += f.signature[static_cast<std::size_t>(lev)];
  }
}

TEST_CASE("betti numbers: abelian binomials") {
  CHECK(betti(canonical_model("A6", FieldMode::Q())) ==
        BettiVector{1, 6, 15, 20, 15, 6, 1});
}

TEST_CASE("betti numbers: worked example b2 = 8 - 3 = 5") {
  ClassLabel l;
  l.base = "L6_12";
  l.param = SquareClass{FieldMode::Q(), Scalar(-1)};
  MinimalAlgebra a = canonical_model(l, FieldMode::Q());
  CHECK(closed_two_forms(a).dim() == 8);
  BettiVector b = betti(a);
  CHECK(b[2] == 5);
  long total = 0;
  for (long x : b) total += x;
  CHECK(total == 24);
}

TEST_CASE("betti numbers: smallest total cohomology") {
  BettiVector b = betti(canonical_model("L6_22", FieldMode::Q()));
  CHECK(b == BettiVector{1, 2, 2, 2, 2, 2, 1});
}

TEST_CASE("betti invariants hold on every dim-6 canonical model") {
  for (const RegistryRow& row : registry()) {
    if (row.dim != 6) continue;
    MinimalAlgebra a = instantiate_row(
        row, FieldMode::Q(),
        row.family == FamilyKind::None ? std::optional<Scalar>() : Scalar(-1));
    BettiVector b = betti(a);
    long total = 0, alt = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      total += b[k];
      alt += (k % 2 == 0 ? 1 : -1) * b[k];
      CHECK(b[k] == b[b.size() - 1 - k]);
    }
    CHECK(alt == 0);
    CHECK(b[3] == 2 * (b[0] - b[1] + b[2]));
    CHECK(b[1] == row.signature[0]);
    CHECK(total >= 12);
  }
}

TEST_CASE("h2 classes") {
  // abelian level: everything closed, nothing exact
  MinimalAlgebra a4 = canonical_model("A4", FieldMode::Q());
  H2Result h = h2_classes(a4, 1);
  CHECK(h.closed.dim() == 6);
  CHECK(h.exact.dim() == 0);
  CHECK(h.reps.size() == 6);

  // chain model: H² = <x1x5, x2x3, x2x5 - x3x4>
  MinimalAlgebra l54 = canonical_model("L5_4", FieldMode::Q());
  H2Result h2 = h2_classes(l54, 4);
  REQUIRE(h2.reps.size() == 3);
  CHECK(h2.reps[0].str() == "x1x5");
  CHECK(h2.reps[1].str() == "x2x3");
  CHECK(h2.reps[2].str() == "x2x5 - x3x4");

  // level 2 of L4: closed 2-forms of Λ(x1,x2,x3) with dx3 = x1x2
  MinimalAlgebra l4 = canonical_model("L4", FieldMode::Q());
  H2Result h3 = h2_classes(l4, 2);
  CHECK(h3.closed.dim() == 3);  // x1x2, x1x3, x2x3
  CHECK(h3.exact.dim() == 1);   // x1x2
}

TEST_CASE("json round trip, including Lie input") {
  MinimalAlgebra a = from_json(
      R"({"field":"Q","dim":3,"diffs":[[],[],[{"i":1,"j":2,"c":"1"}]]})");
  CHECK(a == canonical_model("L3", FieldMode::Q()));
  CHECK(from_json(algebra_to_json(a)) == a);

  ParsedInput lie = parse_algebra_json(
      R"({"field":"Q","dim":3,"brackets":[{"j":1,"k":2,"i":3,"c":"-1"}]})");
  CHECK(lie.was_lie);
  CHECK(lie.algebra == a);

  CHECK_THROWS_AS(parse_algebra_json("{not json"), Error);
  CHECK_THROWS_AS(parse_algebra_json(R"({"dim":3})"), Error);
}
