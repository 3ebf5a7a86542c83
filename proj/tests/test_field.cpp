#include <doctest.h>

#include "minalg/field.hpp"
#include "minalg/oracle.hpp"

using namespace minalg;

TEST_CASE("field mode parsing and characteristic-2 rejection") {
  CHECK(FieldMode::parse("Q") == FieldMode::Q());
  CHECK(FieldMode::parse("F7").p == 7);
  CHECK(FieldMode::Fp(11).str() == "F11");
  CHECK_THROWS_AS(FieldMode::Fp(2), Error);
  CHECK_THROWS_AS(FieldMode::parse("F2"), Error);
  CHECK_THROWS_AS(FieldMode::Fp(9), Error);  // not prime
  CHECK_THROWS_AS(FieldMode::parse("F1"), Error);
}

TEST_CASE("scalar arithmetic and serialization") {
  Scalar a = Scalar::parse("2/4");
  CHECK(a.str() == "1/2");  // lowest terms
  Scalar b = Scalar::parse("-3/7");
  CHECK((a * b).str() == "-3/14");
  CHECK((a + b).str() == "1/14");
  CHECK((a / b).str() == "-7/6");
  CHECK_THROWS_AS(a / Scalar(0), Error);

  Scalar r = Scalar::parse("9 mod 7");
  CHECK(r.str() == "2 mod 7");
  CHECK((r.inverse() * r).is_one());
  Scalar half = Scalar(1, 7) / Scalar(2, 7);
  CHECK(half.str() == "4 mod 7");
}

TEST_CASE("square class examples") {
  // 12 = 2^2 * 3: squarefree part 3
  CHECK(square_class(Scalar(12), FieldMode::Q()).rep == Scalar(3));
  // sign is the only real invariant
  CHECK(square_class(Scalar(-5), FieldMode::R()).rep == Scalar(-1));
  // squares mod 7 are {1,2,4}; 3 is a nonresidue
  SquareClass c7 = square_class(Scalar(3, 7), FieldMode::Fp(7));
  CHECK(!c7.is_trivial());
  CHECK(c7.rep == Scalar(3, 7));  // least nonresidue mod 7 is 3
  CHECK(square_class(Scalar(2, 7), FieldMode::Fp(7)).is_trivial());
  CHECK_THROWS_AS(square_class(Scalar(0), FieldMode::Q()), Error);
}

TEST_CASE("square class counts") {
  CHECK(square_class_count(FieldMode::C()).count == 1);
  CHECK(square_class_count(FieldMode::R()).count == 2);
  CHECK(square_class_count(FieldMode::Fp(11)).count == 2);
  CHECK(square_class_count(FieldMode::Q()).infinite);
  CHECK(square_class_count(FieldMode::Q()).str() == "Infinite");
}

TEST_CASE("rational class in mode") {
  CHECK(rational_class_in_mode(Scalar(8), FieldMode::R()).rep == Scalar(1));
  CHECK(rational_class_in_mode(Scalar(-3), FieldMode::C()).is_trivial());
  CHECK(rational_class_in_mode(Scalar(18), FieldMode::Q()).rep == Scalar(2));
  CHECK_THROWS_AS(rational_class_in_mode(Scalar(3), FieldMode::Fp(5)), Error);
}

TEST_CASE("square classes are invariant under multiplication by squares") {
  Rng rng(12345);
  for (int t = 0; t < 1000; ++t) {
    long xn = rng.range(-50, 50), xd = rng.range(1, 30);
    long yn = rng.range(-50, 50), yd = rng.range(1, 30);
    if (xn == 0 || yn == 0) continue;
    Scalar x(mpq_class(xn, xd), 0), y(mpq_class(yn, yd), 0);
    CHECK(square_class(x * y * y, FieldMode::Q()) ==
          square_class(x, FieldMode::Q()));
    CHECK(square_class(x * y * y, FieldMode::R()) ==
          square_class(x, FieldMode::R()));
  }
}

TEST_CASE("each Fp class holds exactly (p-1)/2 residues") {
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    FieldMode mode = FieldMode::Fp(p);
    long trivial = 0, nontrivial = 0;
    for (long k = 1; k < static_cast<long>(p); ++k) {
      if (square_class(Scalar(k, p), mode).is_trivial())
        ++trivial;
      else
        ++nontrivial;
    }
    CHECK(trivial == static_cast<long>((p - 1) / 2));
    CHECK(nontrivial == static_cast<long>((p - 1) / 2));
  }
}

TEST_CASE("rational_class_in_mode consistency") {
  Rng rng(99);
  for (int t = 0; t < 200; ++t) {
    long n = rng.range(-60, 60);
    if (n == 0) continue;
    Scalar x(n);
    CHECK(rational_class_in_mode(x, FieldMode::C()).is_trivial());
    CHECK(rational_class_in_mode(x, FieldMode::R()).rep ==
          Scalar(n > 0 ? 1 : -1));
    CHECK(rational_class_in_mode(x, FieldMode::Q()) ==
          square_class(x, FieldMode::Q()));
  }
}

TEST_CASE("squarefree part, guard and exact square roots") {
  CHECK(squarefree_part(mpz_class(72)) == 2);
  CHECK(squarefree_part(mpz_class(-45)) == -5);
  CHECK(squarefree_part(mpz_class(1)) == 1);
  // 10^13 + 37 and 10^13 + 51 are coprime, far above the guard; their
  // product has no small factors and is not a square.
  mpz_class big("10000000000037");
  CHECK_THROWS_AS(squarefree_part(big * (big + 14)), Error);
  // but perfect squares of big primes carry no squarefree content
  CHECK(squarefree_part(big * big) == 1);

  CHECK(sqrt_arith(Scalar(mpq_class(9, 4), 0)) == Scalar(mpq_class(3, 2), 0));
  CHECK(!is_square_arith(Scalar(-4)));
  CHECK(is_square_arith(Scalar(2, 7)));
  Scalar r = sqrt_arith(Scalar(2, 7));
  CHECK(r * r == Scalar(2, 7));
  CHECK(sqrt_arith(Scalar(1, 13)).is_one());
}

TEST_CASE("least nonresidue") {
  CHECK(least_nonresidue(3) == 2);
  CHECK(least_nonresidue(5) == 2);
  CHECK(least_nonresidue(7) == 3);
  CHECK(least_nonresidue(11) == 2);
  CHECK(least_nonresidue(73) == 5);
}
