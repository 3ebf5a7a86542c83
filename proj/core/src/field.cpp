#include "minalg/field.hpp"

#include <vector>

namespace minalg {

namespace {

bool is_prime_u64(std::uint64_t n) {
  mpz_class z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 32) != 0;
}

mpz_class mpz_from_u64(std::uint64_t v) {
  return mpz_class(static_cast<unsigned long>(v));
}

// x^((p-1)/2) mod p: 1 for residues, p-1 for nonresidues.
bool euler_is_square(const mpz_class& x, std::uint64_t p) {
  mpz_class r, e = (mpz_from_u64(p) - 1) / 2, m = mpz_from_u64(p);
  mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r <= 1;  // 0 handled by callers; 1 means square
}

// Tonelli-Shanks over Fp, p odd prime; a must be a nonzero square.
mpz_class tonelli_shanks(const mpz_class& a, std::uint64_t p) {
  mpz_class m = mpz_from_u64(p);
  if (a == 0) return 0;
  if (p % 4 == 3) {
    mpz_class r, e = (m + 1) / 4;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  // p = 1 mod 4: full Tonelli-Shanks.
  mpz_class q = m - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (euler_is_square(z, p)) ++z;
  mpz_class c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), m.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  unsigned long mm = s;
  while (t != 1) {
    mpz_class tt = t;
    unsigned long i = 0;
    while (tt != 1) {
      mpz_class sq = (tt * tt) % m;
      tt = sq;
      ++i;
      check(i < mm, "tonelli-shanks: input was not a square");
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + i + 1 < mm; ++j) b = (b * b) % m;
    mm = i;
    c = (b * b) % m;
    t = (t * c) % m;
    r = (r * b) % m;
  }
  return r;
}

mpz_class mod_inverse(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (!ok) fail(Err::ZeroElement, "no inverse modulo " + m.get_str());
  return r;
}

}  // namespace

FieldMode FieldMode::Fp(std::uint64_t p) {
  if (p < 3) fail(Err::BadMode, "Fp requires an odd prime, got p=" + std::to_string(p));
  if (p % 2 == 0) fail(Err::BadMode, "characteristic 2 is not supported");
  if (!is_prime_u64(p)) fail(Err::BadMode, "p=" + std::to_string(p) + " is not prime");
  return {Kind::Fp, p};
}

FieldMode FieldMode::parse(const std::string& s) {
  if (s == "Q") return Q();
  if (s == "R") return R();
  if (s == "C") return C();
  if (s.size() >= 2 && s[0] == 'F') {
    std::uint64_t p = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') fail(Err::BadMode, "bad field mode: " + s);
      p = p * 10 + static_cast<std::uint64_t>(s[i] - '0');
    }
    return Fp(p);
  }
  fail(Err::BadMode, "bad field mode: " + s);
}

std::string FieldMode::str() const {
  switch (kind) {
    case Kind::Q: return "Q";
    case Kind::R: return "R";
    case Kind::C: return "C";
    case Kind::Fp: return "F" + std::to_string(p);
  }
  return "?";
}

void Scalar::reduce() {
  if (p_ == 0) return;
  mpz_class m = mpz_from_u64(p_);
  mpz_class num = v_.get_num(), den = v_.get_den();
  if (den != 1) num = num * mod_inverse(den % m, m);
  mpz_class r = num % m;
  if (r < 0) r += m;
  v_ = mpq_class(r);
}

Scalar Scalar::parse(const std::string& s, std::uint64_t p) {
  std::string body = s;
  auto mod_pos = s.find(" mod ");
  if (mod_pos != std::string::npos) {
    std::uint64_t sp = std::stoull(s.substr(mod_pos + 5));
    if (p != 0 && sp != p) fail(Err::Parse, "scalar modulus mismatch in '" + s + "'");
    p = sp;
    body = s.substr(0, mod_pos);
  }
  mpq_class v;
  if (v.set_str(body, 10) != 0) fail(Err::Parse, "bad scalar literal '" + s + "'");
  if (v.get_den() == 0) fail(Err::Parse, "zero denominator in '" + s + "'");
  v.canonicalize();
  return Scalar(v, p);
}

Scalar Scalar::operator+(const Scalar& o) const {
  same_field(o);
  return Scalar(mpq_class(v_ + o.v_), p_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  same_field(o);
  return Scalar(mpq_class(v_ - o.v_), p_);
}

Scalar Scalar::operator*(const Scalar& o) const {
  same_field(o);
  return Scalar(mpq_class(v_ * o.v_), p_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  same_field(o);
  return *this * o.inverse();
}

Scalar Scalar::operator-() const { return Scalar(mpq_class(-v_), p_); }

Scalar Scalar::inverse() const {
  if (is_zero()) fail(Err::ZeroElement, "division by zero");
  if (p_ == 0) return Scalar(mpq_class(1 / v_), p_);
  return Scalar(mpq_class(mod_inverse(v_.get_num(), mpz_from_u64(p_))), p_);
}

std::string Scalar::str() const {
  if (p_ == 0) return v_.get_str();
  return v_.get_num().get_str() + " mod " + std::to_string(p_);
}

std::string SquareClassCount::str() const {
  return infinite ? "Infinite" : std::to_string(count);
}

mpz_class squarefree_part(const mpz_class& n, std::uint64_t bound) {
  check(n != 0, "squarefree_part of zero");
  int sign = sgn(n);
  mpz_class r = abs(n);
  mpz_class b = mpz_from_u64(bound);
  mpz_class out = 1;
  // Trial division up to sqrt(bound); everything the guard admits factors here.
  mpz_class dmax;
  mpz_sqrt(dmax.get_mpz_t(), b.get_mpz_t());
  for (mpz_class d = 2; d <= dmax && d * d <= r; d += (d == 2) ? 1 : 2) {
    if (r % d != 0) continue;
    int e = 0;
    while (r % d == 0) {
      r /= d;
      ++e;
    }
    if (e % 2 == 1) out *= d;
  }
  // Cofactor: all its prime factors exceed sqrt(bound).
  while (r > 1) {
    if (r <= b) {
      out *= r;  // a single prime
      break;
    }
    if (mpz_perfect_square_p(r.get_mpz_t())) break;  // even exponents: no content
    fail(Err::FactorizationTooHard,
         "factorization guard exceeded (cofactor " + r.get_str() + ")");
  }
  return sign * out;
}

std::uint64_t least_nonresidue(std::uint64_t p) {
  for (std::uint64_t c = 2; c < p; ++c) {
    if (!euler_is_square(mpz_from_u64(c), p)) return c;
  }
  fail(Err::Internal, "no quadratic nonresidue found mod " + std::to_string(p));
}

SquareClass square_class(const Scalar& x, const FieldMode& mode, std::uint64_t bound) {
  if (x.is_zero()) fail(Err::ZeroElement, "square class of zero");
  if (mode.is_fp()) {
    check(x.modulus() == mode.p, "scalar/mode modulus mismatch");
    bool sq = euler_is_square(x.value().get_num(), mode.p);
    Scalar rep = sq ? Scalar(1, mode.p)
                    : Scalar(static_cast<long>(least_nonresidue(mode.p)), mode.p);
    return {mode, rep};
  }
  check(x.modulus() == 0, "rational mode requires rational scalar");
  switch (mode.kind) {
    case FieldMode::Kind::C:
      return {mode, Scalar(1)};
    case FieldMode::Kind::R:
      return {mode, Scalar(sgn(x.value()) > 0 ? 1 : -1)};
    case FieldMode::Kind::Q: {
      mpz_class sf = squarefree_part(x.value().get_num() * x.value().get_den(), bound);
      return {mode, Scalar(mpq_class(sf), 0)};
    }
    default:
      fail(Err::BadMode, "unexpected mode");
  }
}

SquareClassCount square_class_count(const FieldMode& mode) {
  switch (mode.kind) {
    case FieldMode::Kind::C: return {false, 1};
    case FieldMode::Kind::R: return {false, 2};
    case FieldMode::Kind::Fp: return {false, 2};
    case FieldMode::Kind::Q: return {true, 0};
  }
  return {true, 0};
}

SquareClass rational_class_in_mode(const Scalar& a, const FieldMode& mode,
                                   std::uint64_t bound) {
  if (a.is_zero()) fail(Err::ZeroElement, "square class of zero");
  if (mode.is_fp()) fail(Err::BadMode, "rational_class_in_mode needs Q, R or C");
  check(a.modulus() == 0, "rational_class_in_mode needs a rational scalar");
  return square_class(a, mode, bound);
}

bool same_class(const Scalar& x, const Scalar& y, const FieldMode& mode,
                std::uint64_t bound) {
  return square_class(x, mode, bound) == square_class(y, mode, bound);
}

bool is_square_arith(const Scalar& x) {
  if (x.is_zero()) return true;
  if (x.modulus() != 0) return euler_is_square(x.value().get_num(), x.modulus());
  if (sgn(x.value()) < 0) return false;
  return mpz_perfect_square_p(x.value().get_num().get_mpz_t()) &&
         mpz_perfect_square_p(x.value().get_den().get_mpz_t());
}

Scalar sqrt_arith(const Scalar& x) {
  check(is_square_arith(x), "sqrt of a nonsquare");
  if (x.is_zero()) return Scalar(0, x.modulus());
  if (x.modulus() != 0) {
    mpz_class r = tonelli_shanks(x.value().get_num(), x.modulus());
    mpz_class other = mpz_from_u64(x.modulus()) - r;
    if (other < r) r = other;  // canonical: least residue
    return Scalar(mpq_class(r), x.modulus());
  }
  mpz_class num, den;
  mpz_sqrt(num.get_mpz_t(), x.value().get_num().get_mpz_t());
  mpz_sqrt(den.get_mpz_t(), x.value().get_den().get_mpz_t());
  return Scalar(mpq_class(num, den), 0);
}

}  // namespace minalg
