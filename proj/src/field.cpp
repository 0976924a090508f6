#include "polyirs/field.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "polyirs/errors.hpp"

namespace polyirs {

namespace {

__extension__ using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

void ToleranceProfile::validate() const {
  for (double v : {eq_tol, rank_tol, root_tol, residual_tol, backward_tol}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw InvalidParameters("tolerances must be finite and strictly positive");
    }
  }
}

// Deterministic Miller-Rabin; this witness set is exact for all 64-bit n.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidParameters("prime modulus must be below 2^32");
  }
  if (!is_prime(p)) {
    throw InvalidParameters("modulus " + std::to_string(p) + " is not prime");
  }
}

std::string PrimeField::name() const { return "gf:" + std::to_string(p_); }

void PrimeField::check(Elem a) const {
  if (a >= p_) {
    throw UsageError("operand " + std::to_string(a) + " is not an element of " + name());
  }
}

PrimeField::Elem PrimeField::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::element(std::uint64_t v) const {
  check(v);
  return v;
}

PrimeField::Elem PrimeField::add(Elem a, Elem b) const {
  check(a);
  check(b);
  const Elem s = a + b;
  return s >= p_ ? s - p_ : s;
}

PrimeField::Elem PrimeField::sub(Elem a, Elem b) const {
  check(a);
  check(b);
  return a >= b ? a - b : a + p_ - b;
}

PrimeField::Elem PrimeField::mul(Elem a, Elem b) const {
  check(a);
  check(b);
  return (a * b) % p_;  // both < 2^32
}

PrimeField::Elem PrimeField::neg(Elem a) const {
  check(a);
  return a == 0 ? 0 : p_ - a;
}

PrimeField::Elem PrimeField::pow(Elem a, std::uint64_t e) const {
  check(a);
  return powmod64(a, e, p_);
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  check(a);
  if (a == 0) throw DivisionByZero("inverse of zero in " + name());
  // Extended Euclid on signed 64-bit; p < 2^32 keeps every quantity in range.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(t);
}

PrimeField::Elem PrimeField::primitive_root() const {
  if (p_ == 2) return 1;
  const auto factors = distinct_prime_factors(p_ - 1);
  for (Elem g = 2; g < p_; ++g) {
    bool generator = true;
    for (auto f : factors) {
      if (powmod64(g, (p_ - 1) / f, p_) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  throw InvalidParameters("no primitive root found");  // unreachable for prime p
}

RealField::RealField(ToleranceProfile tol) : tol_(tol) { tol_.validate(); }

RealField::Elem RealField::element(double v) const {
  if (!std::isfinite(v)) throw UsageError("real field elements must be finite");
  return v;
}

RealField::Elem RealField::inv(Elem a) const {
  if (a == 0.0) throw DivisionByZero("inverse of zero in the real field");
  const double r = 1.0 / a;
  if (!std::isfinite(r)) throw DivisionByZero("inverse overflows the real field");
  return r;
}

RealField::Elem RealField::pow(Elem a, std::uint64_t e) const {
  double r = 1.0;
  double base = a;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool RealField::is_zero(Elem a, double scale) const {
  return std::fabs(a) <= tol_.eq_tol * std::max(scale, 1.0);
}

bool RealField::negligible(Elem a, double scale, double tol) const {
  if (scale <= 0.0) return a == 0.0;
  return std::fabs(a) <= tol * scale;
}

double RealField::magnitude(Elem a) const { return std::fabs(a); }

bool operator==(const RealField& a, const RealField& b) {
  const auto& x = a.tol_;
  const auto& y = b.tol_;
  return x.eq_tol == y.eq_tol && x.rank_tol == y.rank_tol && x.root_tol == y.root_tol &&
         x.residual_tol == y.residual_tol && x.backward_tol == y.backward_tol;
}

FieldSpec parse_field(const std::string& text) {
  if (text == "real") return RealField{};
  if (text.rfind("gf:", 0) == 0) {
    const std::string digits = text.substr(3);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidParameters("bad field modulus in '" + text + "'");
    }
    return PrimeField(std::stoull(digits));
  }
  throw InvalidParameters("unknown field '" + text + "' (expected gf:<p> or real)");
}

}  // namespace polyirs
