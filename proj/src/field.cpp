#include "qcov/field.hpp"

namespace qcov {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(fp_t p) : p_(p) {
  if (!is_prime(p)) throw Error("field modulus " + std::to_string(p) + " is not prime");
}

fp_t PrimeField::inv(fp_t a) const {
  if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
  // Extended Euclid on (a, p).
  std::int64_t r0 = a, r1 = p_, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  return reduce(s0);
}

fp_t PrimeField::pow(fp_t a, std::uint64_t e) const {
  fp_t result = 1 % p_;
  fp_t base = a % p_;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace qcov
