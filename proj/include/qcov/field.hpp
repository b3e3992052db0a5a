#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcov {

using fp_t = std::uint32_t;

// Bad input: malformed files, violated preconditions, unsatisfiable requests.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant, e.g. two cross-checked methods disagree.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

bool is_prime(std::uint64_t n);

// Arithmetic in the prime field F_p. Residues are kept reduced in [0, p).
class PrimeField {
public:
  explicit PrimeField(fp_t p);

  fp_t p() const { return p_; }

  fp_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<fp_t>(r);
  }

  fp_t add(fp_t a, fp_t b) const {
    fp_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  fp_t sub(fp_t a, fp_t b) const { return a >= b ? a - b : a + p_ - b; }

  fp_t neg(fp_t a) const { return a == 0 ? 0 : p_ - a; }

  fp_t mul(fp_t a, fp_t b) const {
    return static_cast<fp_t>(static_cast<std::uint64_t>(a) * b % p_);
  }

  fp_t inv(fp_t a) const;
  fp_t div(fp_t a, fp_t b) const { return mul(a, inv(b)); }
  fp_t pow(fp_t a, std::uint64_t e) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

private:
  fp_t p_;
};

}  // namespace qcov
