#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "dkit/errors.hpp"

namespace dkit {

using BigInt = boost::multiprecision::cpp_int;

// Sparse multivariate polynomial with exact integer coefficients.  Only what
// the Witt structural-polynomial computation needs.
class IntPoly {
 public:
  using Expt = std::vector<uint16_t>;

  IntPoly() = default;
  explicit IntPoly(size_t nvars) : nvars_(nvars) {}

  static IntPoly variable(size_t nvars, size_t index);
  static IntPoly constant(size_t nvars, const BigInt& c);

  size_t nvars() const { return nvars_; }
  const std::map<Expt, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly scaled(const BigInt& k) const;
  IntPoly pow(uint64_t e) const;
  // Exact division by k; throws if any coefficient is not divisible.
  IntPoly div_exact(const BigInt& k) const;

  bool operator==(const IntPoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  // Coefficients reduced mod p, zero terms dropped (as small ints).
  std::map<Expt, int> reduced_mod(int p) const;

 private:
  size_t nvars_ = 0;
  std::map<Expt, BigInt> terms_;
};

}  // namespace dkit
