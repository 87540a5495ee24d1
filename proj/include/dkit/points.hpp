#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dkit/cosmooth.hpp"

namespace dkit {

// The solutions of the structure equations in W_n(S)^r for a finite
// R-algebra S: tuples (x_1,..,x_r) with sigma(x_j) = sum_k a_{jk}(V) . x_k.
// Each tuple is the generator image of a linear map into W_n(S).
struct PointSet {
  Presentation pres;
  RingHom hom;  // R -> S
  std::vector<std::vector<WittVector>> points;  // sorted lexicographically

  std::vector<WittVector> add(const std::vector<WittVector>& a,
                              const std::vector<WittVector>& b) const;
  std::string to_string() const;
};

PointSet points(const Presentation& pres, const RingHom& h,
                size_t budget = size_t{1} << 20);
// Points over the base ring itself.
PointSet points(const Presentation& pres, size_t budget = size_t{1} << 20);

struct GroupStructure {
  uint64_t order = 0;
  bool axioms_ok = false;
  // Cyclic decomposition: orders of the invariant factors, largest first.
  std::vector<uint64_t> invariant_factors;
  std::string to_string() const;
};

// Validates the abelian-group axioms by table and computes the cyclic
// decomposition from p-power torsion counts.
GroupStructure group_structure(const PointSet& ps);

// d/dvar of g; the variable's monomial bound must vanish mod p (or be free)
// so that the derivation descends to the quotient.
RingElement derivative(const RingElement& g, const std::string& var);

// The derivation f d/dvar on a truncated polynomial ring A = R[T]/(T^{p^N}).
class TruncatedDerivation {
 public:
  TruncatedDerivation(Ring ring, std::string var, RingElement f);

  const Ring& ring() const { return ring_; }
  const std::string& var() const { return var_; }
  const RingElement& coefficient() const { return f_; }

  RingElement apply(const RingElement& g) const;
  bool operator==(const TruncatedDerivation& o) const;

  std::string to_string() const;

 private:
  Ring ring_;
  std::string var_;
  RingElement f_;
};

// (f d/dT)^p, computed by direct p-fold composition and cross-checked against
// the identity (f@)^p = f^p @^p + ((f@)^{p-1} f) @ with @^p = 0.  Throws if
// the two computations disagree, or if the p-th power is not a derivation.
TruncatedDerivation hochschild_p_power(const TruncatedDerivation& d);

// The rank and the matrix of F acting on M/VM (slot-0 structure
// coefficients): the p-operation data of the restricted Lie algebra.
std::pair<int, std::vector<std::vector<RingElement>>> lie_data(
    const Presentation& pres);

}  // namespace dkit
