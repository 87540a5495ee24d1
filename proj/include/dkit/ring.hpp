#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dkit/errors.hpp"

namespace dkit {

bool is_prime(long n);

// A variable of a finitely presented F_p-algebra.  bound == 0 means the
// variable is free; bound m >= 1 imposes the relation v^m = 0.
struct Variable {
  std::string name;
  uint32_t bound = 0;

  bool operator==(const Variable&) const = default;
};

enum class RingKind {
  PrimeField,
  GaloisField,
  PolyRing,
  QuotientRing,
  UnivariateQuotient,
};

class RingSpec;
class RingElement;
using Ring = std::shared_ptr<const RingSpec>;

// Exponent vector on the ring's variables, in declaration order.
using Monomial = std::vector<uint32_t>;

// A finitely presented F_p-algebra with computable normal forms.  Supported
// presentations: F_p, GF(p^d), polynomial rings, monomial quotients
// F_p[v_1,..,v_k]/(v_i^{m_i}), and univariate quotients F_p[v]/(f) with f
// monic.  A monic modulus, when present, always binds variable 0; further
// nilpotent variables may be adjoined on top of gf/uq presentations.
class RingSpec : public std::enable_shared_from_this<RingSpec> {
 public:
  static Ring prime_field(int p);
  static Ring galois_field(int p, std::vector<int> modulus,
                           const std::string& var = "x");
  static Ring poly_ring(int p, const std::vector<std::string>& vars);
  static Ring quotient_ring(int p, std::vector<Variable> vars);
  static Ring univariate_quotient(int p, const std::string& var,
                                  std::vector<int> modulus);
  // Adjoin extra (typically nilpotent) variables to an existing ring.
  static Ring extend(const Ring& base, const std::vector<Variable>& extra);

  int p() const { return p_; }
  RingKind kind() const { return kind_; }
  const std::vector<Variable>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const std::optional<std::vector<int>>& modulus() const { return modulus_; }

  bool finite() const;
  uint64_t cardinality() const;
  // Monomial basis in lexicographic order; finite rings only.
  const std::vector<Monomial>& basis() const;

  bool same_as(const RingSpec& other) const;

  RingElement zero() const;
  RingElement one() const;
  RingElement from_int(long v) const;
  RingElement generator(size_t index) const;
  RingElement generator(const std::string& name) const;
  // Build an element from a raw coefficient map; normalizes.
  RingElement element(const std::map<Monomial, int>& coeffs) const;

  // Every element exactly once, lexicographic on coefficient tuples over the
  // monomial basis (first basis monomial most significant).
  std::vector<RingElement> enumerate() const;
  // A small deterministic set of elements spanning the ring's coefficient
  // behaviour; usable on infinite rings too.
  std::vector<RingElement> spanning_set() const;

  int var_index(const std::string& name) const;  // -1 if absent

  std::string to_string() const;
  static Ring parse(const std::string& text);

 private:
  friend class RingElement;
  RingSpec() = default;

  int p_ = 0;
  RingKind kind_ = RingKind::PrimeField;
  std::vector<Variable> vars_;
  // Monic modulus c_0 + c_1 v + ... + v^d on variable 0, stored as
  // coefficients c_0..c_d with c_d == 1.
  std::optional<std::vector<int>> modulus_;

  mutable std::vector<Monomial> basis_;  // lazily built, finite rings only

  static Ring finish(RingSpec spec);
  void validate() const;
};

// An element of a RingSpec, kept in unique normal form: a sparse map from
// reduced monomials to nonzero scalars in [1, p).
class RingElement {
 public:
  RingElement() = default;

  const Ring& ring() const { return ring_; }
  const std::map<Monomial, int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const;
  // The scalar value if the element is a constant, otherwise nullopt.
  std::optional<int> as_constant() const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator-() const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator*(long scalar) const;
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  // Deterministic total order (for sorted outputs).
  bool operator<(const RingElement& o) const { return coeffs_ < o.coeffs_; }

  RingElement pow(uint64_t e) const;
  // a^(p^k)
  RingElement frobenius(unsigned k = 1) const;

  bool is_unit() const;
  // Multiplicative inverse; throws error if not a unit.
  RingElement inverse() const;

  std::string to_string() const;
  static RingElement parse(const Ring& ring, const std::string& text);

 private:
  friend class RingSpec;
  RingElement(Ring ring, std::map<Monomial, int> coeffs)
      : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {}

  Ring ring_;
  std::map<Monomial, int> coeffs_;
};

// A homomorphism of F_p-algebras, determined by generator images.  The
// constructor checks that the images satisfy the source relations.
class RingHom {
 public:
  RingHom(Ring source, Ring target, std::vector<RingElement> images);

  static RingHom identity(const Ring& ring);
  // Source variables map to target variables of the same name.
  static RingHom inclusion(const Ring& source, const Ring& target);

  const Ring& source() const { return source_; }
  const Ring& target() const { return target_; }
  const std::vector<RingElement>& images() const { return images_; }

  RingElement operator()(const RingElement& a) const;
  RingHom compose_after(const RingHom& first) const;  // this ∘ first

 private:
  Ring source_;
  Ring target_;
  std::vector<RingElement> images_;
};

}  // namespace dkit
