#pragma once

#include <vector>

#include "dkit/intpoly.hpp"
#include "dkit/ring.hpp"

namespace dkit {

struct WittParams {
  int p;
  int n;

  bool operator==(const WittParams&) const = default;
};

// Practical guards on structural-polynomial sizes; configurable.
int witt_guard_p();
int witt_guard_n();
void set_witt_guards(int max_p, int max_n);

// The universal integer polynomials giving W_n its ring structure: addition
// polynomials S_k, multiplication polynomials P_k (in 2n variables
// X_0..X_{n-1}, Y_0..Y_{n-1}) and negation polynomials N_k (in n variables),
// determined by the ghost identities
//   w_k(S) = w_k(X) + w_k(Y),  w_k(P) = w_k(X) w_k(Y),  w_k(N) = -w_k(X)
// with w_k(Z) = sum_{i<=k} p^i Z_i^{p^{k-i}}.  Instances are memoized per
// (p, n) behind a mutex; treat them as immutable once obtained.
class StructuralPolynomials {
 public:
  static const StructuralPolynomials& get(int p, int n);

  int p;
  int n;
  std::vector<IntPoly> add;  // S_0..S_{n-1}
  std::vector<IntPoly> mul;  // P_0..P_{n-1}
  std::vector<IntPoly> neg;  // N_0..N_{n-1}

  // mod-p reductions used for evaluation in F_p-algebras
  std::vector<std::map<IntPoly::Expt, int>> add_mod;
  std::vector<std::map<IntPoly::Expt, int>> mul_mod;
  std::vector<std::map<IntPoly::Expt, int>> neg_mod;

  // Teichmuller specializations: S_k([a],[b]) and N_k([a]) as polynomials in
  // two (resp. one) variables, reduced mod p.
  std::vector<std::map<IntPoly::Expt, int>> teich_sum_mod;
  std::vector<std::map<IntPoly::Expt, int>> teich_neg_mod;

  // Recompute the ghost identities from scratch, exactly over Z.
  bool check_ghost_identities() const;

 private:
  StructuralPolynomials(int p, int n);
};

// A truncated Witt vector over an F_p-algebra.
class WittVector {
 public:
  WittVector(WittParams params, std::vector<RingElement> components);

  static WittVector zero(const Ring& ring, int n);
  static WittVector one(const Ring& ring, int n);
  static WittVector teichmuller(const RingElement& a, int n);

  const WittParams& params() const { return params_; }
  int n() const { return params_.n; }
  const Ring& ring() const { return components_[0].ring(); }
  const std::vector<RingElement>& components() const { return components_; }
  const RingElement& component(size_t i) const { return components_[i]; }
  bool is_zero() const;

  WittVector operator+(const WittVector& o) const;
  WittVector operator*(const WittVector& o) const;
  WittVector operator-() const;
  WittVector operator-(const WittVector& o) const;
  bool operator==(const WittVector& o) const;
  bool operator!=(const WittVector& o) const { return !(*this == o); }
  bool operator<(const WittVector& o) const;  // deterministic ordering

  WittVector verschiebung() const;
  WittVector frobenius() const;
  WittVector mul_by_p() const;

  std::string to_string() const;
  // Accepts `w[p,n](c0; c1; ...)` or `w(c0; ...)` (params from arguments).
  static WittVector parse(const Ring& ring, int n, const std::string& text);

  // All of W_n(R) for finite R, deterministic order.
  static std::vector<WittVector> enumerate(const Ring& ring, int n);

 private:
  WittParams params_;
  std::vector<RingElement> components_;
};

// Components of [a] + [b] in W_n: the slot-k Teichmuller cascade coefficients.
std::vector<RingElement> teich_sum_components(const RingElement& a,
                                              const RingElement& b, int n);
// Components of -[a] in W_n.
std::vector<RingElement> teich_neg_components(const RingElement& a, int n);

// Evaluate a reduced-mod-p polynomial at ring elements.
RingElement eval_mod_p(const std::map<IntPoly::Expt, int>& poly,
                       const std::vector<RingElement>& args);

}  // namespace dkit
