#pragma once

#include <compare>
#include <map>

#include "dkit/ring.hpp"
#include "dkit/witt.hpp"

namespace dkit {

// (r, s) position of a normal-form monomial V^r [x] F^s.
struct VFSlot {
  int r;
  int s;
  auto operator<=>(const VFSlot&) const = default;
};

// An element of the truncated Cartier-Dieudonne ring E_n over R, kept in
// Zink normal form: a finite sum  sum V^r [x_{r,s}] F^s  with 0 <= r < n and
// all stored coefficients nonzero.  Equality is equality of the sparse
// coefficient maps.
class CartierElement {
 public:
  static CartierElement zero(const Ring& ring, int n);
  static CartierElement one(const Ring& ring, int n);
  static CartierElement monomial(int n, int r, const RingElement& a, int s);
  static CartierElement F(const Ring& ring, int n);
  static CartierElement V(const Ring& ring, int n);
  // W_n(R) -> E_n,  (w_0,..,w_{n-1}) -> sum V^i [w_i] F^i  (ring hom).
  static CartierElement from_witt(const WittVector& w);

  int level() const { return n_; }
  const Ring& ring() const { return ring_; }
  const std::map<VFSlot, RingElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  CartierElement operator+(const CartierElement& o) const;
  CartierElement operator-() const;
  CartierElement operator-(const CartierElement& o) const;
  CartierElement operator*(const CartierElement& o) const;
  bool operator==(const CartierElement& o) const;
  bool operator!=(const CartierElement& o) const { return !(*this == o); }

  // Action as an endomorphism of W_n(S) for an R-algebra S given by `h`:
  // V^r [a] F^s acts as V^r o (mult by [h(a)]) o sigma^s.
  WittVector act(const WittVector& x, const RingHom& h) const;
  // Action on W_n(R) itself.
  WittVector act(const WittVector& x) const;

  std::string to_string() const;
  static CartierElement parse(const Ring& ring, int n, const std::string& text);

 private:
  CartierElement(int n, Ring ring) : n_(n), ring_(std::move(ring)) {}
  void add_term(int r, int s, const RingElement& a);

  int n_;
  Ring ring_;
  std::map<VFSlot, RingElement> terms_;
};

}  // namespace dkit
