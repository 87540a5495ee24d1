#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "dkit/cartier.hpp"

namespace dkit {

class CosmoothPresentation;
using Presentation = std::shared_ptr<const CosmoothPresentation>;

// A rank-r module over the level-n Cartier ring, presented by structure
// equations  F e_i = sum_j a_{ij}(V) e_j  with  a_{ij}(V) = sum_k V^k [a_ijk].
// Coefficients are stored as the r x r x n array a[i][j][k].
class CosmoothPresentation
    : public std::enable_shared_from_this<CosmoothPresentation> {
 public:
  using CoeffArray = std::vector<std::vector<std::vector<RingElement>>>;

  static Presentation make(const Ring& ring, int n, int r, CoeffArray coeffs);
  // Rank-1 convenience: F e = (sum_k V^k [a_k]) e.
  static Presentation make_rank1(const Ring& ring, int n,
                                 std::vector<RingElement> a);

  int level() const { return n_; }
  int rank() const { return r_; }
  const Ring& ring() const { return ring_; }
  const RingElement& coeff(int i, int j, int k) const {
    return coeffs_[i][j][k];
  }
  // a_{ij}(V) as a Cartier-ring element (pure V-part).
  CartierElement coeff_op(int i, int j) const;

  bool same_as(const CosmoothPresentation& o) const;

  // Text format: header `cosmooth p=<p> n=<n> r=<r> ring=<ringspec>` followed
  // by lines `a[i][j] = [c_0, ..., c_{n-1}]` (1-based i, j).
  std::string to_string() const;
  static Presentation parse(const std::string& text);

 private:
  CosmoothPresentation(Ring ring, int n, int r, CoeffArray coeffs)
      : ring_(std::move(ring)), n_(n), r_(r), coeffs_(std::move(coeffs)) {}

  Ring ring_;
  int n_;
  int r_;
  CoeffArray coeffs_;
};

// An element in canonical coordinates:  m = sum_{i<n} sum_{j<r} V^i [c_ij] e_j,
// with coords[i][j] = c_ij.  Equality is coordinate equality.
class ModuleElement {
 public:
  static ModuleElement zero(const Presentation& pres);
  static ModuleElement generator(const Presentation& pres, int j);
  static ModuleElement from_coords(const Presentation& pres,
                                   std::vector<std::vector<RingElement>> coords);
  // Reduce an arbitrary operator vector sum_j ops[j] e_j to canonical
  // coordinates by rewriting F e_j through the structure equations.
  static ModuleElement from_operators(const Presentation& pres,
                                      std::vector<CartierElement> ops);

  const Presentation& presentation() const { return pres_; }
  const std::vector<std::vector<RingElement>>& coords() const { return coords_; }
  const RingElement& coord(int i, int j) const { return coords_[i][j]; }
  bool is_zero() const;

  ModuleElement operator+(const ModuleElement& o) const;
  ModuleElement operator-() const;
  ModuleElement operator-(const ModuleElement& o) const;
  bool operator==(const ModuleElement& o) const;
  bool operator!=(const ModuleElement& o) const { return !(*this == o); }
  bool operator<(const ModuleElement& o) const;  // deterministic ordering

  ModuleElement act_V() const;
  ModuleElement act_F() const;
  ModuleElement act_scalar(const WittVector& w) const;
  ModuleElement act(const CartierElement& c) const;

  std::string to_string() const;

 private:
  ModuleElement(Presentation pres, std::vector<std::vector<RingElement>> coords)
      : pres_(std::move(pres)), coords_(std::move(coords)) {}
  // The operator vector sum_i V^i [c_ij] per generator j.
  std::vector<CartierElement> to_operators() const;

  Presentation pres_;
  std::vector<std::vector<RingElement>> coords_;
};

// All |R|^{n r} elements, in lexicographic coordinate order; finite R only.
std::vector<ModuleElement> enumerate_elements(const Presentation& pres,
                                              size_t budget = size_t{1} << 20);

struct KernelImageCheck {
  int i;               // exponent: compares ker V^i with im V^{n-i}
  size_t kernel_size;
  size_t image_size;
  bool pass;
};

struct VerifyReport {
  size_t total_elements = 0;
  bool v_power_zero = true;              // V^n = 0 on every element
  bool mod_v_free = true;                // M/VM free of rank r, by construction
  std::vector<KernelImageCheck> levels;  // i = 1 .. n-1
  bool pass = true;
  std::string summary() const;
};

VerifyReport verify_cosmooth(const Presentation& pres,
                             size_t budget = size_t{1} << 20);

// Drop coefficient slots k >= m: the level-m quotient M / V^m M.
Presentation truncate(const Presentation& pres, int m);
// Reuse coefficients at level n+1, appending a zero top layer.
Presentation lift_level(const Presentation& pres);
// Transport a presentation along h: R -> R'.
Presentation base_change(const Presentation& pres, const RingHom& h);
// Lift a presentation over B to one over A along a surjection h: A -> B.  The
// default chooser lifts each coefficient monomial-by-monomial through
// same-named variables and verifies h(lift) round-trips.
Presentation lift_along(
    const Presentation& pres, const RingHom& h,
    const std::function<RingElement(const RingElement&)>& chooser = {});

// A map of modules over the same ring and level, given on generators.
class ModuleMap {
 public:
  ModuleMap(Presentation source, Presentation target,
            std::vector<ModuleElement> images);
  static ModuleMap identity(const Presentation& pres);

  const Presentation& source() const { return source_; }
  const Presentation& target() const { return target_; }
  const std::vector<ModuleElement>& images() const { return images_; }

  ModuleElement operator()(const ModuleElement& x) const;

 private:
  Presentation source_;
  Presentation target_;
  std::vector<ModuleElement> images_;
};

// F-equivariance on generators (V- and scalar-linearity hold by construction).
bool hom_check(const ModuleMap& f);
// Mod-V criterion: f is an isomorphism iff its r x r matrix of row-0
// coordinates is invertible over R.  Requires hom_check(f).
bool is_iso(const ModuleMap& f);

// Determinant by cofactor expansion; empty matrix has determinant 1.
RingElement matrix_det(const std::vector<std::vector<RingElement>>& m);

}  // namespace dkit
