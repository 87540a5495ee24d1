#pragma once

#include <string>
#include <vector>

#include "dkit/moduli.hpp"
#include "dkit/points.hpp"

namespace dkit {

struct ExampleStep {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExampleReport {
  std::string title;
  std::vector<ExampleStep> steps;

  bool pass() const;
  std::string to_string() const;
};

// A monic irreducible quadratic over F_p, found by search; the degree-2 field
// extension used for point counts.
Ring quadratic_extension(int p);

// The one-parameter deformation with group law X + Y + lXY over F_p[l]:
// derives the p-operation coefficient l^{p-1} from the invariant derivation
// (1 + lT) d/dT, builds the level-n module with F e = [l^{p-1}] e, and checks
// the specializations l=0 (F acts as zero) and l=1 (F acts as sigma on the
// canonical copy of length-n Witt vectors).
ExampleReport run_lambda_family(int p, int n);

// The module with F e = e at level n over F_p: its points over F_q are cyclic
// of order p^n for q in {p, p^2}, and F acts as sigma in canonical
// coordinates.
ExampleReport run_zpn(int p, int n);

// ((1 + lT) d/dT)^p = l^{p-1} (1 + lT) d/dT on F_p[l][T]/(T^{p^n}), by direct
// composition, cross-checked against the composition identity on a spanning
// set of coefficients.
ExampleReport run_hochschild(int p, int n);

// All three, in order.
std::vector<ExampleReport> run_examples(int p, int n);

}  // namespace dkit
