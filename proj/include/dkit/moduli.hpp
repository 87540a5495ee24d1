#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "dkit/cosmooth.hpp"

namespace dkit {

using Mass = boost::rational<long long>;

// All q^{n r^2} structure-coefficient arrays over a finite ring, in
// deterministic lexicographic order.
std::vector<Presentation> enumerate_presentations(
    const Ring& ring, int n, int r, size_t budget = size_t{1} << 16);

// Generator-change data: g_j = sum_{i,k} V^i [C[j][k][i]] e_k with the mod-V
// matrix C[.][.][0] invertible.  Every module automorphism arises this way.
using BasisChange = CosmoothPresentation::CoeffArray;

std::vector<BasisChange> enumerate_basis_changes(
    const Ring& ring, int n, int r, size_t budget = size_t{1} << 16);

// The presentation of the same module in the generators given by `change`:
// solves F g_j = sum_k b_{jk}(V) g_k for the new coefficients by level-by-level
// coordinate peeling against the invertible mod-V matrix.
Presentation transform(const Presentation& pres, const BasisChange& change);

// Coordinates of x in the generator system g (canonical-coordinate images
// with invertible mod-V matrix); coords[i][j] multiplies V^i [.] g_j.
std::vector<std::vector<RingElement>> coords_in_basis(
    const ModuleElement& x, const std::vector<ModuleElement>& g);

// Inverse of a square matrix over the ring (adjugate over a unit determinant).
std::vector<std::vector<RingElement>> matrix_inverse(
    const std::vector<std::vector<RingElement>>& m);

struct CensusClass {
  Presentation representative;
  uint64_t orbit_size = 0;
  uint64_t aut_count = 0;
  Mass mass() const { return Mass(1, static_cast<long long>(aut_count)); }
};

struct CensusReport {
  Ring ring;
  int n = 0;
  int r = 0;
  uint64_t total_presentations = 0;
  uint64_t group_size = 0;  // # generator changes = |GL_r(R)| * |R|^{(n-1)r^2}
  std::vector<CensusClass> classes;
  bool orbit_stabilizer_ok = true;  // orbit * |Aut| = group size per class

  Mass total_mass() const;
  // One row per class: representative (single line), orbit size, |Aut|, mass.
  std::string to_csv() const;
};

CensusReport iso_classes(const std::vector<Presentation>& stream,
                         size_t budget = size_t{1} << 16);

CensusReport census(const Ring& ring, int n, int r,
                    size_t budget = size_t{1} << 16);

struct TruncationWitness {
  Presentation representative;  // a level-n class representative
  Presentation lift;            // a level-(n+1) presentation truncating to it
  bool covered = false;
};

struct TruncationTable {
  std::vector<TruncationWitness> witnesses;
  double coverage = 0.0;  // fraction of classes with a verified lift
};

TruncationTable truncation_surjectivity(const Ring& ring, int n, int r,
                                        size_t budget = size_t{1} << 16);

struct InfinitesimalLift {
  Presentation lifted;  // over R[eps]/(eps^2)
  RingHom projection;   // eps -> 0, back onto the base ring
};

// Deform a presentation over F_q to the dual numbers F_q[eps]/(eps^2); the
// base change along eps -> 0 returns the input exactly.
InfinitesimalLift infinitesimal_lift(const Presentation& pres,
                                     const std::string& eps_name = "eps");

}  // namespace dkit
