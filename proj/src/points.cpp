#include "dkit/points.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dkit {

std::vector<WittVector> PointSet::add(const std::vector<WittVector>& a,
                                      const std::vector<WittVector>& b) const {
  std::vector<WittVector> out;
  for (size_t j = 0; j < a.size(); ++j) out.push_back(a[j] + b[j]);
  return out;
}

std::string PointSet::to_string() const {
  std::ostringstream os;
  for (const auto& pt : points) {
    for (size_t j = 0; j < pt.size(); ++j) {
      if (j) os << " ";
      os << pt[j].to_string();
    }
    os << "\n";
  }
  return os.str();
}

PointSet points(const Presentation& pres, const RingHom& h, size_t budget) {
  if (!h.source()->same_as(*pres->ring()))
    throw error("points: the algebra hom must start at the base ring");
  const Ring& S = h.target();
  if (!S->finite()) throw not_finite_error("points");
  int n = pres->level(), r = pres->rank();
  auto witt = WittVector::enumerate(S, n);
  double count = 1;
  for (int j = 0; j < r; ++j) count *= static_cast<double>(witt.size());
  if (count > static_cast<double>(budget))
    throw budget_error("point scan exceeds the budget");

  // Precompute the right-hand operators once; the equation for a tuple is
  // sigma(x_j) = sum_k a_{jk}(V) . x_k.
  std::vector<std::vector<CartierElement>> ops;
  for (int j = 0; j < r; ++j) {
    std::vector<CartierElement> row;
    for (int k = 0; k < r; ++k) row.push_back(pres->coeff_op(j, k));
    ops.push_back(std::move(row));
  }

  PointSet ps{pres, h, {}};
  std::vector<size_t> idx(r, 0);
  while (true) {
    std::vector<WittVector> tuple;
    for (int j = 0; j < r; ++j) tuple.push_back(witt[idx[j]]);
    bool ok = true;
    for (int j = 0; j < r && ok; ++j) {
      auto rhs = WittVector::zero(S, n);
      for (int k = 0; k < r; ++k) rhs = rhs + ops[j][k].act(tuple[k], h);
      if (tuple[j].frobenius() != rhs) ok = false;
    }
    if (ok) ps.points.push_back(std::move(tuple));
    int d = r;
    bool done = true;
    while (d > 0) {
      --d;
      if (++idx[d] < witt.size()) {
        done = false;
        break;
      }
      idx[d] = 0;
    }
    if (done) break;
  }
  std::sort(ps.points.begin(), ps.points.end());
  return ps;
}

PointSet points(const Presentation& pres, size_t budget) {
  return points(pres, RingHom::identity(pres->ring()), budget);
}

std::string GroupStructure::to_string() const {
  std::ostringstream os;
  os << "order " << order << (axioms_ok ? "" : " (AXIOM FAILURE)");
  if (invariant_factors.empty()) {
    os << ", trivial";
  } else {
    os << ", ";
    for (size_t i = 0; i < invariant_factors.size(); ++i) {
      if (i) os << " x ";
      os << "Z/" << invariant_factors[i];
    }
  }
  return os.str();
}

GroupStructure group_structure(const PointSet& ps) {
  GroupStructure g;
  g.order = ps.points.size();
  std::set<std::vector<WittVector>> table(ps.points.begin(), ps.points.end());
  if (table.size() != ps.points.size() || table.empty()) return g;

  int n = ps.pres->level(), r = ps.pres->rank();
  auto zero = std::vector<WittVector>(
      static_cast<size_t>(r), WittVector::zero(ps.hom.target(), n));
  g.axioms_ok = table.count(zero) > 0;
  for (const auto& a : ps.points) {
    bool has_inverse = false;
    for (const auto& b : ps.points) {
      if (!table.count(ps.add(a, b))) g.axioms_ok = false;  // closure
      if (ps.add(a, b) == zero) has_inverse = true;
    }
    if (!has_inverse) g.axioms_ok = false;
  }
  if (!g.axioms_ok) return g;

  // p-power torsion counts N_k determine the cyclic decomposition: the number
  // of invariant factors of order >= p^k is log_p(N_k / N_{k-1}).
  int p = ps.pres->ring()->p();
  auto mul_p = [&](const std::vector<WittVector>& a) {
    std::vector<WittVector> out;
    for (const auto& w : a) out.push_back(w.mul_by_p());
    return out;
  };
  std::vector<uint64_t> torsion{1};  // N_0 = 1
  for (int k = 1;; ++k) {
    uint64_t count = 0;
    for (const auto& a : ps.points) {
      auto x = a;
      for (int i = 0; i < k; ++i) x = mul_p(x);
      if (x == zero) ++count;
    }
    torsion.push_back(count);
    if (count == g.order) break;
  }
  std::vector<int> at_least;  // at_least[k-1] = #factors of order >= p^k
  for (size_t k = 1; k < torsion.size(); ++k) {
    int c = 0;
    uint64_t ratio = torsion[k] / torsion[k - 1];
    while (ratio > 1) {
      ratio /= static_cast<uint64_t>(p);
      ++c;
    }
    at_least.push_back(c);
  }
  int factors = at_least.empty() ? 0 : at_least[0];
  for (int i = 0; i < factors; ++i) {
    uint64_t order = 1;
    for (int c : at_least)
      if (c > i) order *= static_cast<uint64_t>(p);
    g.invariant_factors.push_back(order);
  }
  return g;
}

// ---------------------------------------------------------------------------

RingElement derivative(const RingElement& g, const std::string& var) {
  const Ring& ring = g.ring();
  int vi = ring->var_index(var);
  if (vi < 0) throw error("derivative: unknown variable '" + var + "'");
  if (ring->modulus() && vi == 0)
    throw error("derivative: cannot differentiate along the modulus variable");
  uint32_t bound = ring->vars()[static_cast<size_t>(vi)].bound;
  if (bound != 0 && bound % static_cast<uint32_t>(ring->p()) != 0)
    throw error("derivative does not descend: bound not divisible by p");
  std::map<Monomial, int> out;
  for (const auto& [mono, c] : g.coeffs()) {
    uint32_t k = mono[static_cast<size_t>(vi)];
    if (k == 0) continue;
    Monomial m = mono;
    m[static_cast<size_t>(vi)] = k - 1;
    out[m] += c * static_cast<int>(k % static_cast<uint32_t>(ring->p()));
  }
  return ring->element(out);
}

TruncatedDerivation::TruncatedDerivation(Ring ring, std::string var,
                                         RingElement f)
    : ring_(std::move(ring)), var_(std::move(var)), f_(std::move(f)) {
  if (!f_.ring()->same_as(*ring_))
    throw error("derivation coefficient from the wrong ring");
  if (ring_->var_index(var_) < 0)
    throw error("derivation variable '" + var_ + "' is not in the ring");
  // Leibniz sanity check on T and T^2.
  auto T = ring_->generator(var_);
  auto lhs = apply(T * T);
  auto rhs = T * apply(T) + T * apply(T);
  if (lhs != rhs) throw error("derivation fails the Leibniz rule");
}

RingElement TruncatedDerivation::apply(const RingElement& g) const {
  return f_ * derivative(g, var_);
}

bool TruncatedDerivation::operator==(const TruncatedDerivation& o) const {
  return ring_->same_as(*o.ring_) && var_ == o.var_ && f_ == o.f_;
}

std::string TruncatedDerivation::to_string() const {
  return "(" + f_.to_string() + ") d/d" + var_;
}

TruncatedDerivation hochschild_p_power(const TruncatedDerivation& d) {
  const Ring& A = d.ring();
  int p = A->p();
  const std::string& var = d.var();
  auto T = A->generator(var);

  // Direct p-fold composition; its coefficient, if it is a derivation, is the
  // image of the coordinate.
  auto power = [&](const RingElement& g, int times) {
    auto out = g;
    for (int i = 0; i < times; ++i) out = d.apply(out);
    return out;
  };
  RingElement direct = power(T, p);

  // The composition must again be of the shape c d/dT: verified on all powers
  // of the coordinate (the operator is linear over the T-free subring).
  uint32_t bound = A->vars()[static_cast<size_t>(A->var_index(var))].bound;
  uint32_t limit = bound == 0 ? static_cast<uint32_t>(2 * p + 2) : bound;
  auto Tk = A->one();
  for (uint32_t k = 0; k < limit; ++k) {
    if (power(Tk, p) != direct * derivative(Tk, var))
      throw error("p-th power of the derivation is not a derivation");
    Tk = Tk * T;
  }

  // Hochschild's identity: (f@)^p = f^p @^p + ((f@)^{p-1} f) @, and @^p = 0
  // on the truncated polynomial ring, so the coefficient is (f@)^{p-1}(f).
  RingElement viaIdentity = power(d.coefficient(), p - 1);
  if (direct != viaIdentity)
    throw error("direct composition disagrees with the Hochschild identity");

  return TruncatedDerivation(A, var, direct);
}

std::pair<int, std::vector<std::vector<RingElement>>> lie_data(
    const Presentation& pres) {
  int r = pres->rank();
  std::vector<std::vector<RingElement>> m(
      r, std::vector<RingElement>(r, pres->ring()->zero()));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[i][j] = pres->coeff(i, j, 0);
  return {r, m};
}

}  // namespace dkit
