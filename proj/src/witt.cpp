#include "dkit/witt.hpp"

#include <atomic>
#include <mutex>
#include <sstream>

namespace dkit {

namespace {
std::atomic<int> g_guard_p{7};
std::atomic<int> g_guard_n{6};
}  // namespace

int witt_guard_p() { return g_guard_p.load(); }
int witt_guard_n() { return g_guard_n.load(); }
void set_witt_guards(int max_p, int max_n) {
  g_guard_p.store(max_p);
  g_guard_n.store(max_n);
}

namespace {

BigInt pow_bigint(long base, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

// w_k evaluated on polynomials Z_0..Z_k.
IntPoly ghost(const std::vector<IntPoly>& z, int p, int k) {
  IntPoly acc(z[0].nvars());
  for (int i = 0; i <= k; ++i)
    acc = acc + z[i].pow(static_cast<uint64_t>(pow_bigint(p, k - i).convert_to<uint64_t>()))
                    .scaled(pow_bigint(p, i));
  return acc;
}

// Solve the ghost recursion G_k = sum_{i<=k} p^i Z_i^{p^{k-i}} for Z_k given
// target ghost values G_0..G_{n-1}.
std::vector<IntPoly> solve_ghost(const std::vector<IntPoly>& targets, int p) {
  std::vector<IntPoly> z;
  // cache[i] holds Z_i^{p^j} for the largest j computed so far
  std::vector<std::pair<unsigned, IntPoly>> cache;
  for (size_t k = 0; k < targets.size(); ++k) {
    IntPoly acc = targets[k];
    for (size_t i = 0; i < k; ++i) {
      unsigned want = static_cast<unsigned>(k - i);
      auto& [have, pw] = cache[i];
      while (have < want) {
        pw = pw.pow(static_cast<uint64_t>(p));
        ++have;
      }
      acc = acc - pw.scaled(pow_bigint(p, static_cast<unsigned>(i)));
    }
    IntPoly zk = acc.div_exact(pow_bigint(p, static_cast<unsigned>(k)));
    cache.emplace_back(0u, zk);
    z.push_back(std::move(zk));
  }
  return z;
}

// Specialize a 2n-variable polynomial at X = (x,0,..,0), Y = (y,0,..,0),
// producing a 2-variable polynomial; or at X only, producing 1 variable.
std::map<IntPoly::Expt, int> specialize_teich(const std::map<IntPoly::Expt, int>& poly,
                                              size_t n, bool two_args) {
  std::map<IntPoly::Expt, int> out;
  for (const auto& [m, c] : poly) {
    bool alive = true;
    for (size_t i = 0; i < m.size(); ++i) {
      bool keeps = (i == 0) || (two_args && i == n);
      if (!keeps && m[i] != 0) {
        alive = false;
        break;
      }
    }
    if (!alive) continue;
    IntPoly::Expt e(two_args ? 2 : 1, 0);
    e[0] = m[0];
    if (two_args) e[1] = m[n];
    out[e] = c;  // distinct surviving monomials stay distinct
  }
  return out;
}

}  // namespace

StructuralPolynomials::StructuralPolynomials(int p_, int n_) : p(p_), n(n_) {
  size_t nv = 2 * static_cast<size_t>(n);
  std::vector<IntPoly> X, Y;
  for (int i = 0; i < n; ++i) X.push_back(IntPoly::variable(nv, i));
  for (int i = 0; i < n; ++i) Y.push_back(IntPoly::variable(nv, n + i));

  std::vector<IntPoly> add_targets, mul_targets, neg_targets;
  for (int k = 0; k < n; ++k) {
    add_targets.push_back(ghost(X, p, k) + ghost(Y, p, k));
    mul_targets.push_back(ghost(X, p, k) * ghost(Y, p, k));
  }
  add = solve_ghost(add_targets, p);
  mul = solve_ghost(mul_targets, p);

  std::vector<IntPoly> Xn;
  for (int i = 0; i < n; ++i) Xn.push_back(IntPoly::variable(static_cast<size_t>(n), i));
  for (int k = 0; k < n; ++k) neg_targets.push_back(ghost(Xn, p, k).scaled(-1));
  neg = solve_ghost(neg_targets, p);

  for (int k = 0; k < n; ++k) {
    add_mod.push_back(add[k].reduced_mod(p));
    mul_mod.push_back(mul[k].reduced_mod(p));
    neg_mod.push_back(neg[k].reduced_mod(p));
    teich_sum_mod.push_back(specialize_teich(add_mod[k], static_cast<size_t>(n), true));
    teich_neg_mod.push_back(specialize_teich(neg_mod[k], static_cast<size_t>(n), false));
  }
}

const StructuralPolynomials& StructuralPolynomials::get(int p, int n) {
  if (!is_prime(p)) throw error("Witt vectors need a prime p");
  if (n < 1) throw error("Witt length must be >= 1");
  if (p > witt_guard_p() || n > witt_guard_n())
    throw error("structural polynomial guard exceeded (p <= " +
                std::to_string(witt_guard_p()) + ", n <= " + std::to_string(witt_guard_n()) +
                "); raise via set_witt_guards");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<StructuralPolynomials>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<StructuralPolynomials>(
                                new StructuralPolynomials(p, n)))
             .first;
  return *it->second;
}

bool StructuralPolynomials::check_ghost_identities() const {
  size_t nv = 2 * static_cast<size_t>(n);
  std::vector<IntPoly> X, Y;
  for (int i = 0; i < n; ++i) X.push_back(IntPoly::variable(nv, i));
  for (int i = 0; i < n; ++i) Y.push_back(IntPoly::variable(nv, n + i));
  std::vector<IntPoly> Xn;
  for (int i = 0; i < n; ++i) Xn.push_back(IntPoly::variable(static_cast<size_t>(n), i));
  for (int k = 0; k < n; ++k) {
    if (!(ghost(add, p, k) == ghost(X, p, k) + ghost(Y, p, k))) return false;
    if (!(ghost(mul, p, k) == ghost(X, p, k) * ghost(Y, p, k))) return false;
    if (!(ghost(neg, p, k) == ghost(Xn, p, k).scaled(-1))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

RingElement eval_mod_p(const std::map<IntPoly::Expt, int>& poly,
                       const std::vector<RingElement>& args) {
  if (args.empty()) throw error("eval_mod_p needs at least one argument");
  const Ring& ring = args[0].ring();
  // memoized powers per variable
  std::vector<std::vector<RingElement>> pows(args.size());
  auto power = [&](size_t i, uint32_t e) -> const RingElement& {
    auto& v = pows[i];
    if (v.empty()) v.push_back(ring->one());
    while (v.size() <= e) v.push_back(v.back() * args[i]);
    return v[e];
  };
  RingElement acc = ring->zero();
  for (const auto& [m, c] : poly) {
    RingElement term = ring->from_int(c);
    bool zero = false;
    for (size_t i = 0; i < m.size() && !zero; ++i) {
      if (m[i] == 0) continue;
      if (args[i].is_zero()) {
        zero = true;
        break;
      }
      term = term * power(i, m[i]);
    }
    if (!zero) acc = acc + term;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// WittVector

WittVector::WittVector(WittParams params, std::vector<RingElement> components)
    : params_(params), components_(std::move(components)) {
  if (params_.n < 1 || components_.size() != static_cast<size_t>(params_.n))
    throw error("Witt vector needs exactly n components");
  for (const auto& c : components_) {
    if (!c.ring()) throw error("uninitialized Witt component");
    if (c.ring()->p() != params_.p) throw error("Witt component characteristic mismatch");
  }
}

WittVector WittVector::zero(const Ring& ring, int n) {
  return WittVector({ring->p(), n}, std::vector<RingElement>(n, ring->zero()));
}

WittVector WittVector::one(const Ring& ring, int n) {
  return teichmuller(ring->one(), n);
}

WittVector WittVector::teichmuller(const RingElement& a, int n) {
  std::vector<RingElement> comps(n, a.ring()->zero());
  comps[0] = a;
  return WittVector({a.ring()->p(), n}, std::move(comps));
}

bool WittVector::is_zero() const {
  for (const auto& c : components_)
    if (!c.is_zero()) return false;
  return true;
}

namespace {
void require_compatible(const WittVector& a, const WittVector& b) {
  if (!(a.params() == b.params())) throw error("Witt vector params mismatch");
  if (a.ring() != b.ring() && !a.ring()->same_as(*b.ring()))
    throw error("Witt vector ring mismatch");
}
}  // namespace

WittVector WittVector::operator+(const WittVector& o) const {
  require_compatible(*this, o);
  const auto& sp = StructuralPolynomials::get(params_.p, params_.n);
  std::vector<RingElement> args = components_;
  args.insert(args.end(), o.components_.begin(), o.components_.end());
  std::vector<RingElement> out;
  for (int k = 0; k < params_.n; ++k) out.push_back(eval_mod_p(sp.add_mod[k], args));
  return WittVector(params_, std::move(out));
}

WittVector WittVector::operator*(const WittVector& o) const {
  require_compatible(*this, o);
  const auto& sp = StructuralPolynomials::get(params_.p, params_.n);
  std::vector<RingElement> args = components_;
  args.insert(args.end(), o.components_.begin(), o.components_.end());
  std::vector<RingElement> out;
  for (int k = 0; k < params_.n; ++k) out.push_back(eval_mod_p(sp.mul_mod[k], args));
  return WittVector(params_, std::move(out));
}

WittVector WittVector::operator-() const {
  const auto& sp = StructuralPolynomials::get(params_.p, params_.n);
  std::vector<RingElement> out;
  for (int k = 0; k < params_.n; ++k) out.push_back(eval_mod_p(sp.neg_mod[k], components_));
  return WittVector(params_, std::move(out));
}

WittVector WittVector::operator-(const WittVector& o) const { return *this + (-o); }

bool WittVector::operator==(const WittVector& o) const {
  require_compatible(*this, o);
  return components_ == o.components_;
}

bool WittVector::operator<(const WittVector& o) const {
  return components_ < o.components_;
}

WittVector WittVector::verschiebung() const {
  std::vector<RingElement> out(components_.size(), ring()->zero());
  for (size_t i = 0; i + 1 < components_.size(); ++i) out[i + 1] = components_[i];
  return WittVector(params_, std::move(out));
}

WittVector WittVector::frobenius() const {
  std::vector<RingElement> out;
  for (const auto& c : components_) out.push_back(c.frobenius());
  return WittVector(params_, std::move(out));
}

WittVector WittVector::mul_by_p() const { return frobenius().verschiebung(); }

std::string WittVector::to_string() const {
  std::ostringstream os;
  os << "w[" << params_.p << "," << params_.n << "](";
  for (size_t i = 0; i < components_.size(); ++i)
    os << (i ? "; " : "") << components_[i].to_string();
  os << ")";
  return os.str();
}

WittVector WittVector::parse(const Ring& ring, int n, const std::string& text) {
  size_t open = text.find('(');
  size_t close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw parse_error("bad Witt vector literal '" + text + "'");
  std::string head = text.substr(0, open);
  // optional header w[p,n]
  size_t lb = head.find('[');
  if (lb != std::string::npos) {
    size_t comma = head.find(',', lb);
    size_t rb = head.find(']', lb);
    if (comma == std::string::npos || rb == std::string::npos)
      throw parse_error("bad Witt vector header '" + head + "'");
    int hp = std::stoi(head.substr(lb + 1, comma - lb - 1));
    int hn = std::stoi(head.substr(comma + 1, rb - comma - 1));
    if (hp != ring->p() || hn != n)
      throw parse_error("Witt vector header disagrees with context");
  }
  std::string body = text.substr(open + 1, close - open - 1);
  std::vector<RingElement> comps;
  size_t start = 0;
  while (true) {
    size_t sep = body.find(';', start);
    std::string piece =
        sep == std::string::npos ? body.substr(start) : body.substr(start, sep - start);
    comps.push_back(RingElement::parse(ring, piece));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  if (comps.size() != static_cast<size_t>(n))
    throw parse_error("Witt vector has wrong number of components");
  return WittVector({ring->p(), n}, std::move(comps));
}

std::vector<WittVector> WittVector::enumerate(const Ring& ring, int n) {
  auto elems = ring->enumerate();
  std::vector<WittVector> out;
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<RingElement> comps;
    for (int i = 0; i < n; ++i) comps.push_back(elems[idx[i]]);
    out.push_back(WittVector({ring->p(), n}, std::move(comps)));
    size_t i = idx.size();
    bool done = true;
    while (i > 0) {
      --i;
      if (++idx[i] < elems.size()) {
        done = false;
        break;
      }
      idx[i] = 0;
    }
    if (done) break;
  }
  return out;
}

std::vector<RingElement> teich_sum_components(const RingElement& a, const RingElement& b,
                                              int n) {
  const auto& sp = StructuralPolynomials::get(a.ring()->p(), n);
  std::vector<RingElement> out;
  for (int k = 0; k < n; ++k) out.push_back(eval_mod_p(sp.teich_sum_mod[k], {a, b}));
  return out;
}

std::vector<RingElement> teich_neg_components(const RingElement& a, int n) {
  const auto& sp = StructuralPolynomials::get(a.ring()->p(), n);
  std::vector<RingElement> out;
  for (int k = 0; k < n; ++k) out.push_back(eval_mod_p(sp.teich_neg_mod[k], {a}));
  return out;
}

}  // namespace dkit
