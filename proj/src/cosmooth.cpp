#include "dkit/cosmooth.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dkit {

Presentation CosmoothPresentation::make(const Ring& ring, int n, int r,
                                        CoeffArray coeffs) {
  if (n < 1) throw error("presentation level must be >= 1");
  if (r < 1) throw error("presentation rank must be >= 1");
  if (coeffs.size() != static_cast<size_t>(r))
    throw error("coefficient array must have r rows");
  for (const auto& row : coeffs) {
    if (row.size() != static_cast<size_t>(r))
      throw error("coefficient array must have r columns");
    for (const auto& entry : row) {
      if (entry.size() != static_cast<size_t>(n))
        throw error("each coefficient list must have n entries");
      for (const auto& c : entry)
        if (!c.ring()->same_as(*ring))
          throw error("coefficient from the wrong ring");
    }
  }
  return Presentation(
      new CosmoothPresentation(ring, n, r, std::move(coeffs)));
}

Presentation CosmoothPresentation::make_rank1(const Ring& ring, int n,
                                              std::vector<RingElement> a) {
  CoeffArray coeffs{{std::move(a)}};
  return make(ring, n, 1, std::move(coeffs));
}

CartierElement CosmoothPresentation::coeff_op(int i, int j) const {
  CartierElement out = CartierElement::zero(ring_, n_);
  for (int k = 0; k < n_; ++k)
    out = out + CartierElement::monomial(n_, k, coeffs_[i][j][k], 0);
  return out;
}

bool CosmoothPresentation::same_as(const CosmoothPresentation& o) const {
  if (n_ != o.n_ || r_ != o.r_ || !ring_->same_as(*o.ring_)) return false;
  return coeffs_ == o.coeffs_;
}

std::string CosmoothPresentation::to_string() const {
  std::ostringstream os;
  os << "cosmooth p=" << ring_->p() << " n=" << n_ << " r=" << r_
     << " ring=" << ring_->to_string() << "\n";
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) {
      os << "a[" << (i + 1) << "][" << (j + 1) << "] = [";
      for (int k = 0; k < n_; ++k) {
        if (k) os << ", ";
        os << coeffs_[i][j][k].to_string();
      }
      os << "]\n";
    }
  return os.str();
}

Presentation CosmoothPresentation::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      size_t a = line.find_first_not_of(" \t\r");
      if (a == std::string::npos) continue;
      size_t b = line.find_last_not_of(" \t\r");
      line = line.substr(a, b - a + 1);
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next_line() || line.rfind("cosmooth", 0) != 0)
    throw parse_error("presentation must start with a 'cosmooth' header");
  std::string header = line.substr(8);
  auto grab_int = [&](const std::string& key) {
    size_t pos = header.find(key + "=");
    if (pos == std::string::npos)
      throw parse_error("missing '" + key + "=' in cosmooth header");
    return std::stoi(header.substr(pos + key.size() + 1));
  };
  int p = grab_int("p"), n = grab_int("n"), r = grab_int("r");
  size_t rpos = header.find("ring=");
  if (rpos == std::string::npos)
    throw parse_error("missing 'ring=' in cosmooth header");
  Ring ring = RingSpec::parse(header.substr(rpos + 5));
  if (ring->p() != p)
    throw parse_error("header p does not match the ring's characteristic");

  CosmoothPresentation::CoeffArray coeffs(
      r, std::vector<std::vector<RingElement>>(
             r, std::vector<RingElement>(n, ring->zero())));
  std::vector<std::vector<bool>> seen(r, std::vector<bool>(r, false));
  for (int count = 0; count < r * r; ++count) {
    if (!next_line())
      throw parse_error("expected " + std::to_string(r * r) +
                        " coefficient lines");
    size_t pos = 0;
    auto expect = [&](const std::string& tok) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (line.compare(pos, tok.size(), tok) != 0)
        throw parse_error("malformed coefficient line: " + line);
      pos += tok.size();
    };
    auto read_int = [&]() {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      size_t start = pos;
      while (pos < line.size() && std::isdigit(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos == start) throw parse_error("malformed coefficient line: " + line);
      return std::stoi(line.substr(start, pos - start));
    };
    expect("a[");
    int i = read_int();
    expect("][");
    int j = read_int();
    expect("]");
    expect("=");
    expect("[");
    size_t close = line.rfind(']');
    if (close == std::string::npos || close < pos)
      throw parse_error("malformed coefficient line: " + line);
    std::string body = line.substr(pos, close - pos);
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : body) {
      if (ch == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    parts.push_back(cur);
    if (i < 1 || i > r || j < 1 || j > r)
      throw parse_error("coefficient index out of range: " + line);
    if (seen[i - 1][j - 1])
      throw parse_error("duplicate coefficient line: " + line);
    seen[i - 1][j - 1] = true;
    if (parts.size() != static_cast<size_t>(n))
      throw parse_error("expected " + std::to_string(n) +
                        " coefficients in: " + line);
    for (int k = 0; k < n; ++k)
      coeffs[i - 1][j - 1][k] = RingElement::parse(ring, parts[k]);
  }
  return make(ring, n, r, std::move(coeffs));
}

// ---------------------------------------------------------------------------

ModuleElement ModuleElement::zero(const Presentation& pres) {
  std::vector<std::vector<RingElement>> coords(
      pres->level(),
      std::vector<RingElement>(pres->rank(), pres->ring()->zero()));
  return ModuleElement(pres, std::move(coords));
}

ModuleElement ModuleElement::generator(const Presentation& pres, int j) {
  if (j < 0 || j >= pres->rank()) throw error("generator index out of range");
  auto out = zero(pres);
  out.coords_[0][j] = pres->ring()->one();
  return out;
}

ModuleElement ModuleElement::from_coords(
    const Presentation& pres, std::vector<std::vector<RingElement>> coords) {
  if (coords.size() != static_cast<size_t>(pres->level()))
    throw error("coordinate matrix must have n rows");
  for (const auto& row : coords) {
    if (row.size() != static_cast<size_t>(pres->rank()))
      throw error("coordinate matrix must have r columns");
    for (const auto& c : row)
      if (!c.ring()->same_as(*pres->ring()))
        throw error("coordinate from the wrong ring");
  }
  return ModuleElement(pres, std::move(coords));
}

// Rewrite every V^a [x] F^s term (s >= 1) on generator j through the structure
// equation F e_j = sum_k a_{jk}(V) e_k.  Terms with s = 0 are canonical
// coordinates.  Termination: the rewrite strictly lowers s - a for the
// processed term, cascade corrections keep s - a but strictly raise a < n, so
// the multiset of (s - a, a) positions drops in a well-ordered lex measure.
ModuleElement ModuleElement::from_operators(const Presentation& pres,
                                            std::vector<CartierElement> ops) {
  int n = pres->level(), r = pres->rank();
  if (ops.size() != static_cast<size_t>(r))
    throw error("operator vector must have r entries");
  for (const auto& op : ops) {
    if (op.level() != n || !op.ring()->same_as(*pres->ring()))
      throw error("operator from the wrong Cartier ring");
  }
  for (size_t rounds = 0;; ++rounds) {
    if (rounds > 2'000'000)
      throw error("structure-equation reduction failed to terminate");
    int j = -1;
    VFSlot slot{0, 0};
    RingElement x;
    for (int g = 0; g < r && j < 0; ++g) {
      for (const auto& [sl, a] : ops[g].terms()) {
        if (sl.s >= 1) {
          j = g;
          slot = sl;
          x = a;
          break;
        }
      }
    }
    if (j < 0) break;
    ops[j] = ops[j] - CartierElement::monomial(n, slot.r, x, slot.s);
    auto lead = CartierElement::monomial(n, slot.r, x, slot.s - 1);
    for (int k = 0; k < r; ++k)
      ops[k] = ops[k] + lead * pres->coeff_op(j, k);
  }
  auto out = zero(pres);
  for (int g = 0; g < r; ++g)
    for (const auto& [sl, a] : ops[g].terms()) out.coords_[sl.r][g] = a;
  return out;
}

std::vector<CartierElement> ModuleElement::to_operators() const {
  int n = pres_->level(), r = pres_->rank();
  std::vector<CartierElement> ops;
  for (int j = 0; j < r; ++j) {
    auto op = CartierElement::zero(pres_->ring(), n);
    for (int i = 0; i < n; ++i)
      op = op + CartierElement::monomial(n, i, coords_[i][j], 0);
    ops.push_back(std::move(op));
  }
  return ops;
}

bool ModuleElement::is_zero() const {
  for (const auto& row : coords_)
    for (const auto& c : row)
      if (!c.is_zero()) return false;
  return true;
}

namespace {
void require_same_owner(const ModuleElement& a, const ModuleElement& b) {
  if (a.presentation() != b.presentation() &&
      !a.presentation()->same_as(*b.presentation()))
    throw error("module elements belong to different presentations");
}
}  // namespace

ModuleElement ModuleElement::operator+(const ModuleElement& o) const {
  require_same_owner(*this, o);
  auto ops = to_operators();
  auto oops = o.to_operators();
  for (size_t j = 0; j < ops.size(); ++j) ops[j] = ops[j] + oops[j];
  return from_operators(pres_, std::move(ops));
}

ModuleElement ModuleElement::operator-() const {
  auto ops = to_operators();
  for (auto& op : ops) op = -op;
  return from_operators(pres_, std::move(ops));
}

ModuleElement ModuleElement::operator-(const ModuleElement& o) const {
  return *this + (-o);
}

bool ModuleElement::operator==(const ModuleElement& o) const {
  require_same_owner(*this, o);
  return coords_ == o.coords_;
}

bool ModuleElement::operator<(const ModuleElement& o) const {
  return coords_ < o.coords_;
}

ModuleElement ModuleElement::act_V() const {
  // V . sum V^i [c] e_j = sum V^{i+1} [c] e_j: a pure downward row shift.
  auto out = zero(pres_);
  for (int i = 0; i + 1 < pres_->level(); ++i) out.coords_[i + 1] = coords_[i];
  return out;
}

ModuleElement ModuleElement::act(const CartierElement& c) const {
  auto ops = to_operators();
  for (auto& op : ops) op = c * op;
  return from_operators(pres_, std::move(ops));
}

ModuleElement ModuleElement::act_F() const {
  return act(CartierElement::F(pres_->ring(), pres_->level()));
}

ModuleElement ModuleElement::act_scalar(const WittVector& w) const {
  if (w.n() != pres_->level())
    throw error("scalar Witt vector has the wrong length");
  return act(CartierElement::from_witt(w));
}

std::string ModuleElement::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < coords_[i].size(); ++j) {
      if (j) os << ", ";
      os << coords_[i][j].to_string();
    }
  }
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<ModuleElement> enumerate_elements(const Presentation& pres,
                                              size_t budget) {
  if (!pres->ring()->finite()) throw not_finite_error("enumerate_elements");
  auto elems = pres->ring()->enumerate();
  int n = pres->level(), r = pres->rank();
  size_t digits = static_cast<size_t>(n) * r;
  double count = 1;
  for (size_t i = 0; i < digits; ++i) count *= static_cast<double>(elems.size());
  if (count > static_cast<double>(budget))
    throw budget_error("module enumeration exceeds the budget");
  std::vector<ModuleElement> out;
  std::vector<size_t> idx(digits, 0);
  while (true) {
    std::vector<std::vector<RingElement>> coords(
        n, std::vector<RingElement>(r, pres->ring()->zero()));
    for (size_t d = 0; d < digits; ++d)
      coords[d / r][d % r] = elems[idx[d]];
    out.push_back(ModuleElement::from_coords(pres, std::move(coords)));
    size_t d = digits;
    while (d > 0) {
      --d;
      if (++idx[d] < elems.size()) break;
      idx[d] = 0;
      if (d == 0) return out;
    }
    if (digits == 0) return out;
  }
}

std::string VerifyReport::summary() const {
  std::ostringstream os;
  os << "elements: " << total_elements << "\n";
  os << "V^n = 0: " << (v_power_zero ? "pass" : "FAIL") << "\n";
  os << "M/VM free of rank r: " << (mod_v_free ? "pass" : "FAIL") << "\n";
  for (const auto& lvl : levels)
    os << "ker V^" << lvl.i << " = im V^(n-" << lvl.i
       << "): " << (lvl.pass ? "pass" : "FAIL") << " (|ker| = "
       << lvl.kernel_size << ", |im| = " << lvl.image_size << ")\n";
  os << "overall: " << (pass ? "pass" : "FAIL") << "\n";
  return os.str();
}

VerifyReport verify_cosmooth(const Presentation& pres, size_t budget) {
  VerifyReport rep;
  auto all = enumerate_elements(pres, budget);
  rep.total_elements = all.size();
  int n = pres->level();
  for (const auto& x : all) {
    auto y = x;
    for (int i = 0; i < n; ++i) y = y.act_V();
    if (!y.is_zero()) rep.v_power_zero = false;
  }
  for (int i = 1; i < n; ++i) {
    std::set<ModuleElement> kernel, image;
    for (const auto& x : all) {
      auto vi = x;
      for (int k = 0; k < i; ++k) vi = vi.act_V();
      if (vi.is_zero()) kernel.insert(x);
      auto vni = x;
      for (int k = 0; k < n - i; ++k) vni = vni.act_V();
      image.insert(vni);
    }
    KernelImageCheck chk{i, kernel.size(), image.size(), kernel == image};
    rep.levels.push_back(chk);
    if (!chk.pass) rep.pass = false;
  }
  if (!rep.v_power_zero || !rep.mod_v_free) rep.pass = false;
  return rep;
}

Presentation truncate(const Presentation& pres, int m) {
  if (m < 1 || m > pres->level())
    throw error("truncation level out of range");
  int r = pres->rank();
  CosmoothPresentation::CoeffArray coeffs(
      r, std::vector<std::vector<RingElement>>(
             r, std::vector<RingElement>(m, pres->ring()->zero())));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < m; ++k) coeffs[i][j][k] = pres->coeff(i, j, k);
  return CosmoothPresentation::make(pres->ring(), m, r, std::move(coeffs));
}

Presentation lift_level(const Presentation& pres) {
  int r = pres->rank(), n = pres->level();
  CosmoothPresentation::CoeffArray coeffs(
      r, std::vector<std::vector<RingElement>>(
             r, std::vector<RingElement>(n + 1, pres->ring()->zero())));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < n; ++k) coeffs[i][j][k] = pres->coeff(i, j, k);
  return CosmoothPresentation::make(pres->ring(), n + 1, r, std::move(coeffs));
}

Presentation base_change(const Presentation& pres, const RingHom& h) {
  if (!h.source()->same_as(*pres->ring()))
    throw error("base change hom has the wrong source ring");
  int r = pres->rank(), n = pres->level();
  CosmoothPresentation::CoeffArray coeffs(
      r, std::vector<std::vector<RingElement>>(
             r, std::vector<RingElement>(n, h.target()->zero())));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < n; ++k) coeffs[i][j][k] = h(pres->coeff(i, j, k));
  return CosmoothPresentation::make(h.target(), n, r, std::move(coeffs));
}

Presentation lift_along(
    const Presentation& pres, const RingHom& h,
    const std::function<RingElement(const RingElement&)>& chooser) {
  const Ring& A = h.source();
  const Ring& B = h.target();
  if (!B->same_as(*pres->ring()))
    throw error("lift_along: presentation is not over the hom's target ring");
  auto lift = [&](const RingElement& b) -> RingElement {
    RingElement a = chooser ? chooser(b) : [&] {
      // Monomial-by-monomial section through same-named variables.
      std::map<Monomial, int> up;
      for (const auto& [mono, c] : b.coeffs()) {
        Monomial am(A->nvars(), 0);
        for (size_t v = 0; v < mono.size(); ++v) {
          if (mono[v] == 0) continue;
          int idx = A->var_index(B->vars()[v].name);
          if (idx < 0)
            throw error("no section available: variable '" +
                        B->vars()[v].name + "' is missing upstairs");
          am[static_cast<size_t>(idx)] = mono[v];
        }
        up[am] += c;
      }
      return A->element(up);
    }();
    if (h(a) != b)
      throw error("no section available: chosen lift does not map back");
    return a;
  };
  int r = pres->rank(), n = pres->level();
  CosmoothPresentation::CoeffArray coeffs(
      r, std::vector<std::vector<RingElement>>(
             r, std::vector<RingElement>(n, A->zero())));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < n; ++k) coeffs[i][j][k] = lift(pres->coeff(i, j, k));
  return CosmoothPresentation::make(A, n, r, std::move(coeffs));
}

// ---------------------------------------------------------------------------

ModuleMap::ModuleMap(Presentation source, Presentation target,
                     std::vector<ModuleElement> images)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)) {
  if (source_->level() != target_->level())
    throw error("module map requires matching levels");
  if (!source_->ring()->same_as(*target_->ring()))
    throw error("module map requires a common base ring");
  if (images_.size() != static_cast<size_t>(source_->rank()))
    throw error("module map needs one image per source generator");
  for (const auto& img : images_)
    if (!img.presentation()->same_as(*target_))
      throw error("module map image lives in the wrong module");
}

ModuleMap ModuleMap::identity(const Presentation& pres) {
  std::vector<ModuleElement> images;
  for (int j = 0; j < pres->rank(); ++j)
    images.push_back(ModuleElement::generator(pres, j));
  return ModuleMap(pres, pres, std::move(images));
}

ModuleElement ModuleMap::operator()(const ModuleElement& x) const {
  if (!x.presentation()->same_as(*source_))
    throw error("module map applied to a foreign element");
  auto acc = ModuleElement::zero(target_);
  int n = source_->level(), r = source_->rank();
  for (int j = 0; j < r; ++j) {
    auto op = CartierElement::zero(source_->ring(), n);
    for (int i = 0; i < n; ++i)
      op = op + CartierElement::monomial(n, i, x.coord(i, j), 0);
    acc = acc + images_[j].act(op);
  }
  return acc;
}

bool hom_check(const ModuleMap& f) {
  const auto& src = f.source();
  int r = src->rank();
  for (int j = 0; j < r; ++j) {
    auto lhs = f.images()[j].act_F();
    auto rhs = ModuleElement::zero(f.target());
    for (int k = 0; k < r; ++k)
      rhs = rhs + f.images()[k].act(src->coeff_op(j, k));
    if (lhs != rhs) return false;
  }
  return true;
}

RingElement matrix_det(const std::vector<std::vector<RingElement>>& m) {
  size_t n = m.size();
  if (n == 0) throw error("determinant of an empty matrix");
  if (n == 1) return m[0][0];
  auto ring = m[0][0].ring();
  RingElement det = ring->zero();
  for (size_t c = 0; c < n; ++c) {
    std::vector<std::vector<RingElement>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<RingElement> row;
      for (size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    auto term = m[0][c] * matrix_det(minor);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

bool is_iso(const ModuleMap& f) {
  if (!hom_check(f)) throw error("is_iso requires an F-equivariant map");
  if (f.source()->rank() != f.target()->rank()) return false;
  int r = f.source()->rank();
  std::vector<std::vector<RingElement>> m(
      r, std::vector<RingElement>(r, f.target()->ring()->zero()));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) m[j][k] = f.images()[j].coord(0, k);
  return matrix_det(m).is_unit();
}

}  // namespace dkit
