#include "dkit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dkit {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

int mod_p(long v, int p) {
  long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inv_mod_p(int v, int p) {
  // p is small; brute force.
  v = mod_p(v, p);
  for (int i = 1; i < p; ++i)
    if (i * v % p == 1) return i;
  throw error("inverse of zero mod p");
}

// Dense univariate polynomial arithmetic mod p, for modulus handling.
using UPoly = std::vector<int>;

UPoly upoly_trim(UPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

UPoly upoly_mul(const UPoly& a, const UPoly& b, int p) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = mod_p(out[i + j] + static_cast<long>(a[i]) * b[j], p);
  return upoly_trim(out);
}

UPoly upoly_rem(UPoly a, const UPoly& f, int p) {
  // f monic
  while (a.size() >= f.size()) {
    int lead = a.back();
    size_t shift = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i)
      a[shift + i] = mod_p(a[shift + i] - static_cast<long>(lead) * f[i], p);
    a = upoly_trim(a);
  }
  return a;
}

bool upoly_irreducible(const UPoly& f, int p) {
  size_t d = f.size() - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  // Trial division by all monic polynomials of degree 1..d/2.
  for (size_t dg = 1; dg <= d / 2; ++dg) {
    UPoly g(dg + 1, 0);
    g[dg] = 1;
    uint64_t count = 1;
    for (size_t i = 0; i < dg; ++i) count *= p;
    for (uint64_t idx = 0; idx < count; ++idx) {
      uint64_t v = idx;
      for (size_t i = 0; i < dg; ++i) {
        g[i] = static_cast<int>(v % p);
        v /= p;
      }
      if (upoly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// RingSpec

Ring RingSpec::finish(RingSpec spec) {
  spec.validate();
  return std::make_shared<const RingSpec>(std::move(spec));
}

void RingSpec::validate() const {
  if (!is_prime(p_)) throw error("ring characteristic must be prime");
  if (modulus_) {
    if (vars_.empty()) throw error("modulus without a variable");
    const auto& f = *modulus_;
    if (f.size() < 2 || f.back() != 1) throw error("modulus must be monic of degree >= 1");
    for (int c : f)
      if (c < 0 || c >= p_) throw error("modulus coefficients must be reduced mod p");
    if (kind_ == RingKind::GaloisField && !upoly_irreducible(f, p_))
      throw error("GaloisField modulus is reducible");
  }
  for (const auto& v : vars_) {
    if (v.name.empty()) throw error("empty variable name");
    for (const auto& w : vars_)
      if (&v != &w && v.name == w.name) throw error("duplicate variable name " + v.name);
  }
  if (kind_ == RingKind::QuotientRing) {
    // bound == 0 is allowed and means a free variable
  }
}

Ring RingSpec::prime_field(int p) {
  RingSpec s;
  s.p_ = p;
  s.kind_ = RingKind::PrimeField;
  return finish(std::move(s));
}

Ring RingSpec::galois_field(int p, std::vector<int> modulus, const std::string& var) {
  RingSpec s;
  s.p_ = p;
  s.kind_ = RingKind::GaloisField;
  s.vars_ = {Variable{var, 0}};
  s.modulus_ = std::move(modulus);
  return finish(std::move(s));
}

Ring RingSpec::poly_ring(int p, const std::vector<std::string>& vars) {
  RingSpec s;
  s.p_ = p;
  s.kind_ = RingKind::PolyRing;
  for (const auto& v : vars) s.vars_.push_back(Variable{v, 0});
  return finish(std::move(s));
}

Ring RingSpec::quotient_ring(int p, std::vector<Variable> vars) {
  RingSpec s;
  s.p_ = p;
  s.kind_ = RingKind::QuotientRing;
  s.vars_ = std::move(vars);
  return finish(std::move(s));
}

Ring RingSpec::univariate_quotient(int p, const std::string& var, std::vector<int> modulus) {
  RingSpec s;
  s.p_ = p;
  s.kind_ = RingKind::UnivariateQuotient;
  s.vars_ = {Variable{var, 0}};
  s.modulus_ = std::move(modulus);
  return finish(std::move(s));
}

Ring RingSpec::extend(const Ring& base, const std::vector<Variable>& extra) {
  RingSpec s;
  s.p_ = base->p_;
  s.kind_ = base->modulus_ ? base->kind_ : RingKind::QuotientRing;
  s.vars_ = base->vars_;
  s.modulus_ = base->modulus_;
  for (const auto& v : extra) s.vars_.push_back(v);
  if (!s.modulus_) s.kind_ = RingKind::QuotientRing;
  return finish(std::move(s));
}

bool RingSpec::finite() const {
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (i == 0 && modulus_) continue;  // bounded by the modulus degree
    if (vars_[i].bound == 0) return false;
  }
  return true;
}

uint64_t RingSpec::cardinality() const {
  if (!finite()) throw not_finite_error("infinite ring has no cardinality");
  uint64_t dim = basis().size();
  uint64_t card = 1;
  for (uint64_t i = 0; i < dim; ++i) {
    if (card > UINT64_MAX / static_cast<uint64_t>(p_))
      throw error("ring cardinality overflows");
    card *= static_cast<uint64_t>(p_);
  }
  return card;
}

const std::vector<Monomial>& RingSpec::basis() const {
  if (!basis_.empty() || nvars() == 0) {
    if (basis_.empty()) basis_.push_back(Monomial{});
    return basis_;
  }
  if (!finite()) throw not_finite_error("infinite ring has no finite monomial basis");
  std::vector<uint32_t> limits;
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (i == 0 && modulus_)
      limits.push_back(static_cast<uint32_t>(modulus_->size() - 1));
    else
      limits.push_back(vars_[i].bound);
  }
  Monomial m(nvars(), 0);
  std::vector<Monomial> out;
  while (true) {
    out.push_back(m);
    size_t i = nvars();
    while (i > 0) {
      --i;
      if (++m[i] < limits[i]) break;
      m[i] = 0;
      if (i == 0) {
        std::sort(out.begin(), out.end());
        basis_ = std::move(out);
        return basis_;
      }
    }
  }
}

bool RingSpec::same_as(const RingSpec& other) const {
  return p_ == other.p_ && kind_ == other.kind_ && vars_ == other.vars_ &&
         modulus_ == other.modulus_;
}

int RingSpec::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

// Reduce a raw coefficient map to normal form: drop killed monomials, rewrite
// modulus-variable powers, reduce scalars mod p.
std::map<Monomial, int> normalize(const RingSpec& spec,
                                  std::vector<std::pair<Monomial, long>> work) {
  std::map<Monomial, long> acc;
  const int p = spec.p();
  const auto& vars = spec.vars();
  const auto& modulus = spec.modulus();
  const size_t d = modulus ? modulus->size() - 1 : 0;
  while (!work.empty()) {
    auto [m, c] = std::move(work.back());
    work.pop_back();
    c = mod_p(c, p);
    if (c == 0) continue;
    bool killed = false;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (i == 0 && modulus) continue;
      if (vars[i].bound > 0 && m[i] >= vars[i].bound) {
        killed = true;
        break;
      }
    }
    if (killed) continue;
    if (modulus && m[0] >= d) {
      // v^d = -(c_0 + ... + c_{d-1} v^{d-1})
      m[0] -= static_cast<uint32_t>(d);
      for (size_t e = 0; e < d; ++e) {
        int fc = (*modulus)[e];
        if (fc == 0) continue;
        Monomial m2 = m;
        m2[0] += static_cast<uint32_t>(e);
        work.emplace_back(std::move(m2), -static_cast<long>(fc) * c);
      }
      continue;
    }
    acc[m] += c;
  }
  std::map<Monomial, int> out;
  for (auto& [m, c] : acc) {
    int v = mod_p(c, p);
    if (v != 0) out.emplace(m, v);
  }
  return out;
}

}  // namespace

RingElement RingSpec::zero() const {
  return RingElement(shared_from_this(), {});
}

RingElement RingSpec::one() const { return from_int(1); }

RingElement RingSpec::from_int(long v) const {
  int c = mod_p(v, p_);
  std::map<Monomial, int> m;
  if (c != 0) m.emplace(Monomial(nvars(), 0), c);
  return RingElement(shared_from_this(), std::move(m));
}

RingElement RingSpec::generator(size_t index) const {
  if (index >= nvars()) throw error("generator index out of range");
  Monomial m(nvars(), 0);
  m[index] = 1;
  return element({{m, 1}});
}

RingElement RingSpec::generator(const std::string& name) const {
  int i = var_index(name);
  if (i < 0) throw error("no variable named " + name);
  return generator(static_cast<size_t>(i));
}

RingElement RingSpec::element(const std::map<Monomial, int>& coeffs) const {
  std::vector<std::pair<Monomial, long>> work;
  for (const auto& [m, c] : coeffs) {
    if (m.size() != nvars()) throw error("monomial arity mismatch");
    work.emplace_back(m, c);
  }
  return RingElement(shared_from_this(), normalize(*this, std::move(work)));
}

std::vector<RingElement> RingSpec::enumerate() const {
  const auto& bs = basis();
  uint64_t card = cardinality();
  std::vector<RingElement> out;
  out.reserve(card);
  std::vector<int> digits(bs.size(), 0);
  for (uint64_t idx = 0;; ++idx) {
    std::map<Monomial, int> m;
    for (size_t i = 0; i < bs.size(); ++i)
      if (digits[i] != 0) m.emplace(bs[i], digits[i]);
    out.push_back(RingElement(shared_from_this(), std::move(m)));
    if (idx + 1 == card) break;
    size_t i = digits.size();
    while (i > 0) {
      --i;
      if (++digits[i] < p_) break;
      digits[i] = 0;
    }
  }
  return out;
}

std::vector<RingElement> RingSpec::spanning_set() const {
  // Products of small powers of every generator: enough to separate the
  // ring's coefficient behaviour without enumerating big rings.
  std::vector<uint32_t> limits;
  for (size_t i = 0; i < vars_.size(); ++i) {
    uint32_t lim;
    if (i == 0 && modulus_)
      lim = static_cast<uint32_t>(modulus_->size() - 1);
    else if (vars_[i].bound > 0)
      lim = std::min<uint32_t>(vars_[i].bound - 1, 2);
    else
      lim = 1;
    limits.push_back(lim + 1);
  }
  std::vector<RingElement> out;
  Monomial m(nvars(), 0);
  while (true) {
    out.push_back(element({{m, 1}}));
    size_t i = nvars();
    bool done = (i == 0);
    while (i > 0) {
      --i;
      if (++m[i] < limits[i]) break;
      m[i] = 0;
      if (i == 0) done = true;
    }
    if (done) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// RingElement

bool RingElement::is_one() const {
  return coeffs_.size() == 1 && coeffs_.begin()->second == 1 &&
         std::all_of(coeffs_.begin()->first.begin(), coeffs_.begin()->first.end(),
                     [](uint32_t e) { return e == 0; });
}

std::optional<int> RingElement::as_constant() const {
  if (coeffs_.empty()) return 0;
  if (coeffs_.size() != 1) return std::nullopt;
  const auto& [m, c] = *coeffs_.begin();
  for (uint32_t e : m)
    if (e != 0) return std::nullopt;
  return c;
}

namespace {
void require_same_ring(const RingElement& a, const RingElement& b) {
  if (!a.ring() || !b.ring()) throw error("uninitialized ring element");
  if (a.ring() != b.ring() && !a.ring()->same_as(*b.ring()))
    throw error("ring mismatch");
}
}  // namespace

RingElement RingElement::operator+(const RingElement& o) const {
  require_same_ring(*this, o);
  std::map<Monomial, long> acc;
  for (const auto& [m, c] : coeffs_) acc[m] += c;
  for (const auto& [m, c] : o.coeffs_) acc[m] += c;
  std::map<Monomial, int> out;
  for (const auto& [m, c] : acc) {
    int v = mod_p(c, ring_->p());
    if (v) out.emplace(m, v);
  }
  return RingElement(ring_, std::move(out));
}

RingElement RingElement::operator-() const {
  if (!ring_) throw error("uninitialized ring element");
  std::map<Monomial, int> out;
  for (const auto& [m, c] : coeffs_) out.emplace(m, ring_->p() - c);
  return RingElement(ring_, std::move(out));
}

RingElement RingElement::operator-(const RingElement& o) const {
  return *this + (-o);
}

RingElement RingElement::operator*(const RingElement& o) const {
  require_same_ring(*this, o);
  std::vector<std::pair<Monomial, long>> work;
  for (const auto& [ma, ca] : coeffs_)
    for (const auto& [mb, cb] : o.coeffs_) {
      Monomial m(ma.size());
      for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      work.emplace_back(std::move(m), static_cast<long>(ca) * cb);
    }
  return RingElement(ring_, normalize(*ring_, std::move(work)));
}

RingElement RingElement::operator*(long scalar) const {
  if (!ring_) throw error("uninitialized ring element");
  int s = mod_p(scalar, ring_->p());
  if (s == 0) return ring_->zero();
  std::map<Monomial, int> out;
  for (const auto& [m, c] : coeffs_) {
    int v = mod_p(static_cast<long>(c) * s, ring_->p());
    if (v) out.emplace(m, v);
  }
  return RingElement(ring_, std::move(out));
}

bool RingElement::operator==(const RingElement& o) const {
  require_same_ring(*this, o);
  return coeffs_ == o.coeffs_;
}

RingElement RingElement::pow(uint64_t e) const {
  if (!ring_) throw error("uninitialized ring element");
  RingElement result = ring_->one();
  RingElement base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

RingElement RingElement::frobenius(unsigned k) const {
  RingElement r = *this;
  for (unsigned i = 0; i < k; ++i) r = r.pow(static_cast<uint64_t>(ring_->p()));
  return r;
}

namespace {

// Split off the part of an element supported on nilpotent variables.  A
// variable is nilpotent if it has a monomial bound, or if it carries a modulus
// of the form v^d.
std::vector<bool> nilpotent_vars(const RingSpec& spec) {
  std::vector<bool> nil(spec.nvars(), false);
  for (size_t i = 0; i < spec.nvars(); ++i) {
    if (i == 0 && spec.modulus()) {
      const auto& f = *spec.modulus();
      bool pure_power = true;
      for (size_t e = 0; e + 1 < f.size(); ++e)
        if (f[e] != 0) pure_power = false;
      nil[i] = pure_power;
    } else {
      nil[i] = spec.vars()[i].bound > 0;
    }
  }
  return nil;
}

}  // namespace

bool RingElement::is_unit() const {
  if (!ring_) throw error("uninitialized ring element");
  if (is_zero()) return false;
  auto nil = nilpotent_vars(*ring_);
  // Semisimple part: kill all nilpotent variables.
  std::map<Monomial, int> red;
  bool free_var_in_red = false;
  for (const auto& [m, c] : coeffs_) {
    bool drop = false;
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0 && nil[i]) drop = true;
    if (drop) continue;
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0 && !(i == 0 && ring_->modulus())) free_var_in_red = true;
    red.emplace(m, c);
  }
  if (red.empty() || free_var_in_red) return false;
  // What is left lives in the coefficient field part (constants, or the
  // modulus variable when it is not nilpotent).
  if (red.size() == 1) {
    auto c = RingElement(ring_, red).as_constant();
    if (c) return *c != 0;
  }
  if (ring_->kind() == RingKind::GaloisField ||
      (ring_->modulus() && !nil[0])) {
    // Nonzero element of a field (irreducible modulus): a unit.  Reducible
    // non-nilpotent moduli are not supported here.
    if (ring_->kind() == RingKind::GaloisField) return true;
  }
  if (ring_->finite()) {
    for (const auto& cand : ring_->enumerate())
      if ((*this * cand).is_one()) return true;
    return false;
  }
  throw error("is_unit: unsupported ring presentation");
}

RingElement RingElement::inverse() const {
  if (!ring_) throw error("uninitialized ring element");
  if (auto c = as_constant()) {
    if (*c == 0) throw error("inverse of zero");
    return ring_->from_int(inv_mod_p(*c, ring_->p()));
  }
  if (ring_->finite() && ring_->cardinality() <= (1u << 20)) {
    for (const auto& cand : ring_->enumerate())
      if ((*this * cand).is_one()) return cand;
    throw error("inverse of non-unit");
  }
  // Unit = semisimple unit * (1 + nilpotent): invert by geometric series.
  auto nil = nilpotent_vars(*ring_);
  std::map<Monomial, int> red_m;
  for (const auto& [m, c] : coeffs_) {
    bool drop = false;
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0 && nil[i]) drop = true;
    if (!drop) red_m.emplace(m, c);
  }
  RingElement a0(ring_, std::move(red_m));
  auto c0 = a0.as_constant();
  if (!c0 || *c0 == 0) throw error("inverse: non-unit or unsupported ring");
  RingElement a0inv = ring_->from_int(inv_mod_p(*c0, ring_->p()));
  RingElement n = a0inv * (*this - a0);  // nilpotent
  RingElement sum = ring_->one();
  RingElement pw = ring_->one();
  for (int k = 0; k < 1024; ++k) {
    pw = pw * (-n);
    if (pw.is_zero()) break;
    sum = sum + pw;
    if (k == 1023) throw error("inverse: series did not terminate");
  }
  RingElement result = sum * a0inv;
  if (!(*this * result).is_one()) throw error("inverse: internal check failed");
  return result;
}

// ---------------------------------------------------------------------------
// Printing

std::string RingElement::to_string() const {
  if (!ring_ || coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : coeffs_) {
    if (!first) os << "+";
    first = false;
    bool has_var = std::any_of(m.begin(), m.end(), [](uint32_t e) { return e > 0; });
    bool printed = false;
    if (c != 1 || !has_var) {
      os << c;
      printed = true;
    }
    for (size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (printed) os << "*";
      os << ring_->vars()[i].name;
      if (m[i] > 1) os << "^" << m[i];
      printed = true;
    }
  }
  return os.str();
}

namespace {

struct ElemParser {
  const Ring& ring;
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  long parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw parse_error("expected integer in '" + text + "'");
    return std::stol(text.substr(start, pos - start));
  }
  std::string parse_ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) {
      ++pos;
    }
    if (pos == start || std::isdigit(static_cast<unsigned char>(text[start])))
      throw parse_error("expected identifier in '" + text + "'");
    return text.substr(start, pos - start);
  }

  // term := factor ('*'? factor)*, factor := INT | IDENT ('^' INT)?
  RingElement parse_term() {
    RingElement acc = ring->one();
    bool any = false;
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * ring->from_int(parse_int());
        any = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = parse_ident();
        int idx = ring->var_index(name);
        if (idx < 0) throw parse_error("unknown variable '" + name + "'");
        uint32_t e = 1;
        if (eat('^')) e = static_cast<uint32_t>(parse_int());
        acc = acc * ring->generator(static_cast<size_t>(idx)).pow(e);
        any = true;
      } else {
        break;
      }
      eat('*');
    }
    if (!any) throw parse_error("empty term in '" + text + "'");
    return acc;
  }

  RingElement parse_expr() {
    RingElement acc = ring->zero();
    int sign = 1;
    if (eat('-')) sign = -1;
    while (true) {
      RingElement t = parse_term();
      acc = sign > 0 ? acc + t : acc - t;
      skip_ws();
      if (eat('+'))
        sign = 1;
      else if (eat('-'))
        sign = -1;
      else
        break;
    }
    skip_ws();
    if (pos != text.size()) throw parse_error("trailing input in '" + text + "'");
    return acc;
  }
};

}  // namespace

RingElement RingElement::parse(const Ring& ring, const std::string& text) {
  ElemParser p{ring, text};
  return p.parse_expr();
}

std::string RingSpec::to_string() const {
  std::ostringstream os;
  auto poly_str = [&](const std::vector<int>& f) {
    // print on the modulus variable
    std::ostringstream ps;
    bool first = true;
    for (size_t e = f.size(); e-- > 0;) {
      if (f[e] == 0) continue;
      if (!first) ps << "+";
      first = false;
      if (e == 0 || f[e] != 1) ps << f[e];
      if (e > 0) {
        if (f[e] != 1) ps << "*";
        ps << vars_[0].name;
        if (e > 1) ps << "^" << e;
      }
    }
    return first ? std::string("0") : ps.str();
  };
  auto extra_vars = [&](size_t from) {
    if (from >= vars_.size()) return std::string{};
    std::ostringstream es;
    es << " vars=";
    for (size_t i = from; i < vars_.size(); ++i)
      es << (i > from ? "," : "") << vars_[i].name;
    es << " bounds=";
    for (size_t i = from; i < vars_.size(); ++i)
      es << (i > from ? "," : "") << vars_[i].bound;
    return es.str();
  };
  switch (kind_) {
    case RingKind::PrimeField:
      os << "fp " << p_;
      break;
    case RingKind::GaloisField:
      os << "gf " << p_ << " d=" << modulus_->size() - 1 << " mod=" << poly_str(*modulus_)
         << extra_vars(1);
      break;
    case RingKind::PolyRing: {
      os << "poly " << p_ << " vars=";
      for (size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i].name;
      break;
    }
    case RingKind::QuotientRing: {
      os << "mq " << p_ << " vars=";
      for (size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i].name;
      os << " bounds=";
      for (size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i].bound;
      break;
    }
    case RingKind::UnivariateQuotient:
      os << "uq " << p_ << " " << vars_[0].name << " mod=" << poly_str(*modulus_)
         << extra_vars(1);
      break;
  }
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// Parse a univariate monic modulus expression on variable `var`.
std::vector<int> parse_modulus(int p, const std::string& var, const std::string& text) {
  Ring tmp = RingSpec::poly_ring(p, {var});
  RingElement e = RingElement::parse(tmp, text);
  size_t deg = 0;
  for (const auto& [m, c] : e.coeffs()) deg = std::max<size_t>(deg, m[0]);
  std::vector<int> f(deg + 1, 0);
  for (const auto& [m, c] : e.coeffs()) f[m[0]] = c;
  if (f.empty() || f.back() != 1) throw parse_error("modulus must be monic: " + text);
  return f;
}

}  // namespace

Ring RingSpec::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<std::string> tok;
  std::string t;
  while (is >> t) tok.push_back(t);
  if (tok.size() < 2) throw parse_error("bad ring spec '" + text + "'");
  int p = std::stoi(tok[1]);
  auto kv = [&](const std::string& key, size_t from) -> std::optional<std::string> {
    for (size_t i = from; i < tok.size(); ++i)
      if (tok[i].rfind(key + "=", 0) == 0) return tok[i].substr(key.size() + 1);
    return std::nullopt;
  };
  auto extra = [&](size_t from) {
    std::vector<Variable> vs;
    auto vnames = kv("vars", from);
    auto vbounds = kv("bounds", from);
    if (vnames) {
      auto names = split(*vnames, ',');
      std::vector<std::string> bounds =
          vbounds ? split(*vbounds, ',') : std::vector<std::string>(names.size(), "0");
      if (names.size() != bounds.size())
        throw parse_error("vars/bounds length mismatch in '" + text + "'");
      for (size_t i = 0; i < names.size(); ++i)
        vs.push_back(Variable{names[i], static_cast<uint32_t>(std::stoul(bounds[i]))});
    }
    return vs;
  };
  if (tok[0] == "fp") {
    return prime_field(p);
  } else if (tok[0] == "gf") {
    auto mod = kv("mod", 2);
    if (!mod) throw parse_error("gf spec needs mod=");
    std::string var = "x";
    Ring base = galois_field(p, parse_modulus(p, var, *mod), var);
    auto vs = extra(2);
    return vs.empty() ? base : extend(base, vs);
  } else if (tok[0] == "poly") {
    auto vnames = kv("vars", 2);
    if (!vnames) throw parse_error("poly spec needs vars=");
    return poly_ring(p, split(*vnames, ','));
  } else if (tok[0] == "mq") {
    auto vs = extra(2);
    if (vs.empty()) throw parse_error("mq spec needs vars=");
    return quotient_ring(p, vs);
  } else if (tok[0] == "uq") {
    if (tok.size() < 4) throw parse_error("uq spec: uq <p> <var> mod=<f>");
    std::string var = tok[2];
    auto mod = kv("mod", 3);
    if (!mod) throw parse_error("uq spec needs mod=");
    Ring base = univariate_quotient(p, var, parse_modulus(p, var, *mod));
    auto vs = extra(3);
    return vs.empty() ? base : extend(base, vs);
  }
  throw parse_error("unknown ring kind '" + tok[0] + "'");
}

// ---------------------------------------------------------------------------
// RingHom

RingHom::RingHom(Ring source, Ring target, std::vector<RingElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (source_->p() != target_->p()) throw error("hom between rings of different characteristic");
  if (images_.size() != source_->nvars()) throw error("hom needs one image per generator");
  for (size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].ring() != target_ && !images_[i].ring()->same_as(*target_))
      throw error("hom image not in target ring");
    if (i == 0 && source_->modulus()) {
      const auto& f = *source_->modulus();
      RingElement acc = target_->zero();
      for (size_t e = 0; e < f.size(); ++e)
        acc = acc + images_[0].pow(e) * static_cast<long>(f[e]);
      if (!acc.is_zero()) throw error("hom image violates modulus relation");
    } else if (source_->vars()[i].bound > 0) {
      if (!images_[i].pow(source_->vars()[i].bound).is_zero())
        throw error("hom image violates nilpotency relation");
    }
  }
}

RingHom RingHom::identity(const Ring& ring) {
  std::vector<RingElement> images;
  for (size_t i = 0; i < ring->nvars(); ++i) images.push_back(ring->generator(i));
  return RingHom(ring, ring, std::move(images));
}

RingHom RingHom::inclusion(const Ring& source, const Ring& target) {
  std::vector<RingElement> images;
  for (const auto& v : source->vars()) {
    int idx = target->var_index(v.name);
    if (idx < 0) throw error("inclusion: target lacks variable " + v.name);
    images.push_back(target->generator(static_cast<size_t>(idx)));
  }
  return RingHom(source, target, std::move(images));
}

RingElement RingHom::operator()(const RingElement& a) const {
  if (a.ring() != source_ && !a.ring()->same_as(*source_))
    throw error("hom applied to element of wrong ring");
  RingElement acc = target_->zero();
  for (const auto& [m, c] : a.coeffs()) {
    RingElement term = target_->from_int(c);
    for (size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) term = term * images_[i].pow(m[i]);
    acc = acc + term;
  }
  return acc;
}

RingHom RingHom::compose_after(const RingHom& first) const {
  if (first.target_ != source_ && !first.target_->same_as(*source_))
    throw error("hom composition mismatch");
  std::vector<RingElement> images;
  for (const auto& img : first.images_) images.push_back((*this)(img));
  return RingHom(first.source_, target_, std::move(images));
}

}  // namespace dkit
