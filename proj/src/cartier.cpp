#include "dkit/cartier.hpp"

#include <cctype>
#include <sstream>

namespace dkit {

CartierElement CartierElement::zero(const Ring& ring, int n) {
  if (n < 1) throw error("Cartier level must be >= 1");
  return CartierElement(n, ring);
}

CartierElement CartierElement::one(const Ring& ring, int n) {
  return monomial(n, 0, ring->one(), 0);
}

CartierElement CartierElement::monomial(int n, int r, const RingElement& a, int s) {
  if (r < 0 || s < 0) throw error("Cartier monomial exponents must be >= 0");
  CartierElement e(n, a.ring());
  e.add_term(r, s, a);
  return e;
}

CartierElement CartierElement::F(const Ring& ring, int n) {
  return monomial(n, 0, ring->one(), 1);
}

CartierElement CartierElement::V(const Ring& ring, int n) {
  return monomial(n, 1, ring->one(), 0);
}

CartierElement CartierElement::from_witt(const WittVector& w) {
  CartierElement e(w.n(), w.ring());
  for (int i = 0; i < w.n(); ++i) e.add_term(i, i, w.component(i));
  return e;
}

// Insert V^r [a] F^s, cascading colliding slots through the Teichmuller sum
// [a] + [b] = sum_k V^k [s_k(a,b)] F^k.  Each cascade step strictly increases
// r, and slots with r >= n vanish, so this terminates.
void CartierElement::add_term(int r, int s, const RingElement& a) {
  if (a.is_zero() || r >= n_) return;
  auto it = terms_.find(VFSlot{r, s});
  if (it == terms_.end()) {
    terms_.emplace(VFSlot{r, s}, a);
    return;
  }
  RingElement b = it->second;
  terms_.erase(it);
  auto cascade = teich_sum_components(b, a, n_ - r);
  if (!cascade[0].is_zero()) terms_.emplace(VFSlot{r, s}, cascade[0]);
  for (size_t k = 1; k < cascade.size(); ++k)
    add_term(r + static_cast<int>(k), s + static_cast<int>(k), cascade[k]);
}

namespace {
void require_compatible(const CartierElement& a, const CartierElement& b) {
  if (a.level() != b.level()) throw error("Cartier level mismatch");
  if (a.ring() != b.ring() && !a.ring()->same_as(*b.ring()))
    throw error("Cartier ring mismatch");
}
}  // namespace

CartierElement CartierElement::operator+(const CartierElement& o) const {
  require_compatible(*this, o);
  CartierElement out = *this;
  for (const auto& [slot, a] : o.terms_) out.add_term(slot.r, slot.s, a);
  return out;
}

CartierElement CartierElement::operator-() const {
  CartierElement out(n_, ring_);
  for (const auto& [slot, a] : terms_) {
    auto neg = teich_neg_components(a, n_ - slot.r);
    for (size_t k = 0; k < neg.size(); ++k)
      out.add_term(slot.r + static_cast<int>(k), slot.s + static_cast<int>(k), neg[k]);
  }
  return out;
}

CartierElement CartierElement::operator-(const CartierElement& o) const {
  return *this + (-o);
}

CartierElement CartierElement::operator*(const CartierElement& o) const {
  require_compatible(*this, o);
  CartierElement out(n_, ring_);
  for (const auto& [sa, a] : terms_) {
    for (const auto& [sb, b] : o.terms_) {
      // V^r[a]F^s V^t[b]F^u = V^{r+t}[a^{p^t} b^{p^s}]F^{s+u}
      if (sa.r + sb.r >= n_) continue;
      out.add_term(sa.r + sb.r, sa.s + sb.s,
                   a.frobenius(static_cast<unsigned>(sb.r)) *
                       b.frobenius(static_cast<unsigned>(sa.s)));
    }
  }
  return out;
}

bool CartierElement::operator==(const CartierElement& o) const {
  require_compatible(*this, o);
  return terms_ == o.terms_;
}

WittVector CartierElement::act(const WittVector& x, const RingHom& h) const {
  if (x.n() != n_) throw error("Cartier action: Witt length mismatch");
  WittVector acc = WittVector::zero(x.ring(), n_);
  for (const auto& [slot, a] : terms_) {
    WittVector y = x;
    for (int i = 0; i < slot.s; ++i) y = y.frobenius();
    y = WittVector::teichmuller(h(a), n_) * y;
    for (int i = 0; i < slot.r; ++i) y = y.verschiebung();
    acc = acc + y;
  }
  return acc;
}

WittVector CartierElement::act(const WittVector& x) const {
  return act(x, RingHom::identity(ring_));
}

std::string CartierElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [slot, a] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool bare = slot.r == 0 && slot.s == 0;
    if (slot.r >= 1) {
      os << "V";
      if (slot.r > 1) os << "^" << slot.r;
    }
    if (a.is_one() && !bare) {
      // keep V F alone, e.g. V[1]F prints as VF
    } else {
      os << "[" << a.to_string() << "]";
    }
    if (slot.s >= 1) {
      os << "F";
      if (slot.s > 1) os << "^" << slot.s;
    }
  }
  return os.str();
}

CartierElement CartierElement::parse(const Ring& ring, int n, const std::string& text) {
  CartierElement out(n, ring);
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_exp = [&]() -> int {
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == start) throw parse_error("expected exponent in '" + text + "'");
      return std::stoi(text.substr(start, pos - start));
    }
    return 1;
  };
  skip_ws();
  if (pos == text.size()) throw parse_error("empty Cartier expression");
  int sign = 1;
  if (text[pos] == '-') {
    sign = -1;
    ++pos;
  }
  while (true) {
    skip_ws();
    int r = 0, s = 0;
    bool any = false;
    RingElement coeff = ring->one();
    if (pos < text.size() && text[pos] == 'V') {
      ++pos;
      r = parse_exp();
      any = true;
    }
    skip_ws();
    if (pos < text.size() && text[pos] == '[') {
      size_t close = text.find(']', pos);
      if (close == std::string::npos) throw parse_error("unbalanced '[' in '" + text + "'");
      coeff = RingElement::parse(ring, text.substr(pos + 1, close - pos - 1));
      pos = close + 1;
      any = true;
    } else if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      size_t start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      coeff = ring->from_int(std::stol(text.substr(start, pos - start)));
      any = true;
    }
    skip_ws();
    if (pos < text.size() && text[pos] == 'F') {
      ++pos;
      s = parse_exp();
      any = true;
    }
    if (!any) throw parse_error("empty term in Cartier expression '" + text + "'");
    CartierElement term = monomial(n, r, coeff, s);
    out = sign > 0 ? out + term : out - term;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] == '+')
      sign = 1;
    else if (text[pos] == '-')
      sign = -1;
    else
      throw parse_error("unexpected character in Cartier expression '" + text + "'");
    ++pos;
  }
  return out;
}

}  // namespace dkit
