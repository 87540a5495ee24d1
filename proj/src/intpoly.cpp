#include "dkit/intpoly.hpp"

#include <unordered_map>

namespace dkit {

IntPoly IntPoly::variable(size_t nvars, size_t index) {
  if (index >= nvars) throw error("IntPoly variable index out of range");
  IntPoly p(nvars);
  Expt e(nvars, 0);
  e[index] = 1;
  p.terms_.emplace(std::move(e), 1);
  return p;
}

IntPoly IntPoly::constant(size_t nvars, const BigInt& c) {
  IntPoly p(nvars);
  if (c != 0) p.terms_.emplace(Expt(nvars, 0), c);
  return p;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  if (nvars_ != o.nvars_) throw error("IntPoly arity mismatch");
  IntPoly out(nvars_);
  out.terms_ = terms_;
  for (const auto& [m, c] : o.terms_) {
    auto it = out.terms_.find(m);
    if (it == out.terms_.end()) {
      out.terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + o.scaled(-1); }

namespace {
struct ExptHash {
  size_t operator()(const IntPoly::Expt& e) const {
    size_t h = 1469598103934665603ull;
    for (uint16_t v : e) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};
}  // namespace

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (nvars_ != o.nvars_) throw error("IntPoly arity mismatch");
  std::unordered_map<Expt, BigInt, ExptHash> acc;
  acc.reserve(terms_.size() + o.terms_.size());
  Expt m(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (size_t i = 0; i < nvars_; ++i)
        m[i] = static_cast<uint16_t>(ma[i] + mb[i]);
      acc[m] += ca * cb;
    }
  }
  IntPoly out(nvars_);
  for (auto& [mm, c] : acc)
    if (c != 0) out.terms_.emplace(mm, std::move(c));
  return out;
}

IntPoly IntPoly::scaled(const BigInt& k) const {
  IntPoly out(nvars_);
  if (k == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * k);
  return out;
}

IntPoly IntPoly::pow(uint64_t e) const {
  IntPoly result = constant(nvars_, 1);
  IntPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

IntPoly IntPoly::div_exact(const BigInt& k) const {
  IntPoly out(nvars_);
  for (const auto& [m, c] : terms_) {
    if (c % k != 0) throw error("IntPoly::div_exact: coefficient not divisible");
    out.terms_.emplace(m, c / k);
  }
  return out;
}

std::map<IntPoly::Expt, int> IntPoly::reduced_mod(int p) const {
  std::map<Expt, int> out;
  for (const auto& [m, c] : terms_) {
    BigInt r = c % p;
    if (r < 0) r += p;
    int v = static_cast<int>(r);
    if (v != 0) out.emplace(m, v);
  }
  return out;
}

}  // namespace dkit
