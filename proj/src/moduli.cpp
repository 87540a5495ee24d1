#include "dkit/moduli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace dkit {

namespace {

// Odometer over `digits` coefficient slots, invoking sink per combination.
template <typename Sink>
void for_each_array(const std::vector<RingElement>& elems, size_t digits,
                    const Sink& sink) {
  std::vector<size_t> idx(digits, 0);
  while (true) {
    sink(idx);
    size_t d = digits;
    while (true) {
      if (d == 0) return;
      --d;
      if (++idx[d] < elems.size()) break;
      idx[d] = 0;
    }
  }
}

double array_count(const Ring& ring, size_t digits) {
  double count = 1;
  for (size_t i = 0; i < digits; ++i)
    count *= static_cast<double>(ring->cardinality());
  return count;
}

CosmoothPresentation::CoeffArray unpack(const Ring& ring, int n, int r,
                                        const std::vector<RingElement>& elems,
                                        const std::vector<size_t>& idx) {
  CosmoothPresentation::CoeffArray a(
      r, std::vector<std::vector<RingElement>>(
             r, std::vector<RingElement>(n, ring->zero())));
  size_t d = 0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < n; ++k) a[i][j][k] = elems[idx[d++]];
  return a;
}

}  // namespace

std::vector<Presentation> enumerate_presentations(const Ring& ring, int n,
                                                  int r, size_t budget) {
  if (!ring->finite()) throw not_finite_error("enumerate_presentations");
  size_t digits = static_cast<size_t>(n) * r * r;
  if (array_count(ring, digits) > static_cast<double>(budget))
    throw budget_error("presentation enumeration exceeds the budget");
  auto elems = ring->enumerate();
  std::vector<Presentation> out;
  for_each_array(elems, digits, [&](const std::vector<size_t>& idx) {
    out.push_back(
        CosmoothPresentation::make(ring, n, r, unpack(ring, n, r, elems, idx)));
  });
  return out;
}

std::vector<BasisChange> enumerate_basis_changes(const Ring& ring, int n,
                                                 int r, size_t budget) {
  if (!ring->finite()) throw not_finite_error("enumerate_basis_changes");
  size_t digits = static_cast<size_t>(n) * r * r;
  if (array_count(ring, digits) > static_cast<double>(budget))
    throw budget_error("basis-change enumeration exceeds the budget");
  auto elems = ring->enumerate();
  std::vector<BasisChange> out;
  for_each_array(elems, digits, [&](const std::vector<size_t>& idx) {
    auto c = unpack(ring, n, r, elems, idx);
    std::vector<std::vector<RingElement>> modv(
        r, std::vector<RingElement>(r, ring->zero()));
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) modv[j][k] = c[j][k][0];
    if (matrix_det(modv).is_unit()) out.push_back(std::move(c));
  });
  return out;
}

std::vector<std::vector<RingElement>> matrix_inverse(
    const std::vector<std::vector<RingElement>>& m) {
  size_t n = m.size();
  if (n == 0) throw error("inverse of an empty matrix");
  if (n == 1) return {{m[0][0].inverse()}};
  auto det_inv = matrix_det(m).inverse();
  std::vector<std::vector<RingElement>> inv(
      n, std::vector<RingElement>(n, m[0][0].ring()->zero()));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<std::vector<RingElement>> minor;
      for (size_t a = 0; a < n; ++a) {
        if (a == i) continue;
        std::vector<RingElement> row;
        for (size_t b = 0; b < n; ++b)
          if (b != j) row.push_back(m[a][b]);
        minor.push_back(std::move(row));
      }
      auto cof = matrix_det(minor) * det_inv;
      inv[j][i] = ((i + j) % 2 == 0) ? cof : -cof;
    }
  return inv;
}

std::vector<std::vector<RingElement>> coords_in_basis(
    const ModuleElement& x, const std::vector<ModuleElement>& g) {
  const auto& P = x.presentation();
  const Ring& ring = P->ring();
  int n = P->level(), r = P->rank();
  if (g.size() != static_cast<size_t>(r))
    throw error("coords_in_basis needs r generator images");
  std::vector<std::vector<RingElement>> modv(
      r, std::vector<RingElement>(r, ring->zero()));
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) modv[j][k] = g[j].coord(0, k);
  auto inv = matrix_inverse(modv);

  std::vector<std::vector<RingElement>> out(
      n, std::vector<RingElement>(r, ring->zero()));
  auto residual = x;
  for (int i = 0; i < n; ++i) {
    // row i of sum_j V^i [c_j] g_j equals (c_j) . (mod-V matrix); rows below i
    // of the residual are already zero, so c is read off linearly.
    for (int j = 0; j < r; ++j) {
      auto c = ring->zero();
      for (int k = 0; k < r; ++k) c = c + residual.coord(i, k) * inv[k][j];
      out[i][j] = c;
    }
    auto step = ModuleElement::zero(P);
    for (int j = 0; j < r; ++j) {
      auto vterm =
          CartierElement::monomial(n, i, out[i][j], 0);
      step = step + g[j].act(vterm);
    }
    residual = residual - step;
  }
  if (!residual.is_zero())
    throw error("coordinate peeling failed: generators do not span");
  return out;
}

Presentation transform(const Presentation& pres, const BasisChange& change) {
  int n = pres->level(), r = pres->rank();
  std::vector<ModuleElement> g;
  for (int j = 0; j < r; ++j) {
    std::vector<std::vector<RingElement>> coords(
        n, std::vector<RingElement>(r, pres->ring()->zero()));
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < n; ++i) coords[i][k] = change[j][k][i];
    g.push_back(ModuleElement::from_coords(pres, std::move(coords)));
  }
  CosmoothPresentation::CoeffArray b(
      r, std::vector<std::vector<RingElement>>(
             r, std::vector<RingElement>(n, pres->ring()->zero())));
  for (int j = 0; j < r; ++j) {
    auto c = coords_in_basis(g[j].act_F(), g);
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < n; ++i) b[j][k][i] = c[i][k];
  }
  return CosmoothPresentation::make(pres->ring(), n, r, std::move(b));
}

namespace {

struct UnionFind {
  std::vector<size_t> parent;
  explicit UnionFind(size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), size_t{0});
  }
  size_t find(size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

CensusReport iso_classes(const std::vector<Presentation>& stream,
                         size_t budget) {
  if (stream.empty()) throw error("iso_classes needs a nonempty stream");
  CensusReport rep;
  rep.ring = stream[0]->ring();
  rep.n = stream[0]->level();
  rep.r = stream[0]->rank();
  for (const auto& P : stream)
    if (P->level() != rep.n || P->rank() != rep.r ||
        !P->ring()->same_as(*rep.ring))
      throw error("iso_classes stream mixes shapes");

  std::map<std::string, size_t> index;
  for (size_t i = 0; i < stream.size(); ++i) {
    if (!index.emplace(stream[i]->to_string(), i).second)
      throw error("iso_classes stream contains duplicates");
  }
  rep.total_presentations = stream.size();

  auto changes = enumerate_basis_changes(rep.ring, rep.n, rep.r, budget);
  rep.group_size = changes.size();

  UnionFind uf(stream.size());
  for (size_t i = 0; i < stream.size(); ++i) {
    for (const auto& c : changes) {
      auto q = transform(stream[i], c);
      auto it = index.find(q->to_string());
      if (it != index.end()) uf.unite(i, it->second);
    }
  }

  std::map<size_t, CensusClass> by_root;
  for (size_t i = 0; i < stream.size(); ++i) {
    size_t root = uf.find(i);
    auto [it, fresh] = by_root.try_emplace(root);
    if (fresh) it->second.representative = stream[root];
    it->second.orbit_size += 1;
  }
  for (auto& [root, cls] : by_root) {
    for (const auto& c : changes)
      if (transform(cls.representative, c)->same_as(*cls.representative))
        cls.aut_count += 1;
    if (cls.orbit_size * cls.aut_count != rep.group_size)
      rep.orbit_stabilizer_ok = false;
    rep.classes.push_back(cls);
  }
  return rep;
}

CensusReport census(const Ring& ring, int n, int r, size_t budget) {
  return iso_classes(enumerate_presentations(ring, n, r, budget), budget);
}

Mass CensusReport::total_mass() const {
  Mass m(0);
  for (const auto& cls : classes) m += cls.mass();
  return m;
}

std::string CensusReport::to_csv() const {
  std::ostringstream os;
  os << "representative,orbit_size,aut_count,mass\n";
  for (const auto& cls : classes) {
    std::string flat = cls.representative->to_string();
    std::replace(flat.begin(), flat.end(), '\n', ' ');
    while (!flat.empty() && flat.back() == ' ') flat.pop_back();
    os << "\"" << flat << "\"," << cls.orbit_size << "," << cls.aut_count
       << ",1/" << cls.aut_count << "\n";
  }
  return os.str();
}

TruncationTable truncation_surjectivity(const Ring& ring, int n, int r,
                                        size_t budget) {
  auto report = census(ring, n, r, budget);
  TruncationTable table;
  size_t covered = 0;
  for (const auto& cls : report.classes) {
    TruncationWitness w;
    w.representative = cls.representative;
    w.lift = lift_level(cls.representative);
    w.covered = truncate(w.lift, n)->same_as(*cls.representative);
    if (w.covered) ++covered;
    table.witnesses.push_back(std::move(w));
  }
  table.coverage = table.witnesses.empty()
                       ? 1.0
                       : static_cast<double>(covered) /
                             static_cast<double>(table.witnesses.size());
  return table;
}

InfinitesimalLift infinitesimal_lift(const Presentation& pres,
                                     const std::string& eps_name) {
  const Ring& B = pres->ring();
  Ring A = RingSpec::extend(B, {Variable{eps_name, 2}});
  std::vector<RingElement> images;
  for (const auto& v : A->vars())
    images.push_back(v.name == eps_name ? B->zero() : B->generator(v.name));
  RingHom h(A, B, images);
  return InfinitesimalLift{lift_along(pres, h), h};
}

}  // namespace dkit
