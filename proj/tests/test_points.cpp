#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "dkit/points.hpp"

using namespace dkit;

namespace {

Presentation zmod(const Ring& ring, int n) {
  std::vector<RingElement> a(n, ring->zero());
  a[0] = ring->one();
  return CosmoothPresentation::make_rank1(ring, n, a);
}

Presentation alpha_dual(const Ring& ring, int n) {
  return CosmoothPresentation::make_rank1(
      ring, n, std::vector<RingElement>(n, ring->zero()));
}

}  // namespace

TEST_CASE("points of the worked examples") {
  auto f2 = RingSpec::parse("fp 2");
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");

  // E_1/E_1(F-1) over F_4: solutions of x^2 = x are {0, 1}
  auto ps = points(zmod(f2, 1), RingHom::inclusion(f2, f4));
  REQUIRE(ps.points.size() == 2);
  CHECK(ps.points[0][0].is_zero());
  CHECK(ps.points[1][0] == WittVector::one(f4, 1));

  // E_1/E_1F over F_2[e]/(e^2): solutions of x^2 = 0 are {0, e}
  auto dual = RingSpec::parse("uq 2 e mod=e^2");
  auto psn = points(alpha_dual(f2, 1), RingHom::inclusion(f2, dual));
  REQUIRE(psn.points.size() == 2);
  CHECK(psn.points[1][0] == WittVector::teichmuller(dual->generator("e"), 1));

  // E_n/E_n(F-1) over F_q: fixed points of sigma = W_n(F_p), cyclic p^n
  for (int n : {1, 2, 3}) {
    for (const auto& S : {f2, f4}) {
      auto psq = points(zmod(f2, n), RingHom::inclusion(f2, S));
      CAPTURE(n);
      CHECK(psq.points.size() == (size_t{1} << n));
      auto g = group_structure(psq);
      CHECK(g.axioms_ok);
      REQUIRE(g.invariant_factors.size() == 1);
      CHECK(g.invariant_factors[0] == (uint64_t{1} << n));
      // every fixed point has components in the prime field
      for (const auto& pt : psq.points)
        for (const auto& c : pt[0].components())
          CHECK((c.is_zero() || c.is_one()));
    }
  }
  // p = 3 instance
  auto f3 = RingSpec::parse("fp 3");
  auto g3 = group_structure(points(zmod(f3, 2)));
  CHECK(g3.order == 9);
  REQUIRE(g3.invariant_factors.size() == 1);
  CHECK(g3.invariant_factors[0] == 9);
}

TEST_CASE("group structure invariants") {
  auto f2 = RingSpec::parse("fp 2");
  // E_2/E_2(F-1) over F_2 is Z/4
  auto g = group_structure(points(zmod(f2, 2)));
  CHECK(g.order == 4);
  CHECK(g.axioms_ok);
  CHECK(g.invariant_factors == std::vector<uint64_t>{4});
  CHECK(g.to_string() == "order 4, Z/4");
  // E_1/E_1F over the field F_2 is trivial
  auto gt = group_structure(points(alpha_dual(f2, 1)));
  CHECK(gt.order == 1);
  CHECK(gt.axioms_ok);
  CHECK(gt.invariant_factors.empty());
  // E_2/E_2F over F_2[e]/(e^2) is elementary abelian of rank 2
  auto dual = RingSpec::parse("uq 2 e mod=e^2");
  auto ge = group_structure(
      points(alpha_dual(f2, 2), RingHom::inclusion(f2, dual)));
  CHECK(ge.order == 4);
  CHECK(ge.invariant_factors == std::vector<uint64_t>({2, 2}));
}

TEST_CASE("point sets are closed under addition and contain zero") {
  auto f2 = RingSpec::parse("fp 2");
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");
  auto dual = RingSpec::parse("uq 2 e mod=e^2");
  for (const auto& P : {zmod(f2, 2), alpha_dual(f2, 2)}) {
    for (const auto& S : std::vector<Ring>{f2, f4, dual}) {
      auto ps = points(P, RingHom::inclusion(f2, S));
      auto g = group_structure(ps);
      CAPTURE(S->to_string());
      CHECK(g.axioms_ok);
    }
  }
}

TEST_CASE("point counts multiply over product rings") {
  auto f2 = RingSpec::parse("fp 2");
  // F_2[x]/(x^2+x) is isomorphic to F_2 x F_2
  auto prod = RingSpec::parse("uq 2 x mod=x^2+x");
  for (const auto& P : {zmod(f2, 1), zmod(f2, 2), alpha_dual(f2, 2)}) {
    auto base = points(P).points.size();
    auto split = points(P, RingHom::inclusion(f2, prod)).points.size();
    CHECK(split == base * base);
  }
}

TEST_CASE("points commute with base change") {
  auto f2 = RingSpec::parse("fp 2");
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");
  auto incl = RingHom::inclusion(f2, f4);
  for (const auto& P : {zmod(f2, 2), alpha_dual(f2, 2)}) {
    auto via_hom = points(P, incl);
    auto via_bc = points(base_change(P, incl));
    CHECK(via_hom.points == via_bc.points);
  }
}

TEST_CASE("truncation is surjective on points") {
  auto f2 = RingSpec::parse("fp 2");
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");
  for (const auto& P : {zmod(f2, 3), alpha_dual(f2, 3)}) {
    for (const auto& S : {f2, f4}) {
      auto h = RingHom::inclusion(f2, S);
      for (int m : {1, 2}) {
        auto top = points(P, h);
        auto low = points(truncate(P, m), h);
        // project the level-n points along W_n -> W_m
        std::vector<std::vector<WittVector>> projected;
        for (const auto& pt : top.points) {
          std::vector<WittVector> q;
          for (const auto& w : pt) {
            std::vector<RingElement> comps(w.components().begin(),
                                           w.components().begin() + m);
            q.push_back(WittVector({S->p(), m}, std::move(comps)));
          }
          projected.push_back(std::move(q));
        }
        for (const auto& target : low.points) {
          bool hit = std::find(projected.begin(), projected.end(), target) !=
                     projected.end();
          CHECK(hit);
        }
      }
    }
  }
}

TEST_CASE("derivative basics") {
  auto A = RingSpec::parse("mq 2 vars=l,T bounds=0,8");
  auto T = A->generator("T");
  auto l = A->generator("l");
  CHECK(derivative(T * T * T, "T") == T * T);  // 3 T^2 = T^2 mod 2
  CHECK(derivative(T * T, "T").is_zero());     // 2 T = 0
  CHECK(derivative(l, "T").is_zero());
  CHECK(derivative(l * T, "T") == l);
  CHECK_THROWS_AS(derivative(T, "q"), error);
  // differentiating along a variable with non-p-power bound is rejected
  auto bad = RingSpec::parse("mq 2 vars=T bounds=3");
  CHECK_THROWS_AS(derivative(bad->generator("T"), "T"), error);
}

TEST_CASE("hochschild p-th power: the lambda-family derivation") {
  // ((1+lT) d/dT)^p = l^{p-1} (1+lT) d/dT
  for (int p : {2, 3}) {
    for (int N : {1, 2}) {
      uint32_t bound = 1;
      for (int i = 0; i < N; ++i) bound *= static_cast<uint32_t>(p);
      auto A = RingSpec::parse("mq " + std::to_string(p) +
                               " vars=l,T bounds=0," + std::to_string(bound));
      auto l = A->generator("l");
      auto T = A->generator("T");
      TruncatedDerivation d(A, "T", A->one() + l * T);
      auto dp = hochschild_p_power(d);
      auto expect = l.pow(static_cast<uint64_t>(p - 1)) * (A->one() + l * T);
      CAPTURE(p);
      CAPTURE(N);
      CHECK(dp.coefficient() == expect);
    }
  }
  // p=2, N=3 instance spelled out
  auto A = RingSpec::parse("mq 2 vars=l,T bounds=0,8");
  auto l = A->generator("l");
  auto T = A->generator("T");
  auto dp = hochschild_p_power(TruncatedDerivation(A, "T", A->one() + l * T));
  CHECK(dp.coefficient() == l * (A->one() + l * T));
  CHECK(dp.to_string() == "(" + (l + l * l * T).to_string() + ") d/dT");
}

TEST_CASE("hochschild p-th power: degenerate coefficients") {
  auto A = RingSpec::parse("mq 2 vars=T bounds=4");
  auto T = A->generator("T");
  // f = 1: (d/dT)^p = 0
  CHECK(hochschild_p_power(TruncatedDerivation(A, "T", A->one()))
            .coefficient()
            .is_zero());
  // f = T, p = 2: (T d/dT)^2 = T d/dT
  CHECK(hochschild_p_power(TruncatedDerivation(A, "T", T)).coefficient() == T);
  // f = 0
  CHECK(hochschild_p_power(TruncatedDerivation(A, "T", A->zero()))
            .coefficient()
            .is_zero());
}

TEST_CASE("hochschild agreement on a spanning set") {
  for (int p : {2, 3}) {
    uint32_t bound = static_cast<uint32_t>(p * p);  // N = 2
    auto A = RingSpec::parse("mq " + std::to_string(p) + " vars=l,T bounds=0," +
                             std::to_string(bound));
    auto l = A->generator("l");
    auto T = A->generator("T");
    std::vector<RingElement> coeffs = A->spanning_set();
    coeffs.push_back(T * T * T);
    coeffs.push_back(l * T + T * T);
    coeffs.push_back(A->one() + l * l * T * T * T);
    for (const auto& f : coeffs) {
      // hochschild_p_power throws if direct composition and the identity
      // disagree; reaching the return value is the assertion
      auto dp = hochschild_p_power(TruncatedDerivation(A, "T", f));
      CHECK(dp.ring()->same_as(*A));
    }
  }
}

TEST_CASE("lie data") {
  auto poly = RingSpec::parse("poly 2 vars=l");
  auto f2 = RingSpec::parse("fp 2");
  auto lam = poly->generator("l");
  // lambda family at n=1: 1x1 matrix [lambda^{p-1}] (p=2)
  auto fam = CosmoothPresentation::make_rank1(poly, 1, {lam});
  auto [r, m] = lie_data(fam);
  CHECK(r == 1);
  CHECK(m[0][0] == lam);
  // E_n/E_nF -> zero matrix; E_n/E_n(F-1) -> identity matrix
  auto [ra, ma] = lie_data(alpha_dual(f2, 2));
  CHECK(ma[0][0].is_zero());
  auto [rz, mz] = lie_data(zmod(f2, 2));
  CHECK(mz[0][0].is_one());
  // specializations of the family's lie data match
  RingHom at0(poly, f2, {f2->zero()});
  RingHom at1(poly, f2, {f2->one()});
  CHECK(lie_data(base_change(fam, at0)).second[0][0] == f2->zero());
  CHECK(lie_data(base_change(fam, at1)).second[0][0] == f2->one());
}

TEST_CASE("budget guard") {
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");
  std::vector<RingElement> a(3, f4->zero());
  a[0] = f4->one();
  auto P = CosmoothPresentation::make_rank1(f4, 3, a);
  CHECK_THROWS_AS(points(P, RingHom::identity(f4), 16), budget_error);
  // infinite rings are rejected
  auto poly = RingSpec::parse("poly 2 vars=l");
  auto fam = CosmoothPresentation::make_rank1(poly, 1, {poly->generator("l")});
  CHECK_THROWS_AS(points(fam), not_finite_error);
}
