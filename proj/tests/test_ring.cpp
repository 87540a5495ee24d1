#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <string>

#include "dkit/ring.hpp"

using namespace dkit;

namespace {

// Exhaustive commutative-ring axiom check; meant for rings with <= 16 elements.
void check_ring_axioms(const Ring& ring) {
  auto elems = ring->enumerate();
  REQUIRE(elems.size() == ring->cardinality());
  auto zero = ring->zero();
  auto one = ring->one();
  for (const auto& a : elems) {
    CHECK(a + zero == a);
    CHECK(a * one == a);
    CHECK((a + (-a)).is_zero());
    for (const auto& b : elems) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      for (const auto& c : elems) {
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
      }
    }
  }
}

}  // namespace

TEST_CASE("prime field basics") {
  auto f2 = RingSpec::parse("fp 2");
  CHECK(f2->cardinality() == 2);
  auto elems = f2->enumerate();
  REQUIRE(elems.size() == 2);
  CHECK(elems[0].is_zero());
  CHECK(elems[1].is_one());
  CHECK_THROWS_AS(RingSpec::prime_field(4), error);
}

TEST_CASE("univariate quotient F_2[l]/(l^2) has 4 elements") {
  auto ring = RingSpec::parse("uq 2 l mod=l^2");
  CHECK(ring->cardinality() == 4);
  auto l = ring->generator("l");
  CHECK((l * l).is_zero());
  CHECK_FALSE((ring->one() + l).is_zero());
}

TEST_CASE("monomial quotient F_2[T]/(T^4) has 16 elements") {
  auto ring = RingSpec::parse("mq 2 vars=T bounds=4");
  CHECK(ring->cardinality() == 16);
  auto all = ring->enumerate();
  std::set<std::string> seen;
  for (const auto& a : all) seen.insert(a.to_string());
  CHECK(seen.size() == 16);  // every element exactly once
}

TEST_CASE("enumeration order is lex on coefficient tuples") {
  // F_2[e]/(e^2) -> [0, e, 1, 1+e]
  auto ring = RingSpec::parse("mq 2 vars=e bounds=2");
  auto all = ring->enumerate();
  REQUIRE(all.size() == 4);
  CHECK(all[0].to_string() == "0");
  CHECK(all[1].to_string() == "e");
  CHECK(all[2].to_string() == "1");
  CHECK(all[3].to_string() == "1+e");
}

TEST_CASE("galois field construction") {
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");
  CHECK(f4->cardinality() == 4);
  // every nonzero element is a unit
  for (const auto& a : f4->enumerate())
    CHECK(a.is_unit() == !a.is_zero());
  // reducible modulus rejected
  CHECK_THROWS_AS(RingSpec::parse("gf 2 d=2 mod=x^2+1"), error);
}

TEST_CASE("infinite rings refuse enumeration") {
  auto ring = RingSpec::parse("poly 2 vars=l");
  CHECK_FALSE(ring->finite());
  CHECK_THROWS_AS(ring->cardinality(), not_finite_error);
  CHECK_THROWS_AS(ring->enumerate(), not_finite_error);
}

TEST_CASE("ring axioms exhaustively on small rings") {
  for (const char* spec : {"fp 2", "fp 3", "uq 2 l mod=l^2", "gf 2 d=2 mod=x^2+x+1",
                           "mq 2 vars=T bounds=4", "gf 3 d=2 mod=x^2+1",
                           "mq 2 vars=a,b bounds=2,2"}) {
    CAPTURE(spec);
    check_ring_axioms(RingSpec::parse(spec));
  }
}

TEST_CASE("frobenius powers") {
  auto ring = RingSpec::parse("poly 2 vars=l");
  auto l = ring->generator("l");
  CHECK(l.frobenius() == l * l);
  CHECK((ring->one() + l).frobenius() == ring->one() + l * l);

  auto r3 = RingSpec::parse("mq 3 vars=e bounds=2");
  CHECK(r3->generator("e").frobenius().is_zero());

  // multiplicativity + additivity, exhaustively on a small ring
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");
  for (const auto& a : f4->enumerate())
    for (const auto& b : f4->enumerate()) {
      CHECK((a * b).frobenius() == a.frobenius() * b.frobenius());
      CHECK((a + b).frobenius() == a.frobenius() + b.frobenius());
    }
}

TEST_CASE("normal form idempotence and equality") {
  auto ring = RingSpec::parse("uq 2 l mod=l^2");
  auto l = ring->generator("l");
  auto x = ring->one() + l;
  auto rebuilt = ring->element(x.coeffs());
  CHECK(rebuilt == x);
  // l^2 reduces to zero through the public constructor too
  Monomial m{2};
  CHECK(ring->element({{m, 1}}).is_zero());
}

TEST_CASE("ring homs") {
  auto src = RingSpec::parse("poly 2 vars=l");
  auto f2 = RingSpec::parse("fp 2");
  auto l = src->generator("l");

  RingHom at0(src, f2, {f2->zero()});
  RingHom at1(src, f2, {f2->one()});
  CHECK(at0(src->one() + l) == f2->one());
  CHECK(at1(l * l) == f2->one());

  auto id = RingHom::identity(src);
  CHECK(id(l) == l);

  // images must satisfy source relations
  auto uq = RingSpec::parse("uq 2 l mod=l^2");
  CHECK_THROWS_AS(RingHom(uq, f2, {f2->one()}), error);  // 1^2 != 0

  // hom laws on exhaustive pairs over a finite source
  auto f4 = RingSpec::parse("gf 2 d=2 mod=x^2+x+1");
  auto x = f4->generator("x");
  RingHom frob(f4, f4, {x * x});  // x -> x^2 is the nontrivial automorphism
  for (const auto& a : f4->enumerate())
    for (const auto& b : f4->enumerate()) {
      CHECK(frob(a + b) == frob(a) + frob(b));
      CHECK(frob(a * b) == frob(a) * frob(b));
    }
}

TEST_CASE("element parse/print round trip") {
  auto ring = RingSpec::parse("mq 3 vars=l,T bounds=0,9");
  for (const char* text : {"0", "1", "l", "2*l^2", "1+l^3", "T^2+2*l*T"}) {
    auto e = RingElement::parse(ring, text);
    CHECK(RingElement::parse(ring, e.to_string()) == e);
  }
  CHECK_THROWS_AS(RingElement::parse(ring, "q+1"), parse_error);
}

TEST_CASE("ring spec parse/print round trip") {
  for (const char* text :
       {"fp 2", "fp 5", "gf 2 d=2 mod=x^2+x+1", "uq 2 l mod=l^2",
        "mq 2 vars=T bounds=4", "poly 3 vars=l", "mq 2 vars=a,b bounds=2,3",
        "gf 2 d=2 mod=x^2+x+1 vars=e bounds=2"}) {
    auto ring = RingSpec::parse(text);
    auto again = RingSpec::parse(ring->to_string());
    CAPTURE(text);
    CHECK(again->same_as(*ring));
  }
}

TEST_CASE("inverse in nilpotent extensions") {
  auto ring = RingSpec::parse("mq 2 vars=l,T bounds=0,4");  // F_2[l][T]/(T^4)
  auto l = ring->generator("l");
  auto T = ring->generator("T");
  auto u = ring->one() + l * T;  // unit: 1 + nilpotent
  auto v = u.inverse();
  CHECK((u * v).is_one());
  CHECK_FALSE(l.is_unit());
  CHECK_FALSE(T.is_unit());
  CHECK(u.is_unit());
}
