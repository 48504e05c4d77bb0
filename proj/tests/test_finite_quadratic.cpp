#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "properties.hpp"
#include "singlat/abelian.hpp"
#include "singlat/quadratic.hpp"

using namespace singlat;

namespace {

// The simple-elliptic discriminant function on Z_d with q(e) = (d-1)/(2d),
// built directly; the lattice route is tested in its own module.
FinQuadFunction elliptic_q(const Int& d) {
  if (d == 1) return FinQuadFunction(FinAbGroup(), {}, Matrix<QmodZ>(0, 0));
  Matrix<QmodZ> b(1, 1);
  b(0, 0) = QmodZ(-1, d);
  return FinQuadFunction(FinAbGroup(0, {d}), {QmodZ(d - 1, 2 * d)}, b);
}

Subgroup cyclic_of(const FinQuadFunction& q, const Int& c) {
  return Subgroup::from_generators(q.group(), {torsion_element(q.group(), {c})});
}

std::multiset<QmodZ> value_multiset(const FinQuadFunction& q) {
  std::multiset<QmodZ> out;
  for (const GroupElement& e : all_elements(q.group())) out.insert(q.evaluate(e));
  return out;
}

}  // namespace

TEST_CASE("group construction and elements") {
  SECTION("invariant-factor validation") {
    REQUIRE_THROWS_AS(FinAbGroup(0, {Int(1)}), usage_error);
    REQUIRE_THROWS_AS(FinAbGroup(0, {Int(3), Int(2)}), usage_error);
    REQUIRE_NOTHROW(FinAbGroup(0, {Int(2), Int(2), Int(4)}));
  }
  SECTION("presentation via normal form") {
    FinAbGroup g = FinAbGroup::from_presentation(2, IntMatrix{{2, 0}, {0, 3}});
    REQUIRE(g.free_rank() == 0);
    REQUIRE(g.torsion_invariants() == std::vector<Int>{Int(6)});

    REQUIRE(FinAbGroup::from_presentation(2, IntMatrix{{1, 0}, {0, 1}}).is_trivial());

    FinAbGroup h = FinAbGroup::from_presentation(
        3, IntMatrix{{2, 4}, {6, 8}, {0, 0}});
    REQUIRE(h.free_rank() == 1);
    REQUIRE(h.torsion_invariants() == std::vector<Int>{Int(2), Int(4)});

    FinAbGroup z = FinAbGroup::from_presentation(1, IntMatrix{{0}});
    REQUIRE(z.free_rank() == 1);
    REQUIRE(z.torsion_invariants().empty());
  }
  SECTION("element arithmetic and order") {
    FinAbGroup g(0, {Int(2), Int(8)});
    GroupElement x = torsion_element(g, {1, 5});
    REQUIRE(add(x, x) == torsion_element(g, {0, 2}));
    REQUIRE(negate(x) == torsion_element(g, {1, 3}));
    REQUIRE(scale(3, x) == torsion_element(g, {1, 7}));
    REQUIRE(element_order(x) == 8);
    REQUIRE(element_order(torsion_element(g, {1, 4})) == 2);
    REQUIRE(element_order(zero_element(g)) == 1);
    REQUIRE(all_elements(g).size() == 16);

    FinAbGroup zfree(1, {Int(2)});
    REQUIRE_THROWS_AS(element_order(make_element(zfree, {1}, {0})), domain_error);
    REQUIRE_THROWS_AS(torsion_element(g, {1}), usage_error);
    REQUIRE_THROWS_AS(add(torsion_element(g, {0, 0}),
                          torsion_element(FinAbGroup(0, {Int(2)}), {0})),
                      usage_error);
  }
  SECTION("enumeration guard") {
    FinAbGroup big(0, {Int(1000003)});
    REQUIRE_THROWS_AS(all_elements(big), bound_error);
    REQUIRE_THROWS_AS(all_subgroups(big), bound_error);
    REQUIRE_THROWS_AS(all_elements(FinAbGroup(1, {})), usage_error);
  }
}

TEST_CASE("subgroups") {
  FinAbGroup z8(0, {Int(8)});
  FinAbGroup v4(0, {Int(2), Int(2)});

  SECTION("generation, membership, canonical sets") {
    Subgroup s = Subgroup::from_generators(z8, {torsion_element(z8, {6})});
    REQUIRE(s.order() == 4);  // <6> = {0,2,4,6}
    REQUIRE(s.contains(torsion_element(z8, {2})));
    REQUIRE_FALSE(s.contains(torsion_element(z8, {1})));
    REQUIRE(s == Subgroup::from_generators(z8, {torsion_element(z8, {2})}));
    REQUIRE(s.abstract_type() == std::vector<Int>{Int(4)});
    REQUIRE(Subgroup::trivial(z8).abstract_type().empty());
    REQUIRE(Subgroup::from_generators(v4, {torsion_element(v4, {1, 0}),
                                           torsion_element(v4, {0, 1})})
                .abstract_type() == std::vector<Int>{Int(2), Int(2)});
    REQUIRE(Subgroup::from_generators(v4, {torsion_element(v4, {1, 1})})
                .abstract_type() == std::vector<Int>{Int(2)});
  }
  SECTION("from_elements validates closure") {
    std::vector<GroupElement> good = {torsion_element(z8, {0}),
                                      torsion_element(z8, {4})};
    REQUIRE(Subgroup::from_elements(z8, good).order() == 2);
    REQUIRE_THROWS_AS(
        Subgroup::from_elements(z8, {torsion_element(z8, {4})}), usage_error);
    REQUIRE_THROWS_AS(
        Subgroup::from_elements(z8, {torsion_element(z8, {0}),
                                     torsion_element(z8, {2})}),
        usage_error);
  }
  SECTION("exhaustive enumeration") {
    REQUIRE(all_subgroups(z8).size() == 4);
    REQUIRE(all_subgroups(v4).size() == 5);
    REQUIRE(all_subgroups(FinAbGroup(0, {Int(6)})).size() == 4);
    auto subs = all_subgroups(FinAbGroup(0, {Int(2), Int(4)}));
    REQUIRE(subs.size() == 8);
    REQUIRE(subs.front().order() == 1);
    REQUIRE(subs.back().order() == 8);
    REQUIRE(std::is_sorted(subs.begin(), subs.end()));
    REQUIRE(all_subgroups(FinAbGroup()).size() == 1);
  }
  SECTION("lattice quotient structure") {
    IntMatrix big = IntMatrix::identity(2);
    IntMatrix small{{2, 0}, {0, 4}};
    QuotientStructure qs = lattice_quotient(big, small);
    REQUIRE(qs.invariants == std::vector<Int>{Int(2), Int(4)});
    REQUIRE_THROWS_AS(lattice_quotient(small, big), usage_error);
  }
}

TEST_CASE("quadratic function construction") {
  SECTION("well-definedness enforced at construction") {
    REQUIRE_NOTHROW(elliptic_q(8));
    Matrix<QmodZ> bad_b(1, 1);
    bad_b(0, 0) = QmodZ(1, 3);  // 2 * (1/3) != 0 in Q/Z
    REQUIRE_THROWS_AS(FinQuadFunction(FinAbGroup(0, {Int(2)}), {QmodZ()}, bad_b),
                      domain_error);
    Matrix<QmodZ> zero_b(1, 1);
    REQUIRE_THROWS_AS(
        FinQuadFunction(FinAbGroup(0, {Int(2)}), {QmodZ(1, 3)}, zero_b),
        domain_error);
    Matrix<QmodZ> asym(2, 2);
    asym(0, 1) = QmodZ(1, 2);
    REQUIRE_THROWS_AS(
        FinQuadFunction(FinAbGroup(0, {Int(2), Int(2)}),
                        {QmodZ(), QmodZ()}, asym),
        domain_error);
    REQUIRE_THROWS_AS(FinQuadFunction(FinAbGroup(1, {}), {}, Matrix<QmodZ>(0, 0)),
                      usage_error);
    REQUIRE_THROWS_AS(FinQuadFunction(FinAbGroup(0, {Int(2)}), {}, Matrix<QmodZ>(0, 0)),
                      usage_error);
  }
  SECTION("linear part and form detection") {
    FinQuadFunction q8 = elliptic_q(8);
    REQUIRE(q8.is_form());
    REQUIRE(q8.linear_part(torsion_element(q8.group(), {3})).is_zero());
    // q(g) = 1/4 on Z_2 with b(g,g) = 1/2: k(g) = 1/2 - 1/2 = 0 is a form;
    // q(g) = 1/2 with b(g,g) = 0 has k(g) = 1 - 0 = 0 too. A non-form needs
    // k(g) = 2q(g) - b(g,g) nonzero: q(g) = 1/4, b = 0 is ill-defined on Z_2,
    // so use Z_4: q(g) = 1/4, b(g,g) = 0 -> k(g) = 1/2.
    Matrix<QmodZ> zb(1, 1);
    FinQuadFunction nf(FinAbGroup(0, {Int(4)}), {QmodZ(1, 4)}, zb);
    REQUIRE_FALSE(nf.is_form());
    REQUIRE(nf.linear_part(nf.generator(0)) == QmodZ(1, 2));
  }
}

TEST_CASE("evaluation") {
  FinQuadFunction q8 = elliptic_q(8);
  SECTION("simple elliptic degree 8") {
    REQUIRE(q8.evaluate(torsion_element(q8.group(), {1})) == QmodZ(7, 16));
    REQUIRE(q8.evaluate(torsion_element(q8.group(), {4})).is_zero());
    REQUIRE(q8.evaluate(torsion_element(q8.group(), {2})) == QmodZ(3, 4));
    REQUIRE(q8.evaluate(zero_element(q8.group())).is_zero());
  }
  SECTION("degree 9") {
    FinQuadFunction q9 = elliptic_q(9);
    REQUIRE(q9.evaluate(torsion_element(q9.group(), {1})) == QmodZ(4, 9));
    REQUIRE(q9.evaluate(torsion_element(q9.group(), {3})).is_zero());
  }
  SECTION("foreign elements rejected") {
    FinQuadFunction q9 = elliptic_q(9);
    REQUIRE_THROWS_AS(q8.evaluate(torsion_element(q9.group(), {1})), usage_error);
  }
  SECTION("polarization and linearity, exhaustive on small groups") {
    FinAbGroup g48(0, {Int(4), Int(8)});
    Matrix<QmodZ> b(2, 2);
    b(0, 0) = QmodZ(1, 4);
    b(1, 1) = QmodZ(3, 8);
    b(0, 1) = QmodZ(1, 4);
    b(1, 0) = QmodZ(1, 4);
    FinQuadFunction mixed(g48, {QmodZ(1, 8), QmodZ(1, 16)}, b);
    for (const FinQuadFunction& q : {q8, mixed}) {
      for (const GroupElement& x : all_elements(q.group()))
        for (const GroupElement& y : all_elements(q.group())) {
          REQUIRE(q.evaluate(add(x, y)) - q.evaluate(x) - q.evaluate(y) ==
                  q.bilinear(x, y));
          REQUIRE(q.linear_part(add(x, y)) ==
                  q.linear_part(x) + q.linear_part(y));
        }
    }
  }
  SECTION("randomized polarization") {
    auto failures = props::prop_polarization(1500, 0x9D1A);
    for (const auto& f : failures) UNSCOPED_INFO(f);
    REQUIRE(failures.empty());
  }
}

TEST_CASE("radical") {
  for (int d = 2; d <= 9; ++d) {
    FinQuadFunction q = elliptic_q(d);
    REQUIRE(radical(q).order() == 1);
  }
  SECTION("totally degenerate") {
    Matrix<QmodZ> zb(1, 1);
    FinQuadFunction zq(FinAbGroup(0, {Int(2)}), {QmodZ()}, zb);
    REQUIRE(radical(zq).order() == 2);
  }
  SECTION("hyperbolic-shaped pairing on Z2 x Z2") {
    Matrix<QmodZ> b(2, 2);
    b(0, 1) = QmodZ(1, 2);
    b(1, 0) = QmodZ(1, 2);
    FinQuadFunction h(FinAbGroup(0, {Int(2), Int(2)}),
                      {QmodZ(1, 2), QmodZ(1, 2)}, b);
    REQUIRE(radical(h).order() == 1);
  }
}

TEST_CASE("isotropic subgroups") {
  SECTION("degree 8: only the 2-element subgroup") {
    auto iso = isotropic_subgroups(elliptic_q(8));
    REQUIRE(iso.size() == 2);
    REQUIRE(iso[0].order() == 1);
    REQUIRE(iso[1] == cyclic_of(elliptic_q(8), 4));
  }
  SECTION("degree 9: only the 3-element subgroup") {
    auto iso = isotropic_subgroups(elliptic_q(9));
    REQUIRE(iso.size() == 2);
    REQUIRE(iso[0].order() == 1);
    REQUIRE(iso[1] == cyclic_of(elliptic_q(9), 3));
  }
  SECTION("degrees 2..7: trivial only") {
    for (int d = 2; d <= 7; ++d) {
      auto iso = isotropic_subgroups(elliptic_q(d));
      REQUIRE(iso.size() == 1);
      REQUIRE(iso[0].order() == 1);
    }
  }
  SECTION("isotropy forces the pairing to vanish, exhaustively") {
    for (int d = 2; d <= 9; ++d) {
      FinQuadFunction q = elliptic_q(d);
      for (const Subgroup& I : isotropic_subgroups(q))
        for (const GroupElement& x : I.elements())
          for (const GroupElement& y : I.elements())
            REQUIRE(q.bilinear(x, y).is_zero());
    }
  }
}

TEST_CASE("perp and induced function") {
  FinQuadFunction q8 = elliptic_q(8);
  FinQuadFunction q9 = elliptic_q(9);
  Subgroup i8 = cyclic_of(q8, 4);
  Subgroup i9 = cyclic_of(q9, 3);

  SECTION("perp values") {
    Subgroup p8 = perp(q8, i8);
    REQUIRE(p8 == cyclic_of(q8, 2));
    REQUIRE(p8.abstract_type() == std::vector<Int>{Int(4)});
    REQUIRE(perp(q9, i9) == i9);
    REQUIRE(perp(q8, Subgroup::trivial(q8.group())).order() == 8);
    REQUIRE_THROWS_AS(perp(q8, cyclic_of(q8, 2)), domain_error);
  }
  SECTION("order product under nonsingular pairing") {
    for (int d = 2; d <= 9; ++d) {
      FinQuadFunction q = elliptic_q(d);
      REQUIRE(radical(q).order() == 1);
      for (const Subgroup& I : isotropic_subgroups(q))
        REQUIRE(I.order() * perp(q, I).order() == q.group().torsion_order());
    }
  }
  SECTION("induced function on perp/I") {
    FinQuadFunction r8 = induced_form(q8, i8);
    REQUIRE(r8.group().torsion_invariants() == std::vector<Int>{Int(2)});
    REQUIRE(r8.q_gen().size() == 1);
    REQUIRE(r8.q_gen()[0] == QmodZ(3, 4));

    REQUIRE(induced_form(q9, i9).group().is_trivial());

    FinQuadFunction same = induced_form(q8, Subgroup::trivial(q8.group()));
    REQUIRE(same.group() == q8.group());
    REQUIRE(value_multiset(same) == value_multiset(q8));

    REQUIRE_THROWS_AS(induced_form(q8, cyclic_of(q8, 2)), domain_error);
  }
  SECTION("induced values are representative independent") {
    FinQuadFunction r8 = induced_form(q8, i8);
    // the nontrivial class of perp/I is 2e + I = {2e, 6e}
    REQUIRE(q8.evaluate(torsion_element(q8.group(), {2})) == r8.q_gen()[0]);
    REQUIRE(q8.evaluate(torsion_element(q8.group(), {6})) == r8.q_gen()[0]);
  }
}
