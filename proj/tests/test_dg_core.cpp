#include <catch2/catch_amalgamated.hpp>

#include <kmf/hom_complex.hpp>

#include "test_helpers.hpp"

using namespace kmf;
using namespace kmf_test;

TEST_CASE("validation of the basic objects") {
    Rationals f;
    RingTower<Rationals> tower(f, 2, f.one());

    SECTION("(d = s, h1 = h2 = s) over pi_K = s^2 is valid") {
        auto s = scalar1(f, {0, 1});
        auto m = make_two(tower, GradedFree(0, {1, 1}), {s}, {s}, {s});
        // oracle: d o h = s * s = s^2 = pi_K, h o h lands in zero degrees
        CHECK((s * s) == PolyMatrix<Rationals>::scalar(f, 1, tower.pi()));
        CHECK(validate(m).ok());
    }

    SECTION("(d = s^2, h1 = h2 = 1) is valid") {
        auto m = make_two(tower, GradedFree(0, {1, 1}), {scalar1(f, {0, 0, 1})}, {scalar1(f, {1})}, {scalar1(f, {1})});
        CHECK(validate(m).ok());
    }

    SECTION("a nonzero module concentrated in a single degree never validates") {
        for (int deg = -2; deg <= 2; ++deg) {
            auto m = make_one(tower, GradedFree(deg, {2}), {}, {});
            auto rep = validate(m);
            CHECK_FALSE(rep.ok());
        }
        gen::Rng rng(3);
        PrimeField f5(5);
        RingTower<PrimeField> t5(f5, 1 + rng.index(3), f5.one());
        auto m = make_two(t5, GradedFree(0, {1 + rng.index(3)}), {}, {}, {});
        CHECK_FALSE(validate(m).ok());
    }

    SECTION("the report names every violated identity with its degree") {
        auto z = scalar1(f, {0});
        auto m = make_one(tower, GradedFree(0, {1, 1}), {scalar1(f, {0, 1})}, {z});
        auto rep = validate(m);
        REQUIRE_FALSE(rep.ok());
        bool found = false;
        for (const auto& v : rep.violations) found = found || v.rule.find("[d,h]") != std::string::npos;
        CHECK(found);
    }
}

TEST_CASE("cohomology of small complexes") {
    Rationals f;
    auto m = basic_singular(f);

    SECTION("(k[s] --s--> k[s]): H^0 = 0, H^1 = k[s]/(s)") {
        // oracle: ker(s) = 0 and coker(s) = k[s]/(s) by hand
        auto table = cohomology(m);
        CHECK(table.at(0).is_zero());
        CHECK(table.at(1).free_rank == 0);
        REQUIRE(table.at(1).torsion.size() == 1);
        CHECK(table.at(1).torsion[0] == P(f, {0, 1}));
    }

    SECTION("identity differential is acyclic") {
        RingTower<Rationals> t1(f, 1, f.one());
        auto u = make_one(t1, GradedFree(0, {1, 1}), {scalar1(f, {1})}, {scalar1(f, {0, 1})});
        CHECK(cohomology(u).is_zero());
    }

    SECTION("zero differential in one degree gives a free group") {
        RingTower<Rationals> t(f, 2, f.one());
        // not a valid module (validity is not required for cohomology)
        KoszulModule<Rationals, 1> raw{t, GradedFree(0, {3}), {}, {}};
        auto table = cohomology(raw);
        CHECK(table.at(0).free_rank == 3);
        CHECK(table.at(0).torsion.empty());
    }
}

TEST_CASE("shift conventions") {
    PrimeField f(5);
    gen::Rng rng(41);
    RingTower<PrimeField> tower(f, 2, f.one());
    auto m = gen::rand_one_module(tower, rng, 3, 2);

    CHECK(shift(m, 0) == m);
    CHECK(shift(shift(m, 1), 1) == shift(m, 2));
    CHECK(shift(m, 2).d == m.d);  // signs square away
    CHECK(is_valid(shift(m, 1)));
    CHECK(is_valid(shift(m, -3)));

    auto table = cohomology(m);
    for (int k = -2; k <= 2; ++k) {
        auto shifted = cohomology(shift(m, k));
        for (int deg = table.min_degree - 3; deg <= table.min_degree + 6; ++deg)
            CHECK(shifted.at(deg) == table.at(deg + k));
    }
}

TEST_CASE("cones") {
    Rationals f;
    auto e = basic_singular(f);

    SECTION("cone of the identity is homotopy-trivial") {
        auto tri = cone(identity_morphism(e));
        REQUIRE(is_valid(tri.cone));
        auto witness = is_null_homotopic(identity_morphism(tri.cone));
        REQUIRE(witness.has_value());
        CHECK(hom_differential(*witness) == identity_morphism(tri.cone));
    }

    SECTION("cone over the zero object is the target") {
        auto zero = OneHomotopyModule<Rationals>::zero(e.tower);
        auto tri = cone(zero_morphism(zero, e));
        CHECK(tri.cone == e);
    }

    SECTION("triangle maps compose to zero and are chain maps") {
        gen::Rng rng(91);
        PrimeField f5(5);
        RingTower<PrimeField> tower(f5, 2, f5.one());
        for (int i = 0; i < 10; ++i) {
            auto a = gen::rand_one_module(tower, rng, 2, 2);
            auto b = gen::rand_one_module(tower, rng, 2, 2);
            auto phi = gen::rand_chain_map(a, b, rng);
            auto tri = cone(phi);
            REQUIRE(is_valid(tri.cone));
            REQUIRE(is_chain_map(tri.inclusion));
            REQUIRE(is_chain_map(tri.projection));
            auto composite = compose(tri.projection, tri.inclusion);
            for (const auto& comp : composite.comps) CHECK(comp.is_zero());
        }
    }

    SECTION("cone rejects non-chain-maps") {
        auto bad = scale(identity_morphism(e), P(f, {0, 1}));  // s * id is not h-equivariant? it is; break d instead
        // s*id IS a chain map; use a raw non-commuting component
        auto raw = zero_morphism(e, e);
        raw.comps[0] = scalar1(f, {1});
        CHECK_THROWS_AS(cone(raw), NotChainMap);
        CHECK(is_chain_map(bad));  // scalar multiples stay chain maps
    }
}

TEST_CASE("quasi-isomorphism detection") {
    Rationals f;
    auto e = basic_singular(f);

    CHECK(is_quasi_iso(identity_morphism(e)));
    CHECK_FALSE(is_quasi_iso(zero_morphism(OneHomotopyModule<Rationals>::zero(e.tower), e)));

    // strict isomorphisms perturbed by boundaries stay quasi-isomorphisms,
    // and the homotopy-category inverse certifies them (cross-oracle)
    gen::Rng rng(57);
    PrimeField f5(5);
    RingTower<PrimeField> tower(f5, 2, f5.one());
    for (int i = 0; i < 8; ++i) {
        auto m = gen::rand_one_module(tower, rng, 2, 2);
        auto hc = hom_complex(m, m, -1, 0);
        auto iso = identity_morphism(m);
        DgMorphism<PrimeField, 1> xi = zero_morphism(m, m, -1);
        if (hc.term(-1).dim() > 0) {
            auto col = hc.term(-1).basis.col(rng.index(hc.term(-1).dim()));
            xi = from_ambient(m, m, hc.term(-1), col);
        }
        auto phi = add(iso, hom_differential(xi));
        REQUIRE(is_chain_map(phi));
        CHECK(is_quasi_iso(phi));
        auto back = is_null_homotopic(subtract(compose(identity_morphism(m), phi), identity_morphism(m)));
        CHECK(back.has_value());
    }
}

TEST_CASE("null-homotopy decisions") {
    Rationals f;
    auto e = basic_singular(f);

    SECTION("the zero map bounds") {
        auto w = is_null_homotopic(zero_morphism(e, e));
        REQUIRE(w.has_value());
    }

    SECTION("the identity of a non-acyclic module does not bound") {
        CHECK_FALSE(is_null_homotopic(identity_morphism(e)).has_value());
    }

    SECTION("pi_K * id bounds, with the homotopy h as one witness") {
        auto phi = scale(identity_morphism(e), e.tower.pi());
        auto w = is_null_homotopic(phi);
        REQUIRE(w.has_value());
        CHECK(hom_differential(*w) == phi);
        // xi = h satisfies d xi + xi d = [d,h] = pi_K * id on the nose
        DgMorphism<Rationals, 1> h_as_map{e, e, -1, {e.h_at(0), e.h_at(1)}};
        CHECK(validate_morphism(h_as_map).ok());
        CHECK(hom_differential(h_as_map) == phi);
    }
}

TEST_CASE("hom complexes") {
    Rationals f;
    auto e = basic_singular(f);

    SECTION("Hom(E, E) contains the identity as a degree-0 cocycle") {
        auto hc = hom_complex(e, e, 0, 1);
        auto coords = solve_linear(hc.term(0).basis, ambient_vector(hc.term(0), identity_morphism(e)));
        REQUIRE(coords.has_value());
        CHECK((hc.diff(0) * *coords).is_zero());
    }

    SECTION("Hom(0, F) is the zero complex") {
        auto hc = hom_complex(OneHomotopyModule<Rationals>::zero(e.tower), e);
        CHECK(hc.terms.empty());
    }

    SECTION("H^0(End E) for the basic singular object is k[s]/(s)") {
        // oracle, by hand: a degree-0 element is a pair (f0, f1) with
        // s f0 = s f1, i.e. f0 = f1; a degree -1 element is a single entry g
        // with differential d(g) = (s g, s g).  Hence H^0 = k[s]/(s).
        auto classes = homotopy_classes(e, e);
        CHECK(classes.free_rank == 0);
        REQUIRE(classes.torsion.size() == 1);
        CHECK(classes.torsion[0] == P(f, {0, 1}));

        // the same by the generic cohomology of the hom complex
        auto hc = hom_complex(e, e);
        CHECK(hc.term(0).dim() == 1);
        CHECK(hc.term(-1).dim() == 1);
        CHECK(hc.term(1).dim() == 0);
        CHECK(hom_cohomology_at(hc, 0) == classes);
    }

    SECTION("the differential squares to zero on random pairs") {
        gen::Rng rng(83);
        PrimeField f5(5);
        RingTower<PrimeField> tower(f5, 2, f5.one());
        int checked = 0;
        for (int i = 0; i < 200; ++i) {
            auto a = gen::rand_one_module(tower, rng, 2 + static_cast<int>(rng.index(3)), 3);
            auto b = gen::rand_one_module(tower, rng, 2 + static_cast<int>(rng.index(3)), 3);
            auto hc = hom_complex(a, b);  // construction verifies closure and d^2 = 0
            for (size_t k = 0; k + 1 < hc.diffs.size(); ++k) {
                REQUIRE((hc.diffs[k + 1] * hc.diffs[k]).is_zero());
                ++checked;
            }
        }
        CHECK(checked > 200);
    }

    SECTION("the equivariance sign is forced: unsigned transcription breaks closure") {
        // over the Koszul algebra itself (three degrees), the differential of
        // an unsigned-equivariant element need not be unsigned-equivariant;
        // the engine's signed convention is closed (checked at construction).
        PrimeField f5(5);
        RingTower<PrimeField> tower(f5, 1, f5.one());
        auto pi = scalar1(f5, {0, 1});
        // the Koszul dg algebra K(O_L, (pi,pi)) as a one-homotopy module via h1
        auto d_bottom = M(f5, {{{0, -1}}, {{0, 1}}});   // h1h2 -> (h1, h2)
        auto d_top = M(f5, {{{0, 1}, {0, 1}}});          // (h1, h2) -> 1
        auto h_bottom = M(f5, {{{0}, {1}}});             // (h1, h2) -> h1h2
        auto h_top = M(f5, {{{1}}, {{0}}});              // 1 -> (h1, h2)
        auto k2 = make_one(tower, GradedFree(-2, {1, 2, 1}), {d_bottom, d_top}, {h_bottom, h_top});
        REQUIRE(is_valid(k2));
        // q-parameter morphism: unsigned- and signed-equivariant by accident
        auto q = zero_morphism(k2, k2, 0);
        q.comps[1] = M(f5, {{{0}, {1}}, {{0}, {0}}});
        REQUIRE(validate_morphism(q).ok());
        auto dq = hom_differential(q);
        REQUIRE(validate_morphism(dq).ok());  // signed convention: closed
        // unsigned check of dq fails: phi^j h = h phi^{j+1} does not hold
        bool unsigned_ok = true;
        for (int j = -3; j <= 0; ++j)
            unsigned_ok = unsigned_ok && (dq.comp_at(j) * k2.h_at(j + 1) - k2.h_at(j + 1 + 1) * dq.comp_at(j + 1)).is_zero();
        CHECK_FALSE(unsigned_ok);
    }
}

TEST_CASE("direct sums") {
    PrimeField f(5);
    gen::Rng rng(97);
    RingTower<PrimeField> tower(f, 2, f.one());
    auto m = gen::rand_one_module(tower, rng, 3, 2);
    auto n = gen::rand_one_module(tower, rng, 2, 2);

    CHECK(direct_sum(m, OneHomotopyModule<PrimeField>::zero(tower)) == m);
    CHECK(direct_sum(OneHomotopyModule<PrimeField>::zero(tower), m) == m);

    auto sum = direct_sum(m, n);
    REQUIRE(is_valid(sum));
    auto hm = cohomology(m), hn = cohomology(n), hs = cohomology(sum);
    for (int deg = sum.shape.min_degree - 1; deg <= sum.shape.top_degree() + 1; ++deg)
        CHECK(hs.at(deg).length() == hm.at(deg).length() + hn.at(deg).length());

    RingTower<PrimeField> other(f, 3, f.one());
    auto foreign = gen::rand_one_module(other, rng, 2, 1);
    CHECK_THROWS_AS(direct_sum(m, foreign), TowerMismatch);
}

TEST_CASE("two-term structure is forced") {
    // d is injective on valid two-term one-homotopy modules
    gen::Rng rng(101);
    PrimeField f(5);
    for (int i = 0; i < 40; ++i) {
        RingTower<PrimeField> tower(f, 1 + rng.index(3), f.one());
        auto m = gen::rand_one_module(tower, rng, 2, 3);
        if (m.shape.num_degrees() != 2) continue;
        auto d = m.d_at(m.shape.min_degree);
        CHECK(rank(d) == d.cols());
    }
}
