#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace kmf;
using namespace kmf_test;

TEST_CASE("perfectness decisions") {
    Rationals f;

    CHECK(is_perfect(basic_perfect(f)));
    CHECK_FALSE(is_perfect(basic_singular(f)));
    RingTower<Rationals> tower(f, 2, f.one());
    CHECK(is_perfect(OneHomotopyModule<Rationals>::zero(tower)));
}

TEST_CASE("over the unramified tower everything is perfect") {
    PrimeField f(5);
    RingTower<PrimeField> tower(f, 1, f.one());
    gen::Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        auto m = gen::rand_one_module(tower, rng, 2 + static_cast<int>(rng.index(2)), 2);
        CHECK(is_perfect(m));
    }
}

TEST_CASE("perfectness is closed under cones, shifts and sums") {
    PrimeField f(5);
    RingTower<PrimeField> tower(f, 2, f.one());
    gen::Rng rng(7);
    auto rand_perfect = [&](gen::Rng& r) {
        // sums of trivial rank-1 factorizations, conjugated
        auto out = OneHomotopyModule<PrimeField>::zero(tower);
        int blocks = 1 + static_cast<int>(r.index(2));
        for (int b = 0; b < blocks; ++b) {
            long a = r.flip() ? 0 : tower.e;
            auto d = PolyMatrix<PrimeField>::scalar(f, 1, Poly<PrimeField>::monomial(f, f.one(), static_cast<int>(a)));
            auto h = PolyMatrix<PrimeField>::scalar(
                f, 1, Poly<PrimeField>::monomial(f, f.one(), static_cast<int>(tower.e - a)));
            out = direct_sum(out, make_one(tower, GradedFree(static_cast<int>(r.index(2)), {1, 1}), {d}, {h}));
        }
        return gen::conjugate(out, r);
    };
    for (int i = 0; i < 10; ++i) {
        auto m = rand_perfect(rng);
        auto n = rand_perfect(rng);
        REQUIRE(is_perfect(m));
        CHECK(is_perfect(shift(m, 1)));
        CHECK(is_perfect(direct_sum(m, n)));
        auto phi = gen::rand_chain_map(m, n, rng);
        CHECK(is_perfect(cone(phi).cone));
    }
}

TEST_CASE("relative kernel membership") {
    Rationals f;
    RingTower<Rationals> tower(f, 2, f.one());

    CHECK(in_relative_kernel(TwoHomotopyModule<Rationals>::zero(tower)));
    CHECK_FALSE(in_relative_kernel(diagonal_pushforward(basic_singular(f))));
    CHECK(in_relative_kernel(pullback_a(2, basic_singular(f))));

    // closed under cones and shifts, and contains every pullback
    PrimeField f5(5);
    RingTower<PrimeField> t5(f5, 2, f5.one());
    gen::Rng rng(11);
    for (int i = 0; i < 8; ++i) {
        auto n = gen::rand_one_module(t5, rng, 2, 2);
        auto m = pullback_a(2, n);
        REQUIRE(in_relative_kernel(m));
        CHECK(in_relative_kernel(shift(m, 1)));
        auto n2 = pullback_a(2, gen::rand_one_module(t5, rng, 2, 2));
        auto maps = chain_map_basis(m, n2);
        if (!maps.empty()) {
            auto phi = maps[rng.index(maps.size())];
            CHECK(in_relative_kernel(cone(phi).cone));
        }
    }
}

TEST_CASE("euler classes") {
    Rationals f;

    SECTION("the basic singular object has euler class -1") {
        CHECK(euler_class(basic_singular(f)) == -1);
    }

    SECTION("a module cancels against its own shift") {
        PrimeField f5(5);
        RingTower<PrimeField> t5(f5, 2, f5.one());
        gen::Rng rng(13);
        for (int i = 0; i < 10; ++i) {
            auto m = gen::rand_one_module(t5, rng, 2, 2);
            CHECK(euler_class(direct_sum(m, shift(m, 1))) == 0);
        }
    }

    SECTION("additive on cone triangles") {
        PrimeField f5(5);
        RingTower<PrimeField> t5(f5, 2, f5.one());
        gen::Rng rng(17);
        for (int i = 0; i < 10; ++i) {
            auto a = gen::rand_one_module(t5, rng, 2, 2);
            auto b = gen::rand_one_module(t5, rng, 2, 2);
            auto phi = gen::rand_chain_map(a, b, rng);
            CHECK(euler_class(cone(phi).cone) == euler_class(b) - euler_class(a));
        }
    }

    SECTION("perfect objects have euler class divisible by e") {
        PrimeField f5(5);
        gen::Rng rng(19);
        for (long e = 1; e <= 3; ++e) {
            RingTower<PrimeField> t5(f5, e, f5.one());
            for (int i = 0; i < 8; ++i) {
                // cones of maps between free two-term pieces stay perfect
                auto a = static_cast<int>(rng.index(static_cast<size_t>(e) + 1));
                bool trivial = (a == 0 || a == e);
                if (!trivial) continue;
                auto d = PolyMatrix<PrimeField>::scalar(f5, 1, Poly<PrimeField>::monomial(f5, f5.one(), a));
                auto h = PolyMatrix<PrimeField>::scalar(
                    f5, 1, Poly<PrimeField>::monomial(f5, f5.one(), static_cast<int>(e) - a));
                auto m = gen::conjugate(make_one(t5, GradedFree(0, {1, 1}), {d}, {h}), rng);
                auto n = gen::conjugate(make_one(t5, GradedFree(0, {1, 1}), {h}, {d}), rng);
                auto phi = gen::rand_chain_map(m, n, rng);
                auto c = cone(phi).cone;
                REQUIRE(is_perfect(c));
                CHECK(euler_class(c) % e == 0);
            }
        }
    }

    SECTION("a free cohomology group is a structural violation") {
        Rationals q;
        RingTower<Rationals> tower(q, 2, q.one());
        KoszulModule<Rationals, 1> raw{tower, GradedFree(0, {1}), {}, {}};  // invalid on purpose
        CHECK_THROWS_AS(euler_class(raw), StructuralViolation);
    }
}

TEST_CASE("localization diagnostics") {
    Rationals f;
    RingTower<Rationals> tower(f, 2, f.one());

    SECTION("a kernel object") {
        auto m = pullback_a(2, basic_singular(f));
        auto rep = localization_diagnostics(m, "kernel-object");
        CHECK(rep.relative_kernel_member);
        CHECK(rep.is_perfect);
        REQUIRE(rep.periodicity_verified.has_value());
        CHECK(*rep.periodicity_verified);
        CHECK(rep.object_id == "kernel-object");
        CHECK_FALSE(rep.diagnostics.empty());
    }

    SECTION("the diagonal image of the singular object is not in the kernel") {
        auto rep = localization_diagnostics(diagonal_pushforward(basic_singular(f)));
        CHECK_FALSE(rep.relative_kernel_member);
        REQUIRE(rep.periodicity_verified.has_value());
        CHECK(*rep.periodicity_verified);
        CHECK(rep.euler_class == -1);
    }

    SECTION("fields are internally consistent on random instances") {
        PrimeField f5(5);
        RingTower<PrimeField> t5(f5, 2, f5.one());
        gen::Rng rng(23);
        for (int i = 0; i < 100; ++i) {
            auto m = gen::rand_two_module(t5, rng, 2);
            auto rep = localization_diagnostics(m);
            CHECK(rep.relative_kernel_member == rep.is_perfect);
            CHECK(rep.relative_kernel_member == in_relative_kernel(m));
            CHECK(rep.euler_class == euler_class(pushforward_a(1, m)));
            REQUIRE(rep.periodicity_verified.has_value());
            CHECK(*rep.periodicity_verified);
        }
    }

    SECTION("too many degrees are refused") {
        gen::Rng rng(29);
        auto a = gen::rand_mf(tower, rng, 1);
        auto low = make_two(tower, GradedFree(0, {a.rank0(), a.rank1()}), {a.d}, {a.h}, {a.h});
        auto wide = direct_sum(low, shift(low, -2));
        CHECK_THROWS_AS(localization_diagnostics(wide), NeedsReduction);
    }
}
