#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "test_helpers.hpp"

using namespace kmf;
using namespace kmf_test;

TEST_CASE("polynomial arithmetic over Q") {
    Rationals f;
    auto s_plus_1 = P(f, {1, 1});
    auto s_minus_1 = P(f, {-1, 1});
    CHECK(s_plus_1 * s_minus_1 == P(f, {-1, 0, 1}));  // difference of squares

    auto a = P(f, {3, 0, 2});
    CHECK(a + Poly<Rationals>::zero(f) == a);
    CHECK((a - a).is_zero());
    CHECK(a.deg() == 2);
    CHECK(Poly<Rationals>::zero(f).deg() == kNegInfDegree);
}

TEST_CASE("polynomial arithmetic over F5 matches the hand oracle") {
    PrimeField f(5);
    auto lhs = P(f, {2, 1});  // s + 2
    auto rhs = P(f, {3, 1});  // s + 3
    // hand expansion: s^2 + 5s + 6, reduced mod 5 coefficientwise
    long long c0 = (2 * 3) % 5, c1 = (2 + 3) % 5, c2 = 1;
    auto expected = P(f, {c0, c1, c2});
    CHECK(lhs * rhs == expected);
    CHECK(expected == P(f, {1, 0, 1}));
    CHECK(oracle_poly_mul(lhs, rhs) == expected);
}

TEST_CASE("random polynomials satisfy the ring axioms") {
    gen::Rng rng(2024);
    Rationals q;
    PrimeField f7(7);
    for (int i = 0; i < 200; ++i) {
        auto a = gen::rand_poly(q, rng, 4), b = gen::rand_poly(q, rng, 4), c = gen::rand_poly(q, rng, 4);
        CHECK((a + b) * c == a * c + b * c);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == oracle_poly_mul(a, b));
        auto x = gen::rand_poly(f7, rng, 4), y = gen::rand_poly(f7, rng, 4);
        CHECK(x * y == oracle_poly_mul(x, y));
        if (!y.is_zero()) {
            auto [quot, rem] = divmod(x, y);
            CHECK(quot * y + rem == x);
            CHECK(rem.deg() < y.deg());
        }
    }
}

TEST_CASE("mixed prime fields are rejected") {
    PrimeField f5(5), f7(7);
    auto a = P(f5, {1, 1});
    auto b = P(f7, {1, 1});
    CHECK_THROWS_AS(a + b, FieldMismatch);
    CHECK_THROWS_AS(a * b, FieldMismatch);
}

TEST_CASE("prime field construction validates the modulus") {
    CHECK_THROWS_AS(PrimeField(4), Error);
    CHECK_THROWS_AS(PrimeField(1), Error);
    CHECK_NOTHROW(PrimeField(2));
    CHECK_NOTHROW(PrimeField(2147483647));  // 2^31 - 1 is prime
    CHECK_THROWS_AS(PrimeField(int64_t(1) << 31), Error);
}

TEST_CASE("matrix multiplication basics") {
    Rationals f;
    auto a = M(f, {{{0, 1}, {1}}, {{0}, {0, 1}}});  // [[s, 1], [0, s]]
    CHECK(PolyMatrix<Rationals>::identity(f, 2) * a == a);
    CHECK(a * PolyMatrix<Rationals>::identity(f, 2) == a);

    auto square = a * a;
    CHECK(square == M(f, {{{0, 0, 1}, {0, 2}}, {{0}, {0, 0, 1}}}));  // [[s^2, 2s], [0, s^2]]
    CHECK(square == oracle_mat_mul(a, a));

    // empty matrices are zero objects under composition
    PolyMatrix<Rationals> empty(f, 0, 3);
    auto prod = M(f, {{{1}, {0}}, {{0}, {1}}}) * PolyMatrix<Rationals>(f, 2, 0);
    CHECK(prod.rows() == 2);
    CHECK(prod.cols() == 0);
    CHECK((empty * PolyMatrix<Rationals>(f, 3, 2)).rows() == 0);

    CHECK_THROWS_AS(a * PolyMatrix<Rationals>(f, 3, 3), DimMismatch);
}

TEST_CASE("kron and vec satisfy vec(AXB) = (B^T kron A) vec(X)") {
    gen::Rng rng(7);
    PrimeField f(5);
    for (int i = 0; i < 25; ++i) {
        auto a = gen::rand_matrix(f, rng, 2, 3, 2);
        auto x = gen::rand_matrix(f, rng, 3, 2, 2);
        auto b = gen::rand_matrix(f, rng, 2, 4, 2);
        CHECK(vec(a * x * b) == kron(b.transpose(), a) * vec(x));
    }
}

TEST_CASE("smith normal form on the worked examples") {
    Rationals f;

    SECTION("already diagonal") {
        auto a = M(f, {{{0, 1}, {0}}, {{0}, {0, 0, 1}}});  // diag(s, s^2)
        auto snf = smith_normal_form(a);
        CHECK(snf.D == a);
        CHECK(snf.rank == 2);
        CHECK(snf.U * a * snf.V == snf.D);
    }

    SECTION("triangular with divisibility correction") {
        auto a = M(f, {{{0, 1}, {0, 0, 1}}, {{0}, {0, 1}}});  // [[s, s^2], [0, s]]
        auto snf = smith_normal_form(a);
        // oracle: gcd of the entries is s, det is s^2, so D = diag(s, s)
        CHECK(oracle_entry_gcd(a) == P(f, {0, 1}));
        CHECK(det(a) == P(f, {0, 0, 1}));
        CHECK(snf.D == M(f, {{{0, 1}, {0}}, {{0}, {0, 1}}}));
        CHECK(snf.U * a * snf.V == snf.D);
        CHECK(det(snf.U).deg() == 0);
        CHECK(det(snf.V).deg() == 0);
    }

    SECTION("zero matrix") {
        PolyMatrix<Rationals> z(f, 2, 3);
        auto snf = smith_normal_form(z);
        CHECK(snf.D == z);
        CHECK(snf.rank == 0);
    }
}

TEST_CASE("smith normal form invariants on random matrices over both fields") {
    gen::Rng rng(11);
    Rationals q;
    PrimeField f5(5);
    auto battery = [&](auto field, int count) {
        for (int i = 0; i < count; ++i) {
            size_t r = rng.index(6), c = rng.index(6);
            auto a = gen::rand_matrix(field, rng, r, c, 4);
            auto snf = smith_normal_form(a);
            REQUIRE(snf.U * a * snf.V == snf.D);
            REQUIRE(det(snf.U).deg() == 0);
            REQUIRE(det(snf.V).deg() == 0);
            for (size_t t = 0; t + 1 < std::min(r, c); ++t)
                REQUIRE(divides(snf.D.at(t, t), snf.D.at(t + 1, t + 1)));
            if (snf.rank > 0) {
                // first invariant factor is the gcd of all entries
                REQUIRE(snf.D.at(0, 0) == oracle_entry_gcd(a));
            }
        }
    };
    battery(q, 60);
    battery(f5, 120);
}

TEST_CASE("solve_linear on the worked examples") {
    Rationals f;

    SECTION("divisible right-hand side") {
        auto a = scalar1(f, {0, 1});       // [s]
        auto b = scalar1(f, {0, 0, 1});    // [s^2]
        auto x = solve_linear(a, b);
        REQUIRE(x.has_value());
        CHECK(*x == scalar1(f, {0, 1}));   // unique since ker = 0
    }

    SECTION("unit not in the ideal (s)") {
        auto a = scalar1(f, {0, 1});
        CHECK_FALSE(solve_linear(a, scalar1(f, {1})).has_value());
    }

    SECTION("kernel of [s, 1]") {
        auto a = M(f, {{{0, 1}, {1}}});
        auto sol = solve_linear(a, PolyMatrix<Rationals>(f, 1, 1));
        REQUIRE(sol.has_value());
        CHECK((a * *sol).is_zero());
        auto k = kernel_basis(a);
        REQUIRE(k.cols() == 1);
        CHECK((a * k).is_zero());
        // the basis vector is (1, -s) up to a unit
        REQUIRE(k.at(0, 0).deg() == 0);
        auto c = k.at(0, 0).lead();
        CHECK(k.at(1, 0) == P(f, {0, -1}).scaled(c));
    }
}

TEST_CASE("kernel_basis on the worked examples") {
    Rationals f;
    CHECK(kernel_basis(PolyMatrix<Rationals>::identity(f, 3)).cols() == 0);
    CHECK(kernel_basis(PolyMatrix<Rationals>(f, 2, 3)) == PolyMatrix<Rationals>::identity(f, 3));

    auto a = M(f, {{{0, 1}, {-1}}});  // [s, -1]
    auto k = kernel_basis(a);
    REQUIRE(k.cols() == 1);
    CHECK((a * k).is_zero());
    REQUIRE(k.at(0, 0).deg() == 0);
    CHECK(k.at(1, 0) == P(f, {0, 1}).scaled(k.at(0, 0).lead()));  // (1, s) up to a unit
}

TEST_CASE("solver certificates on random systems") {
    gen::Rng rng(13);
    PrimeField f(5);
    for (int i = 0; i < 150; ++i) {
        size_t r = 1 + rng.index(4), c = 1 + rng.index(4);
        auto a = gen::rand_matrix(f, rng, r, c, 3);
        auto x0 = gen::rand_matrix(f, rng, c, 1, 3);
        auto x = solve_linear(a, a * x0);
        REQUIRE(x.has_value());
        REQUIRE(a * *x == a * x0);
        auto k = kernel_basis(a);
        REQUIRE((a * k).is_zero());
        REQUIRE(rank(k) == k.cols());
        REQUIRE(rank(a) + k.cols() == c);
    }
}

TEST_CASE("cokernel presentations") {
    Rationals f;

    SECTION("diag(1, s)") {
        auto pres = cokernel_presentation(M(f, {{{1}, {0}}, {{0}, {0, 1}}}));
        CHECK(pres.free_rank == 0);
        REQUIRE(pres.torsion.size() == 1);
        CHECK(pres.torsion[0] == P(f, {0, 1}));
    }

    SECTION("empty presentation matrix means a free module") {
        auto pres = cokernel_presentation(PolyMatrix<Rationals>(f, 3, 0));
        CHECK(pres.free_rank == 3);
        CHECK(pres.torsion.empty());
    }

    SECTION("row [s^2, s^3]") {
        // oracle: the SNF diagonal is gcd(s^2, s^3) = s^2
        auto a = M(f, {{{0, 0, 1}, {0, 0, 0, 1}}});
        CHECK(oracle_entry_gcd(a) == P(f, {0, 0, 1}));
        auto pres = cokernel_presentation(a);
        CHECK(pres.free_rank == 0);
        REQUIRE(pres.torsion.size() == 1);
        CHECK(pres.torsion[0] == P(f, {0, 0, 1}));
    }

    SECTION("invariant factors form a monic nonconstant divisibility chain") {
        gen::Rng rng(5);
        PrimeField f5(5);
        for (int i = 0; i < 80; ++i) {
            auto a = gen::rand_matrix(f5, rng, 1 + rng.index(4), 1 + rng.index(4), 3);
            auto pres = cokernel_presentation(a);
            for (size_t t = 0; t < pres.torsion.size(); ++t) {
                CHECK(pres.torsion[t].is_monic());
                CHECK(pres.torsion[t].deg() > 0);
                if (t + 1 < pres.torsion.size()) CHECK(divides(pres.torsion[t], pres.torsion[t + 1]));
            }
        }
    }
}

TEST_CASE("unimodular inverse") {
    gen::Rng rng(17);
    Rationals f;
    for (int i = 0; i < 20; ++i) {
        auto [p, pinv] = gen::rand_unimodular(f, rng, 3, 6, 2);
        CHECK(p * pinv == PolyMatrix<Rationals>::identity(f, 3));
        CHECK(unimodular_inverse(p) * p == PolyMatrix<Rationals>::identity(f, 3));
    }
    CHECK_THROWS_AS(unimodular_inverse(M(f, {{{0, 1}}})), InvalidObject);
}

TEST_CASE("long runs are cooperatively cancellable") {
    PrimeField f(5);
    gen::Rng rng(23);
    auto a = gen::rand_matrix(f, rng, 12, 12, 6);
    CancelToken token;
    token.cancel();
    CHECK_THROWS_AS(smith_normal_form(a, &token), OperationCancelled);

    // raised from another thread while the run is in flight
    CancelToken live;
    std::thread killer([&] { live.cancel(); });
    try {
        for (int i = 0; i < 50; ++i) smith_normal_form(a, &live);
    } catch (const OperationCancelled&) {
    }
    killer.join();
}

TEST_CASE("values are safely shareable between threads") {
    PrimeField f(5);
    gen::Rng rng(29);
    auto a = gen::rand_matrix(f, rng, 4, 4, 3);
    const auto expected = smith_normal_form(a).D;
    std::vector<std::thread> workers;
    std::atomic<int> failures{0};
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&] {
            for (int i = 0; i < 10; ++i)
                if (!(smith_normal_form(a).D == expected)) ++failures;
        });
    for (auto& w : workers) w.join();
    CHECK(failures.load() == 0);
}
