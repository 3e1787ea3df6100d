#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "filippov/linalg.hpp"
#include "filippov/matrix.hpp"

using namespace filippov;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = Rational(num(rng), den(rng));
    return m;
}

} // namespace

TEST_CASE("rref on pinned examples") {
    SECTION("zero matrix") {
        Matrix z(1, 1);
        auto [red, piv] = rref(z);
        CHECK(red == z);
        CHECK(piv.empty());
    }
    SECTION("identity") {
        Matrix id = Matrix::identity(3);
        auto [red, piv] = rref(id);
        CHECK(red == id);
        CHECK(piv == std::vector<std::size_t>{0, 1, 2});
    }
    SECTION("rank-one 2x2") {
        // [[2,4],[1,2]] -> [[1,2],[0,0]], pivot column 0 (hand elimination)
        Matrix m{{R(2), R(4)}, {R(1), R(2)}};
        auto [red, piv] = rref(m);
        CHECK(red == Matrix{{R(1), R(2)}, {R(0), R(0)}});
        CHECK(piv == std::vector<std::size_t>{0});
    }
    SECTION("fractional pivots") {
        Matrix m{{R(0), R(2), R(1)}, {R(1, 2), R(1), R(0)}};
        auto [red, piv] = rref(m);
        CHECK(piv == std::vector<std::size_t>{0, 1});
        CHECK(red == Matrix{{R(1), R(0), R(-1)}, {R(0), R(1), R(1, 2)}});
    }
}

TEST_CASE("rref is idempotent and deterministic (random matrices)") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix m = random_matrix(rng, 1 + trial % 6, 1 + (trial * 7) % 5);
        auto first = rref(m);
        auto second = rref(first.reduced);
        CHECK(second.reduced == first.reduced);
        CHECK(second.pivots == first.pivots);
    }
}

TEST_CASE("nullspace on pinned examples") {
    SECTION("trivial kernel") {
        CHECK(nullspace(Matrix::identity(2)).empty());
    }
    SECTION("full kernel") {
        Matrix z(2, 3);
        auto basis = nullspace(z);
        REQUIRE(basis.size() == 3);
    }
    SECTION("one equation") {
        Matrix m{{R(1), R(1), R(0)}};
        auto basis = nullspace(m);
        REQUIRE(basis.size() == 2);
        for (const auto& v : basis)
            CHECK((m * v).is_zero());
    }
}

TEST_CASE("rank-nullity and exact kernel membership (random matrices)") {
    std::mt19937_64 rng(987654321);
    for (int trial = 0; trial < 25; ++trial) {
        Matrix m = random_matrix(rng, 1 + trial % 7, 1 + (trial * 3) % 8);
        auto basis = nullspace(m);
        CHECK(rank(m) + basis.size() == m.cols());
        for (const auto& v : basis)
            CHECK((m * v).is_zero());
    }
}

TEST_CASE("solve") {
    SECTION("identity system returns b") {
        Matrix b{{R(3)}, {R(-7, 2)}};
        auto x = solve(Matrix::identity(2), b);
        REQUIRE(x);
        CHECK(*x == b);
    }
    SECTION("underdetermined: any valid solution, checked by substitution") {
        Matrix m{{R(1), R(1)}};
        Matrix b{{R(2)}};
        auto x = solve(m, b);
        REQUIRE(x);
        CHECK(m * *x == b);
    }
    SECTION("inconsistent") {
        Matrix m{{R(0)}};
        Matrix b{{R(1)}};
        CHECK_FALSE(solve(m, b));
    }
    SECTION("dimension mismatch is a contract violation") {
        CHECK_THROWS_AS(solve(Matrix::identity(2), Matrix(3, 1)), std::invalid_argument);
    }
    SECTION("multi-column right-hand side") {
        std::mt19937_64 rng(11);
        Matrix m = random_matrix(rng, 4, 5);
        Matrix b(4, 3);
        Matrix xs = random_matrix(rng, 5, 3);
        b = m * xs;
        auto x = solve(m, b);
        REQUIRE(x);
        CHECK(m * *x == b);
    }
}

TEST_CASE("span utilities") {
    Matrix e12 = Matrix::unit(2, 0, 1);
    Matrix e21 = Matrix::unit(2, 1, 0);
    Matrix sym = e12 + e21;
    CHECK(span_rank({e12, e21}) == 2);
    CHECK(span_contains({e12, e21}, {sym}));
    CHECK_FALSE(span_contains({e12}, {sym}));
    CHECK(span_equal({e12, e21}, {sym, e12 - e21}));

    auto basis = span_basis({sym, e12, e12 + sym}, 2, 2);
    CHECK(basis.size() == 2);
    CHECK(span_equal(basis, {e12, e21}));
}

TEST_CASE("echelon span accumulator agrees with rank") {
    std::mt19937_64 rng(5150);
    EchelonSpan span(9);
    std::vector<Matrix> seen;
    for (int i = 0; i < 12; ++i) {
        Matrix m = random_matrix(rng, 3, 3);
        const std::size_t before = span_rank(seen);
        seen.push_back(m);
        const std::size_t after = span_rank(seen);
        CHECK(span.insert(m) == (after > before));
        CHECK(span.rank() == after);
    }
    for (const auto& m : seen)
        CHECK(span.contains(m));
}
