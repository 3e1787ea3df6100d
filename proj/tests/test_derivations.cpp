#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "filippov/algebra.hpp"
#include "filippov/derivations.hpp"
#include "filippov/linalg.hpp"

#include "exhaustive_oracle.hpp"

using namespace filippov;
using filippov::testing::exhaustive_nary_system;

namespace {

Rational R(long long n, long long d = 1) { return Rational(n, d); }

Matrix random_combination(std::mt19937_64& rng, const std::vector<Matrix>& basis) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Matrix out(basis.front().rows(), basis.front().cols());
    for (const auto& b : basis)
        out += b * Rational(coeff(rng));
    return out;
}

DerivationTuple random_tuple_combination(std::mt19937_64& rng, const std::vector<DerivationTuple>& basis) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    DerivationTuple out = DerivationTuple::zero(basis.front().dim(), basis.front().arity());
    for (const auto& t : basis) {
        const Rational c(num(rng), den(rng));
        out.head += t.head * c;
        for (std::size_t i = 0; i < t.tail.size(); ++i)
            out.tail[i] += t.tail[i] * c;
    }
    return out;
}

std::vector<Matrix> flatten_all(const std::vector<DerivationTuple>& ts) {
    std::vector<Matrix> out;
    out.reserve(ts.size());
    for (const auto& t : ts)
        out.push_back(t.flattened());
    return out;
}

} // namespace

TEST_CASE("canonical constraint tuples") {
    SECTION("A_3: three increasing plus three repeats") {
        auto tuples = canonical_tuples(NaryAlgebra::simple(2));
        CHECK(tuples.size() == 6);
    }
    SECTION("A_4: 4 increasing + 12 single-repeat") {
        auto tuples = canonical_tuples(NaryAlgebra::simple(3));
        CHECK(tuples.size() == 16);
        for (const auto& t : tuples)
            CHECK(std::is_sorted(t.begin(), t.end()));
    }
    SECTION("matches direct enumeration: sorted tuples that are increasing or single-repeat") {
        auto alg = NaryAlgebra::simple(3);
        const int n = alg.arity();
        const int d = static_cast<int>(alg.dim());
        std::set<std::vector<int>> expected;
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        while (true) {
            std::vector<int> sorted = idx;
            std::sort(sorted.begin(), sorted.end());
            int max_run = 1, run = 1, pairs = 0;
            for (std::size_t i = 1; i < sorted.size(); ++i) {
                if (sorted[i] == sorted[i - 1])
                    ++run;
                else
                    run = 1;
                max_run = std::max(max_run, run);
                if (sorted[i] == sorted[i - 1] && (i < 2 || sorted[i] != sorted[i - 2]))
                    ++pairs;
            }
            if (max_run <= 2 && pairs <= 1)
                expected.insert(sorted);
            int p = n - 1;
            while (p >= 0 && idx[static_cast<std::size_t>(p)] == d - 1)
                idx[static_cast<std::size_t>(p--)] = 0;
            if (p < 0)
                break;
            ++idx[static_cast<std::size_t>(p)];
        }
        auto got = canonical_tuples(alg);
        CHECK(std::set<std::vector<int>>(got.begin(), got.end()) == expected);
    }
}

TEST_CASE("derivation space dimensions (brute-force oracle values)") {
    // frozen from the exhaustive all-orderings nullspace over Q
    SECTION("simple algebras") {
        CHECK(solve_nary_derivations(NaryAlgebra::simple(2)).dimension() == 10);
        CHECK(solve_nary_derivations(NaryAlgebra::simple(3)).dimension() == 18);
        CHECK(solve_nary_derivations(NaryAlgebra::simple(4)).dimension() == 28);
    }
    SECTION("zero algebra: every tuple is a derivation") {
        CHECK(solve_nary_derivations(NaryAlgebra::zero(2, 2)).dimension() == 12);
    }
    SECTION("direct sum: blockwise additivity") {
        auto sum = NaryAlgebra::direct_sum({NaryAlgebra::simple(2), NaryAlgebra::simple(2)});
        CHECK(solve_nary_derivations(sum).dimension() == 20);
    }
}

TEST_CASE("solver system equals the exhaustive all-tuples system") {
    // completeness of the canonical-with-orderings constraint set: same
    // kernel dimension, and the solved basis lies in the exhaustive kernel
    for (auto alg : {NaryAlgebra::simple(2), NaryAlgebra::simple(3),
                     NaryAlgebra::direct_sum({NaryAlgebra::simple(2), NaryAlgebra::simple(2)})}) {
        auto space = solve_nary_derivations(alg);
        Matrix full = exhaustive_nary_system(alg);
        auto full_kernel = nullspace(full);
        CHECK(space.dimension() == full_kernel.size());
        std::vector<Matrix> full_flat;
        for (const auto& v : full_kernel)
            full_flat.push_back(v.transpose());
        CHECK(span_equal(full_flat, flatten_all(space.tuples)));
    }
}

TEST_CASE("solver soundness: every basis tuple re-verifies exactly") {
    for (int n = 2; n <= 4; ++n) {
        auto alg = NaryAlgebra::simple(n);
        auto space = solve_nary_derivations(alg);
        for (const auto& t : space.tuples)
            CHECK_FALSE(verify_tuple(alg, t));
    }
}

TEST_CASE("verify_tuple") {
    auto a3 = NaryAlgebra::simple(2);
    SECTION("(D, ..., D) for a classical derivation passes") {
        auto der = solve_der(a3);
        REQUIRE_FALSE(der.endos.empty());
        for (const auto& d : der.endos)
            CHECK_FALSE(verify_tuple(a3, DerivationTuple{d, {d, d}}));
    }
    SECTION("centroid tuples (sum psi_i, psi_1, ..., psi_n) pass") {
        // psi_i = alpha_i * id are centroid elements of A_{n+1}
        auto a4 = NaryAlgebra::simple(3);
        Matrix id = Matrix::identity(4);
        std::vector<Rational> alpha = {R(2), R(-1, 3), R(5)};
        Matrix head(4, 4);
        std::vector<Matrix> tail;
        for (const auto& a : alpha) {
            head += id * a;
            tail.push_back(id * a);
        }
        CHECK_FALSE(verify_tuple(a4, DerivationTuple{head, tail}));
    }
    SECTION("a non-derivation tuple fails with a witness") {
        DerivationTuple t{Matrix::identity(3),
                          {Matrix::identity(3), Matrix::identity(3)}};
        auto witness = verify_tuple(a3, t);
        REQUIRE(witness);
        CHECK(witness->lhs != witness->rhs);
    }
    SECTION("the trace obstruction: (-d^T, d, ..., d) needs trace zero") {
        Matrix d(3, 3);
        d(0, 0) = R(1);
        DerivationTuple t{-d.transpose(), {d, d}};
        CHECK(verify_tuple(a3, t));
        Matrix s(3, 3);
        s(0, 0) = R(1);
        s(1, 1) = R(-1);
        DerivationTuple ok{-s.transpose(), {s, s}};
        CHECK_FALSE(verify_tuple(a3, ok));
    }
}

TEST_CASE("tail permutation") {
    auto a4 = NaryAlgebra::simple(3);
    auto space = solve_nary_derivations(a4);
    std::mt19937_64 rng(2718281828);
    SECTION("identity permutation returns the same tuple") {
        const auto& t = space.tuples.front();
        CHECK(permute_tail(t, {0, 1, 2}) == t);
    }
    SECTION("non-bijective sigma rejected") {
        const auto& t = space.tuples.front();
        CHECK_THROWS_AS(permute_tail(t, {0, 0, 2}), std::invalid_argument);
        CHECK_THROWS_AS(permute_tail(t, {0, 1}), std::invalid_argument);
    }
    SECTION("permuted solved-space elements still verify (Proposition)") {
        std::vector<std::vector<std::size_t>> sigmas = {{1, 0, 2}, {2, 1, 0}, {1, 2, 0}};
        for (int trial = 0; trial < 12; ++trial) {
            DerivationTuple t = random_tuple_combination(rng, space.tuples);
            for (const auto& sigma : sigmas)
                CHECK_FALSE(verify_tuple(a4, permute_tail(t, sigma)));
        }
    }
    SECTION("full reversal over A_3") {
        auto a3 = NaryAlgebra::simple(2);
        auto s3 = solve_nary_derivations(a3);
        for (int trial = 0; trial < 8; ++trial) {
            DerivationTuple t = random_tuple_combination(rng, s3.tuples);
            CHECK_FALSE(verify_tuple(a3, permute_tail(t, {1, 0})));
        }
    }
}

TEST_CASE("classical derivations") {
    SECTION("dimensions n(n+1)/2") {
        CHECK(solve_der(NaryAlgebra::simple(2)).dimension() == 3);
        CHECK(solve_der(NaryAlgebra::simple(3)).dimension() == 6);
        CHECK(solve_der(NaryAlgebra::simple(4)).dimension() == 10);
    }
    SECTION("skew-symmetric maps are derivations of A_{n+1}") {
        for (int n = 2; n <= 4; ++n) {
            auto alg = NaryAlgebra::simple(n);
            auto der = solve_der(alg);
            const std::size_t d = alg.dim();
            std::vector<Matrix> skew;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = i + 1; j < d; ++j)
                    skew.push_back(Matrix::unit(d, i, j) - Matrix::unit(d, j, i));
            for (const auto& s : skew)
                CHECK_FALSE(verify_tuple(alg, DerivationTuple{s, std::vector<Matrix>(static_cast<std::size_t>(n), s)}));
            CHECK(span_equal(der.endos, skew));
        }
    }
    SECTION("blockwise: der of A_3 + A_3 is so_3 + so_3") {
        auto sum = NaryAlgebra::direct_sum({NaryAlgebra::simple(2), NaryAlgebra::simple(2)});
        CHECK(solve_der(sum).dimension() == 6);
    }
}

TEST_CASE("delta-derivations") {
    auto a4 = NaryAlgebra::simple(3);
    SECTION("delta = 1 spans exactly the derivations") {
        auto der = solve_der(a4);
        auto d1 = solve_delta_der(a4, R(1));
        CHECK(span_equal(der.endos, d1.endos));
    }
    SECTION("delta = 1/n contains the identity map") {
        for (int n = 2; n <= 4; ++n) {
            auto alg = NaryAlgebra::simple(n);
            auto space = solve_delta_der(alg, R(1, n));
            CHECK(space.dimension() == 1);
            CHECK(span_contains(space.endos, {Matrix::identity(alg.dim())}));
        }
    }
    SECTION("frozen sweep dimensions on A_3 and A_4") {
        auto a3 = NaryAlgebra::simple(2);
        CHECK(solve_delta_der(a3, R(2)).dimension() == 0);
        CHECK(solve_delta_der(a3, R(-1)).dimension() == 5);
        CHECK(solve_delta_der(a4, R(-1)).dimension() == 9);
        CHECK(solve_delta_der(a4, R(1, 2)).dimension() == 0);
    }
    SECTION("(-1)-derivations of A_3 are the traceless symmetric maps") {
        auto a3 = NaryAlgebra::simple(2);
        auto space = solve_delta_der(a3, R(-1));
        std::vector<Matrix> sym;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                sym.push_back(Matrix::unit(3, i, j) + Matrix::unit(3, j, i));
        sym.push_back(Matrix::unit(3, 0, 0) - Matrix::unit(3, 1, 1));
        sym.push_back(Matrix::unit(3, 1, 1) - Matrix::unit(3, 2, 2));
        CHECK(span_equal(space.endos, sym));
    }
}

TEST_CASE("centroid") {
    SECTION("simple algebras have scalar centroid") {
        for (int n = 2; n <= 4; ++n) {
            auto alg = NaryAlgebra::simple(n);
            auto c = solve_centroid(alg);
            CHECK(c.dimension() == 1);
            CHECK(span_equal(c.endos, {Matrix::identity(alg.dim())}));
        }
    }
    SECTION("direct sums have blockwise scalar centroid") {
        auto sum = NaryAlgebra::direct_sum({NaryAlgebra::simple(2), NaryAlgebra::simple(2)});
        CHECK(solve_centroid(sum).dimension() == 2);
    }
    SECTION("zero algebra: all of End") {
        CHECK(solve_centroid(NaryAlgebra::zero(2, 3)).dimension() == 9);
    }
}

TEST_CASE("quasi-derivations") {
    SECTION("pair space of A_3 has dimension 9, heads are all of End") {
        auto a3 = NaryAlgebra::simple(2);
        auto q = solve_qder(a3);
        CHECK(q.dimension() == 9);
        CHECK(head_projection(q, 3).size() == 9);
    }
    SECTION("head projection is End(A) for simple algebras") {
        for (int n = 2; n <= 4; ++n) {
            auto alg = NaryAlgebra::simple(n);
            auto q = solve_qder(alg);
            const std::size_t d = alg.dim();
            CHECK(q.dimension() == d * d);
            CHECK(head_projection(q, d).size() == d * d);
        }
    }
    SECTION("the common tail is determined by the head on A_3") {
        // zero head forces zero tail: dim of {(0, f)} solutions is 0
        auto a3 = NaryAlgebra::simple(2);
        auto q = solve_qder(a3);
        std::vector<Matrix> heads;
        for (const auto& t : q.tuples)
            heads.push_back(t.head);
        CHECK(span_rank(heads) == q.dimension());
    }
    SECTION("zero tuple belongs") {
        auto a3 = NaryAlgebra::simple(2);
        CHECK_FALSE(verify_tuple(a3, DerivationTuple::zero(3, 2)));
    }
}

TEST_CASE("generalized derivations") {
    SECTION("simple: GDer = End") {
        for (int n = 2; n <= 4; ++n) {
            auto alg = NaryAlgebra::simple(n);
            CHECK(solve_gder(alg).dimension() == alg.dim() * alg.dim());
        }
    }
    SECTION("semisimple: GDer is the blockwise End, strictly below End") {
        auto sum = NaryAlgebra::direct_sum({NaryAlgebra::simple(3), NaryAlgebra::simple(3)});
        auto g = solve_gder(sum);
        CHECK(g.dimension() == 32);
        CHECK(g.dimension() < sum.dim() * sum.dim());
    }
    SECTION("zero algebra: End") {
        CHECK(solve_gder(NaryAlgebra::zero(2, 2)).dimension() == 4);
    }
}

TEST_CASE("chain report") {
    SECTION("simple A_4") {
        auto rep = chain_report(NaryAlgebra::simple(3));
        CHECK(rep.dim_der == 6);
        CHECK(rep.dim_qder_heads == 16);
        CHECK(rep.dim_gder == 16);
        CHECK(rep.dim_end == 16);
        CHECK(rep.der_inside_qder_heads);
        CHECK(rep.qder_heads_equal_gder);
        CHECK(rep.gder_equals_end);
        CHECK(rep.featured_delta == R(1, 3));
        CHECK(rep.chain_line == "Der ⊂ Der_{1/3} ⊂ QDer = GDer = End");
        // the 1/n member strictly exceeds Der; all members embed in QDer heads
        for (const auto& row : rep.deltas) {
            CHECK(row.member_inside_qder_heads);
            if (row.delta == R(1, 3)) {
                CHECK(row.dim_kernel == 1);
                CHECK(row.dim_member == 7);
            }
        }
    }
    SECTION("semisimple ends strictly below End") {
        auto sum = NaryAlgebra::direct_sum({NaryAlgebra::simple(3), NaryAlgebra::simple(3)});
        auto rep = chain_report(sum);
        CHECK(rep.dim_gder == 32);
        CHECK(rep.dim_end == 64);
        CHECK(rep.qder_heads_equal_gder);
        CHECK_FALSE(rep.gder_equals_end);
        CHECK(rep.chain_line == "Der ⊂ Der_{1/3} ⊂ QDer = GDer ⊂ End");
    }
    SECTION("zero algebra: everything equals End") {
        auto rep = chain_report(NaryAlgebra::zero(2, 2));
        CHECK(rep.dim_der == 4);
        CHECK(rep.dim_qder_heads == 4);
        CHECK(rep.dim_gder == 4);
        CHECK(rep.dim_end == 4);
        CHECK(rep.chain_line == "Der = Der_{1/2} = QDer = GDer = End");
    }
    SECTION("monotonicity along the chain") {
        for (auto alg : {NaryAlgebra::simple(2), NaryAlgebra::simple(3),
                         NaryAlgebra::direct_sum({NaryAlgebra::simple(2), NaryAlgebra::simple(2)})}) {
            auto rep = chain_report(alg);
            std::size_t member_max = rep.dim_der;
            for (const auto& row : rep.deltas)
                member_max = std::max(member_max, row.dim_member);
            CHECK(rep.dim_der <= member_max);
            CHECK(member_max <= rep.dim_qder_heads);
            CHECK(rep.dim_qder_heads <= rep.dim_gder);
            CHECK(rep.dim_gder <= rep.dim_end);
        }
    }
}
