#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/derivations.hpp"
#include "filippov/linalg.hpp"
#include "filippov/matrix.hpp"

namespace filippov {

class TupleVerificationError : public std::runtime_error {
public:
    explicit TupleVerificationError(TupleWitness w)
        : std::runtime_error(describe(w)), witness(std::move(w)) {}

    TupleWitness witness;

private:
    static std::string describe(const TupleWitness& w) {
        std::string args;
        for (std::size_t i = 0; i < w.args.size(); ++i)
            args += (i ? "," : "") + std::to_string(w.args[i] + 1);
        return "tuple fails the defining identity on basis arguments (" + args + ")";
    }
};

class DecomposeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tuple (f_0 with matrix A, n copies of f with matrix -A^T); a derivation
/// of A_{n+1} for every zero-diagonal A.
inline DerivationTuple lemma1_tuple(const NaryAlgebra& alg, const Matrix& a) {
    if (!a.is_square() || a.rows() != alg.dim())
        throw std::invalid_argument("lemma1_tuple: matrix size differs from algebra dimension");
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!a(i, i).is_zero())
            throw std::invalid_argument("lemma1_tuple: matrix must have zero diagonal");
    return {a, std::vector<Matrix>(static_cast<std::size_t>(alg.arity()), -a.transpose())};
}

/// The unique common tail completing a diagonal head to a quasi-derivation
/// of A_{n+1}: f^i = (1/n) * sum_j f_0^j - f_0^i.
inline Matrix qder_tail_from_head(const NaryAlgebra& alg, const Matrix& head) {
    if (!head.is_square() || head.rows() != alg.dim())
        throw std::invalid_argument("qder_tail_from_head: head size differs from algebra dimension");
    if (!head.is_diagonal())
        throw std::invalid_argument("qder_tail_from_head: head must be diagonal");
    const Rational avg = head.trace() * Rational(1, alg.arity());
    Matrix f(head.rows(), head.cols());
    for (std::size_t i = 0; i < head.rows(); ++i)
        f(i, i) = avg - head(i, i);
    return f;
}

/// The normal form of a derivation tuple on a simple block:
///   t = ((sum_j h_j) id, h_1 id, ..., h_n id) + (d_0, d, ..., d),  d_0 = -d^T.
struct CanonicalDecomposition {
    std::vector<Rational> h;
    Matrix d;
    Matrix d0; // always -d^T
    DerivationTuple residual;

    bool residual_zero() const { return residual.is_zero(); }
};

/// Reassembles the tuple a decomposition describes.
inline DerivationTuple reassemble(const std::vector<Rational>& h, const Matrix& d) {
    const std::size_t dim = d.rows();
    Rational hsum;
    for (const auto& x : h)
        hsum += x;
    DerivationTuple t{Matrix::identity(dim) * hsum - d.transpose(), {}};
    t.tail.reserve(h.size());
    for (const auto& hi : h)
        t.tail.push_back(Matrix::identity(dim) * hi + d);
    return t;
}

/// Computes the unique (h_1..h_n, d). Off-diagonal entries of d come from
/// f_1 (all tails share them); the diagonal of d and the h_i solve the
/// stacked diagonal constraints
///   (f_i)_kk = h_i + d_kk,   (f_0)_kk = sum_j h_j - d_kk
/// as one exact linear system. The input must verify as a derivation tuple;
/// an inconsistent diagonal system or nonzero residual would mean it is not
/// one.
inline CanonicalDecomposition decompose(const NaryAlgebra& alg, const DerivationTuple& t) {
    if (auto witness = verify_tuple(alg, t))
        throw TupleVerificationError(*witness);
    const std::size_t dim = alg.dim();
    const std::size_t n = static_cast<std::size_t>(alg.arity());

    Matrix d(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (r != c)
                d(r, c) = t.tail[0](r, c);

    // unknowns: h_1..h_n then d_11..d_dd
    const std::size_t unknowns = n + dim;
    Matrix system((n + 1) * dim, unknowns);
    Matrix rhs((n + 1) * dim, 1);
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim; ++k, ++row) {
            system(row, i) = Rational(1);
            system(row, n + k) = Rational(1);
            rhs(row, 0) = t.tail[i](k, k);
        }
    for (std::size_t k = 0; k < dim; ++k, ++row) {
        for (std::size_t j = 0; j < n; ++j)
            system(row, j) = Rational(1);
        system(row, n + k) = Rational(-1);
        rhs(row, 0) = t.head(k, k);
    }
    auto sol = solve(system, rhs);
    if (!sol)
        throw DecomposeError("decompose: inconsistent diagonal system (input is not a derivation tuple of a simple block)");

    CanonicalDecomposition out;
    out.h.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.h.push_back((*sol)(i, 0));
    for (std::size_t k = 0; k < dim; ++k)
        d(k, k) = (*sol)(n + k, 0);
    out.d = d;
    out.d0 = -d.transpose();
    out.residual = t - reassemble(out.h, out.d);
    return out;
}

struct UniquenessCertificate {
    std::size_t parameter_count = 0; // n + d^2
    std::size_t rank = 0;            // rank of the parametrization map
    bool injective = false;
};

/// Certifies that (h, d) -> ((sum h_j) id - d^T, h_1 id + d, ..., h_n id + d)
/// is injective, by a rank computation on the parametrization matrix.
inline UniquenessCertificate uniqueness_certificate(const NaryAlgebra& alg) {
    const std::size_t dim = alg.dim();
    const std::size_t d2 = dim * dim;
    const std::size_t n = static_cast<std::size_t>(alg.arity());
    const std::size_t params = n + d2;
    Matrix p((n + 1) * d2, params);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            p(k * dim + k, i) += Rational(1);                 // head diagonal
            p((i + 1) * d2 + k * dim + k, i) += Rational(1);  // tail i diagonal
        }
    }
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            const std::size_t col = n + r * dim + c;
            p(c * dim + r, col) -= Rational(1); // head = -d^T
            for (std::size_t i = 0; i < n; ++i)
                p((i + 1) * d2 + r * dim + c, col) += Rational(1);
        }
    UniquenessCertificate cert;
    cert.parameter_count = params;
    cert.rank = rank(p);
    cert.injective = cert.rank == params;
    return cert;
}

struct BlockInvarianceReport {
    struct Violation {
        std::size_t operator_index; // 0 = head, 1..n = tails
        std::size_t from_block;
        std::size_t to_block;
        std::size_t row;
        std::size_t col;
    };

    bool invariant = false;
    std::optional<Violation> violation;
    std::vector<CanonicalDecomposition> block_decompositions;
};

/// Theorem-6 check: every operator of a derivation tuple of a direct sum
/// maps each block into itself; when that holds, each block restriction is
/// decomposed per the simple normal form.
inline BlockInvarianceReport check_block_invariance(const NaryAlgebra& alg, const DerivationTuple& t) {
    if (auto witness = verify_tuple(alg, t))
        throw TupleVerificationError(*witness);
    BlockInvarianceReport rep;
    const std::size_t dim = alg.dim();
    auto scan = [&](const Matrix& op, std::size_t op_index) {
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) {
                if (op(r, c).is_zero())
                    continue;
                const std::size_t br = alg.block_of(r);
                const std::size_t bc = alg.block_of(c);
                if (br != bc && !rep.violation)
                    rep.violation = BlockInvarianceReport::Violation{op_index, bc, br, r, c};
            }
    };
    scan(t.head, 0);
    for (std::size_t i = 0; i < t.tail.size(); ++i)
        scan(t.tail[i], i + 1);
    rep.invariant = !rep.violation;
    if (!rep.invariant)
        return rep;

    for (std::size_t b = 0; b < alg.blocks().size(); ++b) {
        const std::size_t off = alg.block_offset(b);
        const std::size_t size = alg.blocks()[b];
        auto restrict_op = [&](const Matrix& op) {
            Matrix sub(size, size);
            for (std::size_t r = 0; r < size; ++r)
                for (std::size_t c = 0; c < size; ++c)
                    sub(r, c) = op(off + r, off + c);
            return sub;
        };
        DerivationTuple bt{restrict_op(t.head), {}};
        for (const auto& f : t.tail)
            bt.tail.push_back(restrict_op(f));
        rep.block_decompositions.push_back(decompose(alg.restrict_to_block(b), bt));
    }
    return rep;
}

} // namespace filippov
