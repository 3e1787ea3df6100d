#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "filippov/algebra.hpp"
#include "filippov/linalg.hpp"
#include "filippov/matrix.hpp"
#include "filippov/rational.hpp"

namespace filippov {

/// Tuple (f_0, f_1, ..., f_n) of endomorphisms; tail length = arity.
struct DerivationTuple {
    Matrix head;
    std::vector<Matrix> tail;

    std::size_t arity() const { return tail.size(); }
    std::size_t dim() const { return head.rows(); }

    bool is_zero() const {
        if (!head.is_zero())
            return false;
        return std::all_of(tail.begin(), tail.end(), [](const Matrix& m) { return m.is_zero(); });
    }

    static DerivationTuple zero(std::size_t dim, std::size_t arity) {
        return {Matrix(dim, dim), std::vector<Matrix>(arity, Matrix(dim, dim))};
    }

    friend bool operator==(const DerivationTuple& a, const DerivationTuple& b) {
        return a.head == b.head && a.tail == b.tail;
    }

    friend DerivationTuple operator-(const DerivationTuple& a, const DerivationTuple& b) {
        if (a.arity() != b.arity())
            throw std::invalid_argument("DerivationTuple: arity mismatch");
        DerivationTuple out{a.head - b.head, {}};
        out.tail.reserve(a.tail.size());
        for (std::size_t i = 0; i < a.tail.size(); ++i)
            out.tail.push_back(a.tail[i] - b.tail[i]);
        return out;
    }

    /// Flattened coordinates, head entries first, then f_1..f_n (row-major).
    Matrix flattened() const {
        const std::size_t d2 = head.rows() * head.cols();
        Matrix out(1, (tail.size() + 1) * d2);
        std::size_t at = 0;
        for (const auto& e : head.entries())
            out(0, at++) = e;
        for (const auto& t : tail)
            for (const auto& e : t.entries())
                out(0, at++) = e;
        return out;
    }
};

enum class SpaceKind { der, delta_der, centroid, nary_der, qder, gder, annihilator };

inline const char* space_kind_name(SpaceKind k) {
    switch (k) {
    case SpaceKind::der: return "der";
    case SpaceKind::delta_der: return "delta-der";
    case SpaceKind::centroid: return "centroid";
    case SpaceKind::nary_der: return "nary-der";
    case SpaceKind::qder: return "qder";
    case SpaceKind::gder: return "gder";
    case SpaceKind::annihilator: return "annihilator";
    }
    return "?";
}

/// Basis of a solved operator space. Endo-valued kinds fill `endos`,
/// tuple-valued kinds (nary-der, qder) fill `tuples`. qder additionally
/// reports the dimension of its head projection.
struct OperatorSpace {
    SpaceKind kind = SpaceKind::der;
    std::optional<Rational> delta;
    std::vector<Matrix> endos;
    std::vector<DerivationTuple> tuples;
    std::optional<std::size_t> head_projection_dim;

    std::size_t dimension() const { return endos.empty() ? tuples.size() : endos.size(); }
};

/// Constraint-generating index tuples: all strictly increasing n-tuples plus
/// all sorted n-tuples with exactly one index repeated twice and the other
/// n-2 indices distinct. Tuples with three equal indices or two repeated
/// pairs carry no information: every term of the defining identity vanishes
/// identically on them.
inline std::vector<std::vector<int>> canonical_tuples(const NaryAlgebra& alg) {
    const int n = alg.arity();
    const int d = static_cast<int>(alg.dim());
    std::vector<std::vector<int>> out;
    NaryAlgebra::for_each_increasing(d, n, [&](const std::vector<int>& t) { out.push_back(t); });
    if (n >= 2 && n - 2 <= d - 1) {
        for (int i = 0; i < d; ++i) {
            std::vector<int> others;
            for (int j = 0; j < d; ++j)
                if (j != i)
                    others.push_back(j);
            NaryAlgebra::for_each_increasing(static_cast<int>(others.size()), n - 2,
                                             [&](const std::vector<int>& pick) {
                std::vector<int> t = {i, i};
                for (int p : pick)
                    t.push_back(others[static_cast<std::size_t>(p)]);
                std::sort(t.begin(), t.end());
                out.push_back(std::move(t));
            });
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Slot orderings of the canonical tuples used when the identity's n tail
/// operators may differ: the identity on a reordered argument tuple is the
/// identity on the sorted tuple with the tails permuted, and those
/// constraints are independent unless the tails coincide.
enum class ConstraintPolicy { sorted_canonical, transpositions, full_orbit };

namespace detail {

using Arrangements = ConstraintPolicy;

inline std::vector<std::vector<int>> constraint_arrangements(const NaryAlgebra& alg,
                                                             Arrangements policy) {
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> seen;
    auto push = [&](std::vector<int> t) {
        if (seen.insert(t).second)
            out.push_back(std::move(t));
    };
    for (const auto& t : canonical_tuples(alg)) {
        switch (policy) {
        case Arrangements::sorted_canonical:
            push(t);
            break;
        case Arrangements::transpositions: {
            push(t);
            for (std::size_t a = 0; a < t.size(); ++a)
                for (std::size_t b = a + 1; b < t.size(); ++b) {
                    std::vector<int> s = t;
                    std::swap(s[a], s[b]);
                    push(std::move(s));
                }
            break;
        }
        case Arrangements::full_orbit: {
            std::vector<int> s = t;
            do {
                push(s);
            } while (std::next_permutation(s.begin(), s.end()));
            break;
        }
        }
    }
    return out;
}

/// Appends to `rows` the d scalar equations of
///   f_0[e_{t_1}..e_{t_n}] - sum_i [e_{t_1}, .., f_i(e_{t_i}), .., e_{t_n}] = 0
/// over the flattened unknowns. `slot_block(i)` maps identity slot i
/// (0 = head) to the unknown-matrix block index; blocks are d*d wide,
/// row-major. `scale` multiplies the tail sum (delta-derivations).
inline void append_identity_rows(const NaryAlgebra& alg, const std::vector<int>& t,
                                 const std::vector<std::size_t>& slot_block,
                                 std::size_t n_blocks, const Rational& scale,
                                 std::vector<std::vector<Rational>>& rows) {
    const std::size_t d = alg.dim();
    const std::size_t d2 = d * d;
    const int n = alg.arity();
    const Element v = alg.basis_product(t);
    std::vector<std::vector<Rational>> block(d, std::vector<Rational>(n_blocks * d2));
    bool any = false;
    if (!element_is_zero(v)) {
        any = true;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k)
                if (!v[k].is_zero())
                    block[r][slot_block[0] * d2 + r * d + k] += v[k];
    }
    for (int i = 0; i < n; ++i) {
        std::vector<int> replaced = t;
        for (int k = 0; k < static_cast<int>(d); ++k) {
            replaced[static_cast<std::size_t>(i)] = k;
            const Element w = alg.basis_product(replaced);
            if (element_is_zero(w))
                continue;
            any = true;
            const std::size_t col = slot_block[static_cast<std::size_t>(i) + 1] * d2 +
                                    static_cast<std::size_t>(k) * d +
                                    static_cast<std::size_t>(t[static_cast<std::size_t>(i)]);
            for (std::size_t r = 0; r < d; ++r)
                if (!w[r].is_zero())
                    block[r][col] -= scale * w[r];
        }
        replaced[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)];
    }
    if (!any)
        return;
    for (auto& row : block) {
        bool nonzero = std::any_of(row.begin(), row.end(),
                                   [](const Rational& x) { return !x.is_zero(); });
        if (nonzero)
            rows.push_back(std::move(row));
    }
}

inline Matrix rows_to_matrix(std::vector<std::vector<Rational>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    return m;
}

inline Matrix unflatten(const Matrix& v, std::size_t block, std::size_t d) {
    Matrix m(d, d);
    for (std::size_t i = 0; i < d * d; ++i)
        m.entries()[i] = v(block * d * d + i, 0);
    return m;
}

} // namespace detail

struct TupleWitness {
    std::vector<int> args; // 0-based basis indices, in evaluated order
    Element lhs;
    Element rhs;
};

/// Checks the defining identity of an (n+1)-ary derivation on every ordering
/// of every canonical tuple (the full identity, by multilinearity). Returns
/// the first violated tuple with both sides on failure.
inline std::optional<TupleWitness> verify_tuple(const NaryAlgebra& alg, const DerivationTuple& t) {
    if (t.arity() != static_cast<std::size_t>(alg.arity()))
        throw std::invalid_argument("verify_tuple: tuple arity differs from algebra");
    if (t.dim() != alg.dim())
        throw std::invalid_argument("verify_tuple: operator size differs from algebra dimension");
    const std::size_t d = alg.dim();
    const int n = alg.arity();
    for (const auto& args : detail::constraint_arrangements(alg, detail::Arrangements::full_orbit)) {
        const Element v = alg.basis_product(args);
        Element lhs(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t k = 0; k < d; ++k)
                if (!v[k].is_zero())
                    lhs[r] += t.head(r, k) * v[k];
        Element rhs(d);
        for (int i = 0; i < n; ++i) {
            std::vector<int> replaced = args;
            for (int k = 0; k < static_cast<int>(d); ++k) {
                const Rational& c = t.tail[static_cast<std::size_t>(i)](
                    static_cast<std::size_t>(k), static_cast<std::size_t>(args[static_cast<std::size_t>(i)]));
                if (c.is_zero())
                    continue;
                replaced[static_cast<std::size_t>(i)] = k;
                const Element w = alg.basis_product(replaced);
                element_add_scaled(rhs, w, c);
            }
            replaced[static_cast<std::size_t>(i)] = args[static_cast<std::size_t>(i)];
        }
        if (lhs != rhs)
            return TupleWitness{args, std::move(lhs), std::move(rhs)};
    }
    return std::nullopt;
}

/// Tail permutation (f_0, f_{sigma(1)}, ..., f_{sigma(n)}); sigma is 0-based.
inline DerivationTuple permute_tail(const DerivationTuple& t, const std::vector<std::size_t>& sigma) {
    if (sigma.size() != t.arity())
        throw std::invalid_argument("permute_tail: permutation length differs from arity");
    std::vector<bool> hit(sigma.size(), false);
    for (auto s : sigma) {
        if (s >= sigma.size() || hit[s])
            throw std::invalid_argument("permute_tail: not a bijection");
        hit[s] = true;
    }
    DerivationTuple out{t.head, {}};
    out.tail.reserve(t.tail.size());
    for (auto s : sigma)
        out.tail.push_back(t.tail[s]);
    return out;
}

/// The linear system whose kernel is the (n+1)-ary derivation space, over
/// the (n+1)*d^2 unknowns (f_0 entries first, then f_1..f_n, row-major),
/// with the constraint tuples chosen by the given policy.
inline Matrix nary_constraint_matrix(const NaryAlgebra& alg, ConstraintPolicy policy) {
    const std::size_t d2 = alg.dim() * alg.dim();
    const std::size_t n_blocks = static_cast<std::size_t>(alg.arity()) + 1;
    std::vector<std::size_t> slot_block(n_blocks);
    for (std::size_t i = 0; i < n_blocks; ++i)
        slot_block[i] = i;
    std::vector<std::vector<Rational>> rows;
    for (const auto& t : detail::constraint_arrangements(alg, policy))
        detail::append_identity_rows(alg, t, slot_block, n_blocks, Rational(1), rows);
    return detail::rows_to_matrix(rows, n_blocks * d2);
}

/// Solves for the full (n+1)-ary derivation space. The constraint system
/// uses canonical tuples with identity + transposition tail orderings; the
/// kernel is then re-verified against the full identity and the solver
/// escalates to the complete orbit system if that ever fails.
inline OperatorSpace solve_nary_derivations(const NaryAlgebra& alg) {
    const std::size_t d = alg.dim();
    const std::size_t n = static_cast<std::size_t>(alg.arity());

    auto solve_with = [&](ConstraintPolicy policy) {
        std::vector<DerivationTuple> tuples;
        for (const auto& v : nullspace(nary_constraint_matrix(alg, policy))) {
            DerivationTuple t{detail::unflatten(v, 0, d), {}};
            for (std::size_t i = 1; i <= n; ++i)
                t.tail.push_back(detail::unflatten(v, i, d));
            tuples.push_back(std::move(t));
        }
        return tuples;
    };

    auto tuples = solve_with(ConstraintPolicy::transpositions);
    bool sound = std::all_of(tuples.begin(), tuples.end(), [&](const DerivationTuple& t) {
        return !verify_tuple(alg, t);
    });
    if (!sound) {
        tuples = solve_with(ConstraintPolicy::full_orbit);
        for (const auto& t : tuples)
            if (verify_tuple(alg, t))
                throw std::logic_error("solve_nary_derivations: orbit system kernel fails re-verification");
    }

    std::vector<Matrix> flats;
    flats.reserve(tuples.size());
    for (const auto& t : tuples)
        flats.push_back(t.flattened());
    if (span_rank(flats) != tuples.size())
        throw std::logic_error("solve_nary_derivations: kernel basis not independent");

    OperatorSpace space;
    space.kind = SpaceKind::nary_der;
    space.tuples = std::move(tuples);
    return space;
}

namespace detail {

/// Shared kernel-solver for the single-unknown identities. When `centroid`
/// is true each slot contributes its own equation block (psi in one slot at
/// a time); otherwise the slots are summed and scaled by `delta`.
inline std::vector<Matrix> solve_single_endo(const NaryAlgebra& alg, const Rational& delta,
                                             bool centroid) {
    const std::size_t d = alg.dim();
    const int n = alg.arity();
    std::vector<std::vector<Rational>> rows;
    for (const auto& t : constraint_arrangements(alg, Arrangements::sorted_canonical)) {
        if (!centroid) {
            // all slots carry the same unknown: tail order is irrelevant,
            // sorted canonical tuples generate the complete system
            std::vector<std::size_t> blocks(static_cast<std::size_t>(n) + 1, 0);
            append_identity_rows(alg, t, blocks, 1, delta, rows);
        } else {
            // psi[x_1..x_n] = [x_1, .., psi(x_i), .., x_n] for each slot i:
            // assemble per slot, zeroing the other slots via a second block
            for (int slot = 0; slot < n; ++slot) {
                const Element v = alg.basis_product(t);
                std::vector<std::vector<Rational>> block(d, std::vector<Rational>(d * d));
                bool any = false;
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t k = 0; k < d; ++k)
                        if (!v[k].is_zero()) {
                            block[r][r * d + k] += v[k];
                            any = true;
                        }
                std::vector<int> replaced = t;
                for (int k = 0; k < static_cast<int>(d); ++k) {
                    replaced[static_cast<std::size_t>(slot)] = k;
                    const Element w = alg.basis_product(replaced);
                    if (element_is_zero(w))
                        continue;
                    any = true;
                    const std::size_t col = static_cast<std::size_t>(k) * d +
                                            static_cast<std::size_t>(t[static_cast<std::size_t>(slot)]);
                    for (std::size_t r = 0; r < d; ++r)
                        if (!w[r].is_zero())
                            block[r][col] -= w[r];
                }
                if (!any)
                    continue;
                for (auto& row : block)
                    if (std::any_of(row.begin(), row.end(),
                                    [](const Rational& x) { return !x.is_zero(); }))
                        rows.push_back(std::move(row));
            }
        }
    }
    Matrix system = rows_to_matrix(rows, d * d);
    std::vector<Matrix> out;
    for (const auto& v : nullspace(system)) {
        Matrix m(d, d);
        for (std::size_t i = 0; i < d * d; ++i)
            m.entries()[i] = v(i, 0);
        out.push_back(std::move(m));
    }
    if (span_rank(out) != out.size())
        throw std::logic_error("solve_single_endo: kernel basis not independent");
    return out;
}

inline void reverify_endos(const NaryAlgebra& alg, const std::vector<Matrix>& endos,
                           const Rational& delta, bool centroid, const char* what) {
    const std::size_t n = static_cast<std::size_t>(alg.arity());
    for (const auto& m : endos) {
        if (centroid) {
            // every slot condition, on every ordering of every canonical tuple
            for (const auto& args : constraint_arrangements(alg, Arrangements::full_orbit)) {
                const Element v = alg.basis_product(args);
                for (std::size_t slot = 0; slot < n; ++slot) {
                    Element lhs(alg.dim());
                    for (std::size_t r = 0; r < alg.dim(); ++r)
                        for (std::size_t k = 0; k < alg.dim(); ++k)
                            if (!v[k].is_zero())
                                lhs[r] += m(r, k) * v[k];
                    Element rhs(alg.dim());
                    std::vector<int> replaced = args;
                    for (int k = 0; k < static_cast<int>(alg.dim()); ++k) {
                        const Rational& c = m(static_cast<std::size_t>(k),
                                              static_cast<std::size_t>(args[slot]));
                        if (c.is_zero())
                            continue;
                        replaced[slot] = k;
                        element_add_scaled(rhs, alg.basis_product(replaced), c);
                    }
                    if (lhs != rhs)
                        throw std::logic_error(std::string(what) + ": kernel element fails re-verification");
                }
            }
        } else {
            DerivationTuple t{m, std::vector<Matrix>(n, m * delta)};
            if (verify_tuple(alg, t))
                throw std::logic_error(std::string(what) + ": kernel element fails re-verification");
        }
    }
}

} // namespace detail

/// Classical derivations: f_0 = f_1 = ... = f_n.
inline OperatorSpace solve_der(const NaryAlgebra& alg) {
    OperatorSpace s;
    s.kind = SpaceKind::der;
    s.endos = detail::solve_single_endo(alg, Rational(1), false);
    detail::reverify_endos(alg, s.endos, Rational(1), false, "solve_der");
    return s;
}

/// delta-derivations: phi[x_1..x_n] = delta * sum_i [x_1, .., phi(x_i), .., x_n].
inline OperatorSpace solve_delta_der(const NaryAlgebra& alg, const Rational& delta) {
    OperatorSpace s;
    s.kind = SpaceKind::delta_der;
    s.delta = delta;
    s.endos = detail::solve_single_endo(alg, delta, false);
    detail::reverify_endos(alg, s.endos, delta, false, "solve_delta_der");
    return s;
}

/// Centroid: psi[x_1..x_n] = [x_1, .., psi(x_i), .., x_n] for every slot i.
inline OperatorSpace solve_centroid(const NaryAlgebra& alg) {
    OperatorSpace s;
    s.kind = SpaceKind::centroid;
    s.endos = detail::solve_single_endo(alg, Rational(1), true);
    detail::reverify_endos(alg, s.endos, Rational(1), true, "solve_centroid");
    return s;
}

/// Canonical basis of the span of the head components of a tuple space.
inline std::vector<Matrix> head_projection(const OperatorSpace& space, std::size_t dim) {
    std::vector<Matrix> heads;
    heads.reserve(space.tuples.size());
    for (const auto& t : space.tuples)
        heads.push_back(t.head);
    return span_basis(heads, dim, dim);
}

/// Quasi-derivations: pairs (f_0, f) with common tail f in every slot.
/// Basis tuples carry n copies of the common tail.
inline OperatorSpace solve_qder(const NaryAlgebra& alg) {
    const std::size_t d = alg.dim();
    const std::size_t d2 = d * d;
    const std::size_t n = static_cast<std::size_t>(alg.arity());
    std::vector<std::size_t> slot_block(n + 1, 1);
    slot_block[0] = 0;
    std::vector<std::vector<Rational>> rows;
    for (const auto& t : detail::constraint_arrangements(alg, detail::Arrangements::sorted_canonical))
        detail::append_identity_rows(alg, t, slot_block, 2, Rational(1), rows);
    Matrix system = detail::rows_to_matrix(rows, 2 * d2);
    OperatorSpace s;
    s.kind = SpaceKind::qder;
    for (const auto& v : nullspace(system)) {
        DerivationTuple t{detail::unflatten(v, 0, d),
                          std::vector<Matrix>(n, detail::unflatten(v, 1, d))};
        if (verify_tuple(alg, t))
            throw std::logic_error("solve_qder: kernel element fails re-verification");
        s.tuples.push_back(std::move(t));
    }
    std::vector<Matrix> flats;
    flats.reserve(s.tuples.size());
    for (const auto& t : s.tuples)
        flats.push_back(t.flattened());
    if (span_rank(flats) != s.tuples.size())
        throw std::logic_error("solve_qder: kernel basis not independent");
    s.head_projection_dim = head_projection(s, d).size();
    return s;
}

/// Generalized derivations: the head projection of the (n+1)-ary derivation
/// space.
inline OperatorSpace solve_gder(const NaryAlgebra& alg) {
    OperatorSpace nary = solve_nary_derivations(alg);
    OperatorSpace s;
    s.kind = SpaceKind::gder;
    s.endos = head_projection(nary, alg.dim());
    return s;
}

inline std::vector<Rational> default_delta_sweep(int n) {
    std::vector<Rational> out = {Rational(1), Rational(1, n), Rational(-1), Rational(1, 2), Rational(2)};
    std::vector<Rational> dedup;
    for (const auto& d : out)
        if (std::find(dedup.begin(), dedup.end(), d) == dedup.end())
            dedup.push_back(d);
    return dedup;
}

/// Dimension table for the inclusion chain
///   Der <= Der_delta <= QDer <= GDer <= End.
/// For fixed delta != 1 the delta-derivation kernel need not contain Der, so
/// each chain member is the join Der + Der_delta; the fixed-delta kernel
/// dimension is reported alongside. QDer enters through its head projection.
struct ChainReport {
    struct DeltaRow {
        Rational delta;
        std::size_t dim_kernel;  // fixed-delta solution space
        std::size_t dim_member;  // dim(Der + Der_delta), the chain member
        bool member_equals_der;
        bool member_inside_qder_heads;
    };

    std::size_t dim_der = 0;
    std::vector<DeltaRow> deltas;
    std::size_t dim_qder_pairs = 0;
    std::size_t dim_qder_heads = 0;
    std::size_t dim_gder = 0;
    std::size_t dim_end = 0;
    bool der_inside_qder_heads = false;
    bool qder_heads_equal_gder = false;
    bool gder_equals_end = false;
    Rational featured_delta;
    std::string chain_line;
};

inline ChainReport chain_report(const NaryAlgebra& alg, const std::vector<Rational>& deltas) {
    const std::size_t dim = alg.dim();
    ChainReport rep;
    OperatorSpace der = solve_der(alg);
    rep.dim_der = der.dimension();
    OperatorSpace qder = solve_qder(alg);
    rep.dim_qder_pairs = qder.dimension();
    std::vector<Matrix> qheads = head_projection(qder, dim);
    rep.dim_qder_heads = qheads.size();
    OperatorSpace gder = solve_gder(alg);
    rep.dim_gder = gder.endos.size();
    rep.dim_end = dim * dim;
    rep.der_inside_qder_heads = span_contains(qheads, der.endos);
    rep.qder_heads_equal_gder = (qheads.size() == gder.endos.size()) && span_contains(gder.endos, qheads);
    rep.gder_equals_end = rep.dim_gder == rep.dim_end;

    for (const auto& delta : deltas) {
        OperatorSpace dd = solve_delta_der(alg, delta);
        std::vector<Matrix> joint = der.endos;
        joint.insert(joint.end(), dd.endos.begin(), dd.endos.end());
        ChainReport::DeltaRow row;
        row.delta = delta;
        row.dim_kernel = dd.dimension();
        row.dim_member = joint.empty() ? 0 : span_rank(joint);
        row.member_equals_der = row.dim_member == rep.dim_der;
        row.member_inside_qder_heads = span_contains(qheads, joint);
        rep.deltas.push_back(std::move(row));
    }

    // the displayed chain features the paper's distinguished delta = 1/n when
    // it is in the sweep, else the largest member
    std::size_t featured = 0;
    bool found = false;
    const Rational one_over_n(1, alg.arity());
    for (std::size_t i = 0; i < rep.deltas.size(); ++i)
        if (rep.deltas[i].delta == one_over_n) {
            featured = i;
            found = true;
            break;
        }
    if (!found)
        for (std::size_t i = 1; i < rep.deltas.size(); ++i)
            if (rep.deltas[i].dim_member > rep.deltas[featured].dim_member)
                featured = i;

    auto rel = [](std::size_t a, std::size_t b) { return a == b ? std::string(" = ") : std::string(" ⊂ "); };
    if (!rep.deltas.empty()) {
        const auto& f = rep.deltas[featured];
        rep.featured_delta = f.delta;
        rep.chain_line = "Der" + rel(rep.dim_der, f.dim_member) +
                         "Der_{" + f.delta.str() + "}" + rel(f.dim_member, rep.dim_qder_heads) +
                         "QDer" + rel(rep.dim_qder_heads, rep.dim_gder) +
                         "GDer" + rel(rep.dim_gder, rep.dim_end) + "End";
    } else {
        rep.chain_line = "Der" + rel(rep.dim_der, rep.dim_qder_heads) +
                         "QDer" + rel(rep.dim_qder_heads, rep.dim_gder) +
                         "GDer" + rel(rep.dim_gder, rep.dim_end) + "End";
    }
    return rep;
}

inline ChainReport chain_report(const NaryAlgebra& alg) {
    return chain_report(alg, default_delta_sweep(alg.arity()));
}

} // namespace filippov
