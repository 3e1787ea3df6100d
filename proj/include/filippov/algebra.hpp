#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "filippov/rational.hpp"

namespace filippov {

/// Coordinate vector over an algebra's basis.
using Element = std::vector<Rational>;

inline Element zero_element(std::size_t dim) { return Element(dim); }

inline Element basis_element(std::size_t dim, std::size_t i) {
    Element e(dim);
    e[i] = Rational(1);
    return e;
}

inline bool element_is_zero(const Element& e) {
    return std::all_of(e.begin(), e.end(), [](const Rational& x) { return x.is_zero(); });
}

inline Element& element_add_scaled(Element& acc, const Element& v, const Rational& s) {
    for (std::size_t i = 0; i < acc.size(); ++i)
        if (!v[i].is_zero())
            acc[i] += s * v[i];
    return acc;
}

/// n-ary anticommutative algebra given by structure constants on strictly
/// increasing basis-index tuples (0-based internally; 1-based in files).
/// Products of tuples with a repeated index are implicitly zero. Direct-sum
/// block sizes are carried as metadata; a plain algebra is one block.
class NaryAlgebra {
public:
    using Key = std::vector<int>;                 // strictly increasing indices
    using SparseVec = std::map<int, Rational>;    // basis index -> coefficient
    using Table = std::map<Key, SparseVec>;

    static NaryAlgebra make(int arity, std::size_t dim, std::vector<std::string> basis,
                            Table products, std::vector<std::size_t> blocks = {}) {
        if (arity < 2)
            throw std::invalid_argument("NaryAlgebra: arity must be at least 2");
        if (dim < 1)
            throw std::invalid_argument("NaryAlgebra: dimension must be at least 1");
        if (basis.empty())
            basis = default_labels(dim);
        if (basis.size() != dim)
            throw std::invalid_argument("NaryAlgebra: basis label count differs from dimension");
        if (blocks.empty())
            blocks = {dim};
        if (std::accumulate(blocks.begin(), blocks.end(), std::size_t{0}) != dim)
            throw std::invalid_argument("NaryAlgebra: block sizes do not sum to dimension");
        for (const auto& [key, value] : products) {
            if (static_cast<int>(key.size()) != arity)
                throw std::invalid_argument("NaryAlgebra: product key length differs from arity");
            for (std::size_t i = 0; i < key.size(); ++i) {
                if (key[i] < 0 || key[i] >= static_cast<int>(dim))
                    throw std::invalid_argument("NaryAlgebra: product key index out of range");
                if (i > 0 && key[i] <= key[i - 1])
                    throw std::invalid_argument("NaryAlgebra: product key not strictly increasing");
            }
            for (const auto& [idx, coeff] : value) {
                (void)coeff;
                if (idx < 0 || idx >= static_cast<int>(dim))
                    throw std::invalid_argument("NaryAlgebra: product value index out of range");
            }
        }
        NaryAlgebra a;
        a.arity_ = arity;
        a.dim_ = dim;
        a.basis_ = std::move(basis);
        a.blocks_ = std::move(blocks);
        for (auto& [key, value] : products) {
            SparseVec cleaned;
            for (const auto& [idx, coeff] : value)
                if (!coeff.is_zero())
                    cleaned.emplace(idx, coeff);
            if (!cleaned.empty())
                a.products_.emplace(key, std::move(cleaned));
        }
        return a;
    }

    /// A_{n+1}: the (n+1)-dimensional simple n-ary Filippov algebra with
    /// [e_1, ..., ^e_i, ..., e_{n+1}] = (-1)^{n+i+1} e_i.
    static NaryAlgebra simple(int n) {
        if (n < 2)
            throw std::invalid_argument("simple: arity must be at least 2");
        const std::size_t dim = static_cast<std::size_t>(n) + 1;
        Table table;
        for (int omit = 0; omit < static_cast<int>(dim); ++omit) {
            Key key;
            for (int j = 0; j < static_cast<int>(dim); ++j)
                if (j != omit)
                    key.push_back(j);
            const int one_based = omit + 1;
            const Rational sign = ((n + one_based + 1) % 2 == 0) ? Rational(1) : Rational(-1);
            table[key] = {{omit, sign}};
        }
        return make(n, dim, {}, std::move(table));
    }

    /// Zero multiplication algebra (all products vanish).
    static NaryAlgebra zero(int arity, std::size_t dim) {
        return make(arity, dim, {}, {});
    }

    /// Block algebra on the concatenated bases; cross-block products vanish.
    /// Block metadata is the concatenation of the parts' blocks.
    static NaryAlgebra direct_sum(const std::vector<NaryAlgebra>& parts) {
        if (parts.empty())
            throw std::invalid_argument("direct_sum: no parts");
        const int arity = parts.front().arity_;
        std::size_t dim = 0;
        std::vector<std::size_t> blocks;
        for (const auto& p : parts) {
            if (p.arity_ != arity)
                throw std::invalid_argument("direct_sum: mixed arities");
            dim += p.dim_;
            blocks.insert(blocks.end(), p.blocks_.begin(), p.blocks_.end());
        }
        Table table;
        int offset = 0;
        for (const auto& p : parts) {
            for (const auto& [key, value] : p.products_) {
                Key shifted = key;
                for (auto& k : shifted)
                    k += offset;
                SparseVec sv;
                for (const auto& [idx, coeff] : value)
                    sv.emplace(idx + offset, coeff);
                table.emplace(std::move(shifted), std::move(sv));
            }
            offset += static_cast<int>(p.dim_);
        }
        return make(arity, dim, {}, std::move(table), std::move(blocks));
    }

    int arity() const { return arity_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_labels() const { return basis_; }
    const Table& products() const { return products_; }
    const std::vector<std::size_t>& blocks() const { return blocks_; }

    std::size_t block_offset(std::size_t b) const {
        std::size_t off = 0;
        for (std::size_t i = 0; i < b; ++i)
            off += blocks_[i];
        return off;
    }

    std::size_t block_of(std::size_t index) const {
        std::size_t off = 0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            off += blocks_[b];
            if (index < off)
                return b;
        }
        throw std::out_of_range("block_of: index out of range");
    }

    bool has_zero_multiplication() const { return products_.empty(); }

    /// Product of basis elements in any order (signed table lookup).
    Element basis_product(const std::vector<int>& indices) const {
        if (static_cast<int>(indices.size()) != arity_)
            throw std::invalid_argument("basis_product: wrong argument count");
        for (std::size_t i = 0; i < indices.size(); ++i)
            for (std::size_t j = i + 1; j < indices.size(); ++j)
                if (indices[i] == indices[j])
                    return zero_element(dim_);
        Key sorted = indices;
        std::sort(sorted.begin(), sorted.end());
        int inversions = 0;
        for (std::size_t i = 0; i < indices.size(); ++i)
            for (std::size_t j = i + 1; j < indices.size(); ++j)
                if (indices[i] > indices[j])
                    ++inversions;
        const Rational sign = (inversions % 2 == 0) ? Rational(1) : Rational(-1);
        Element out(dim_);
        auto it = products_.find(sorted);
        if (it != products_.end())
            for (const auto& [idx, coeff] : it->second)
                out[idx] = sign * coeff;
        return out;
    }

    /// Full multilinear antisymmetric expansion.
    Element product(const std::vector<Element>& args) const {
        if (static_cast<int>(args.size()) != arity_)
            throw std::invalid_argument("product: wrong argument count");
        for (const auto& a : args)
            if (a.size() != dim_)
                throw std::invalid_argument("product: argument has wrong dimension");
        Element acc(dim_);
        std::vector<int> indices(args.size());
        expand(args, 0, Rational(1), indices, acc);
        return acc;
    }

    struct FilippovWitness {
        std::vector<int> x; // inner tuple (0-based)
        std::vector<int> y; // outer tuple (0-based), length arity-1
        Element lhs;
        Element rhs;
    };

    /// Checks the Filippov (fundamental) identity
    ///   [[x_1..x_n], y_2..y_n] = sum_i [x_1, ..., [x_i, y_2..y_n], ..., x_n]
    /// on increasing basis tuples; both sides are multilinear and alternating
    /// in the x-group and in the y-group, so these tuples suffice.
    std::optional<FilippovWitness> check_filippov() const {
        const int n = arity_;
        std::vector<int> x, y;
        std::optional<FilippovWitness> witness;
        for_each_increasing(static_cast<int>(dim_), n, [&](const std::vector<int>& xs) {
            if (witness)
                return;
            for_each_increasing_impl(static_cast<int>(dim_), n - 1, [&](const std::vector<int>& ys) {
                if (witness)
                    return;
                Element inner = basis_product(xs);
                std::vector<Element> outer_args;
                outer_args.push_back(inner);
                for (int yi : ys)
                    outer_args.push_back(basis_element(dim_, static_cast<std::size_t>(yi)));
                Element lhs = product(outer_args);
                Element rhs(dim_);
                for (int i = 0; i < n; ++i) {
                    std::vector<int> nested = {xs[static_cast<std::size_t>(i)]};
                    nested.insert(nested.end(), ys.begin(), ys.end());
                    Element replaced = basis_product(nested);
                    std::vector<Element> term_args;
                    for (int j = 0; j < n; ++j) {
                        if (j == i)
                            term_args.push_back(replaced);
                        else
                            term_args.push_back(basis_element(dim_, static_cast<std::size_t>(xs[static_cast<std::size_t>(j)])));
                    }
                    Element term = product(term_args);
                    for (std::size_t k = 0; k < dim_; ++k)
                        rhs[k] += term[k];
                }
                if (lhs != rhs)
                    witness = FilippovWitness{xs, ys, lhs, rhs};
            });
        });
        return witness;
    }

    /// Sub-algebra on one direct-sum block, reindexed from zero.
    NaryAlgebra restrict_to_block(std::size_t b) const {
        if (b >= blocks_.size())
            throw std::out_of_range("restrict_to_block: no such block");
        const int off = static_cast<int>(block_offset(b));
        const int size = static_cast<int>(blocks_[b]);
        Table table;
        for (const auto& [key, value] : products_) {
            bool inside = std::all_of(key.begin(), key.end(), [&](int k) {
                return k >= off && k < off + size;
            });
            if (!inside)
                continue;
            Key shifted = key;
            for (auto& k : shifted)
                k -= off;
            SparseVec sv;
            for (const auto& [idx, coeff] : value) {
                if (idx < off || idx >= off + size)
                    throw std::logic_error("restrict_to_block: product leaves block");
                sv.emplace(idx - off, coeff);
            }
            table.emplace(std::move(shifted), std::move(sv));
        }
        std::vector<std::string> labels(basis_.begin() + off, basis_.begin() + off + size);
        return make(arity_, static_cast<std::size_t>(size), std::move(labels), std::move(table));
    }

    template <typename Fn>
    static void for_each_increasing(int dim, int len, Fn&& fn) {
        for_each_increasing_impl(dim, len, std::forward<Fn>(fn));
    }

private:
    NaryAlgebra() = default;

    static std::vector<std::string> default_labels(std::size_t dim) {
        std::vector<std::string> out;
        out.reserve(dim);
        for (std::size_t i = 1; i <= dim; ++i)
            out.push_back("e" + std::to_string(i));
        return out;
    }

    template <typename Fn>
    static void for_each_increasing_impl(int dim, int len, Fn&& fn) {
        if (len > dim)
            return;
        std::vector<int> tuple(static_cast<std::size_t>(len));
        for (int i = 0; i < len; ++i)
            tuple[static_cast<std::size_t>(i)] = i;
        while (true) {
            fn(tuple);
            int pos = len - 1;
            while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == dim - len + pos)
                --pos;
            if (pos < 0)
                break;
            ++tuple[static_cast<std::size_t>(pos)];
            for (int j = pos + 1; j < len; ++j)
                tuple[static_cast<std::size_t>(j)] = tuple[static_cast<std::size_t>(j - 1)] + 1;
        }
    }

    void expand(const std::vector<Element>& args, std::size_t slot, const Rational& coeff,
                std::vector<int>& indices, Element& acc) const {
        if (slot == args.size()) {
            Element p = basis_product(indices);
            element_add_scaled(acc, p, coeff);
            return;
        }
        for (std::size_t k = 0; k < dim_; ++k) {
            const Rational& c = args[slot][k];
            if (c.is_zero())
                continue;
            indices[slot] = static_cast<int>(k);
            expand(args, slot + 1, coeff * c, indices, acc);
        }
    }

    int arity_ = 0;
    std::size_t dim_ = 0;
    std::vector<std::string> basis_;
    Table products_;
    std::vector<std::size_t> blocks_;
};

} // namespace filippov
