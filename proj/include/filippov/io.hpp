#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "filippov/algebra.hpp"
#include "filippov/decomposition.hpp"
#include "filippov/derivations.hpp"
#include "filippov/lie.hpp"
#include "filippov/matrix.hpp"

namespace filippov {

using Json = nlohmann::json;

/// Malformed input files; every failure mode carries its own message.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// matrices and tuples

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(m(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty())
        throw FormatError("matrix: expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw FormatError("matrix: expected rows to be non-empty arrays");
    const std::size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw FormatError("matrix: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!j[r][c].is_string())
                throw FormatError("matrix: entries must be rational strings");
            try {
                m(r, c) = Rational::parse(j[r][c].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw FormatError(std::string("matrix: ") + e.what());
            }
        }
    }
    return m;
}

inline Json tuple_to_json(const DerivationTuple& t) {
    Json out = Json::array();
    out.push_back(matrix_to_json(t.head));
    for (const auto& f : t.tail)
        out.push_back(matrix_to_json(f));
    return out;
}

inline DerivationTuple tuple_from_json(const Json& j) {
    if (!j.is_array() || j.size() < 3)
        throw FormatError("tuple: expected an array of at least three matrices (f_0, f_1, ..., f_n)");
    DerivationTuple t{matrix_from_json(j[0]), {}};
    for (std::size_t i = 1; i < j.size(); ++i) {
        Matrix f = matrix_from_json(j[i]);
        if (f.rows() != t.head.rows() || f.cols() != t.head.cols())
            throw FormatError("tuple: matrices have mixed sizes");
        t.tail.push_back(std::move(f));
    }
    if (!t.head.is_square())
        throw FormatError("tuple: matrices must be square");
    return t;
}

// ---------------------------------------------------------------------------
// algebra files

inline Json algebra_to_json(const NaryAlgebra& alg) {
    Json j;
    j["arity"] = alg.arity();
    j["dim"] = alg.dim();
    j["basis"] = alg.basis_labels();
    Json products = Json::array();
    for (const auto& [key, value] : alg.products()) {
        Json entry;
        Json args = Json::array();
        for (int k : key)
            args.push_back(k + 1); // 1-based in files
        entry["args"] = std::move(args);
        Json coeffs = Json::object();
        for (const auto& [idx, coeff] : value)
            coeffs[std::to_string(idx + 1)] = coeff.str();
        entry["value"] = std::move(coeffs);
        products.push_back(std::move(entry));
    }
    j["products"] = std::move(products);
    if (alg.blocks().size() > 1)
        j["blocks"] = alg.blocks();
    return j;
}

inline NaryAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object())
        throw FormatError("algebra: expected a JSON object");
    for (const char* key : {"arity", "dim", "basis", "products"})
        if (!j.contains(key))
            throw FormatError(std::string("algebra: missing \"") + key + "\" field");
    if (!j["arity"].is_number_integer() || !j["dim"].is_number_integer())
        throw FormatError("algebra: \"arity\" and \"dim\" must be integers");
    const int arity = j["arity"].get<int>();
    const long long dim_ll = j["dim"].get<long long>();
    if (arity < 2)
        throw FormatError("algebra: arity must be at least 2");
    if (dim_ll < 1)
        throw FormatError("algebra: dim must be at least 1");
    const std::size_t dim = static_cast<std::size_t>(dim_ll);
    if (!j["basis"].is_array() || j["basis"].size() != dim)
        throw FormatError("algebra: \"basis\" must list exactly dim labels");
    std::vector<std::string> basis;
    for (const auto& b : j["basis"]) {
        if (!b.is_string())
            throw FormatError("algebra: basis labels must be strings");
        basis.push_back(b.get<std::string>());
    }
    if (!j["products"].is_array())
        throw FormatError("algebra: \"products\" must be an array");
    NaryAlgebra::Table table;
    for (const auto& entry : j["products"]) {
        if (!entry.is_object() || !entry.contains("args") || !entry.contains("value"))
            throw FormatError("algebra: each product needs \"args\" and \"value\"");
        const auto& args = entry["args"];
        if (!args.is_array() || static_cast<int>(args.size()) != arity)
            throw FormatError("algebra: product \"args\" length differs from arity");
        NaryAlgebra::Key key;
        for (const auto& a : args) {
            if (!a.is_number_integer())
                throw FormatError("algebra: product indices must be integers");
            const long long v = a.get<long long>();
            if (v < 1 || v > static_cast<long long>(dim))
                throw FormatError("algebra: product index out of range (1.." + std::to_string(dim) + ")");
            key.push_back(static_cast<int>(v) - 1);
        }
        for (std::size_t i = 1; i < key.size(); ++i)
            if (key[i] <= key[i - 1])
                throw FormatError("algebra: product \"args\" must be strictly increasing");
        NaryAlgebra::SparseVec sv;
        if (!entry["value"].is_object())
            throw FormatError("algebra: product \"value\" must map indices to rational strings");
        for (const auto& [k, v] : entry["value"].items()) {
            long long idx;
            try {
                std::size_t used = 0;
                idx = std::stoll(k, &used);
                if (used != k.size())
                    throw std::invalid_argument(k);
            } catch (const std::exception&) {
                throw FormatError("algebra: product value key \"" + k + "\" is not an index");
            }
            if (idx < 1 || idx > static_cast<long long>(dim))
                throw FormatError("algebra: product value index out of range");
            if (!v.is_string())
                throw FormatError("algebra: product coefficients must be rational strings");
            try {
                sv[static_cast<int>(idx) - 1] = Rational::parse(v.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw FormatError(std::string("algebra: ") + e.what());
            }
        }
        if (table.count(key))
            throw FormatError("algebra: duplicate product tuple");
        table.emplace(std::move(key), std::move(sv));
    }
    std::vector<std::size_t> blocks;
    if (j.contains("blocks")) {
        if (!j["blocks"].is_array())
            throw FormatError("algebra: \"blocks\" must be an array of sizes");
        for (const auto& b : j["blocks"]) {
            if (!b.is_number_integer() || b.get<long long>() < 1)
                throw FormatError("algebra: block sizes must be positive integers");
            blocks.push_back(b.get<std::size_t>());
        }
    }
    try {
        return NaryAlgebra::make(arity, dim, std::move(basis), std::move(table), std::move(blocks));
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("algebra: ") + e.what());
    }
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw FormatError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw FormatError("cannot open file for writing: " + path);
    out << text;
    if (!out)
        throw FormatError("write failed: " + path);
}

inline NaryAlgebra load_algebra(const std::string& path) {
    return algebra_from_json(read_json_file(path));
}

inline void save_algebra(const NaryAlgebra& alg, const std::string& path) {
    write_text_file(path, dump_json(algebra_to_json(alg)));
}

inline DerivationTuple load_tuple(const std::string& path) {
    return tuple_from_json(read_json_file(path));
}

/// FNV-1a 64-bit over the canonical serialized algebra; provenance only.
inline std::string algebra_hash(const NaryAlgebra& alg) {
    const std::string text = dump_json(algebra_to_json(alg));
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

// ---------------------------------------------------------------------------
// reports

inline Json space_to_json(const OperatorSpace& space, const std::string& algebra_hash_hex) {
    Json j;
    j["kind"] = space_kind_name(space.kind);
    if (space.delta)
        j["delta"] = space.delta->str();
    j["dimension"] = space.dimension();
    if (space.head_projection_dim)
        j["head_projection_dim"] = *space.head_projection_dim;
    Json basis = Json::array();
    for (const auto& e : space.endos)
        basis.push_back(matrix_to_json(e));
    for (const auto& t : space.tuples)
        basis.push_back(tuple_to_json(t));
    j["basis"] = std::move(basis);
    j["algebra_hash"] = algebra_hash_hex;
    return j;
}

inline Json chain_report_to_json(const ChainReport& rep) {
    Json j;
    j["der"] = rep.dim_der;
    Json deltas = Json::array();
    for (const auto& row : rep.deltas) {
        Json r;
        r["delta"] = row.delta.str();
        r["kernel_dim"] = row.dim_kernel;
        r["member_dim"] = row.dim_member;
        r["member_equals_der"] = row.member_equals_der;
        r["member_inside_qder_heads"] = row.member_inside_qder_heads;
        deltas.push_back(std::move(r));
    }
    j["deltas"] = std::move(deltas);
    j["qder_pairs"] = rep.dim_qder_pairs;
    j["qder_heads"] = rep.dim_qder_heads;
    j["gder"] = rep.dim_gder;
    j["end"] = rep.dim_end;
    j["der_inside_qder_heads"] = rep.der_inside_qder_heads;
    j["qder_heads_equal_gder"] = rep.qder_heads_equal_gder;
    j["gder_equals_end"] = rep.gder_equals_end;
    j["chain"] = rep.chain_line;
    return j;
}

inline Json quotient_report_to_json(const QuotientReport& rep) {
    Json j;
    j["subalgebra_dim"] = rep.subalgebra_dim;
    j["annihilator_dim"] = rep.annihilator_dim;
    Json ann = Json::array();
    for (const auto& m : rep.annihilator_basis)
        ann.push_back(matrix_to_json(m));
    j["annihilator_basis"] = std::move(ann);
    j["annihilator_all_scalar"] = rep.annihilator_all_scalar;
    j["quotient_dim"] = rep.quotient_dim;
    j["killing"] = matrix_to_json(rep.killing);
    j["killing_rank"] = rep.killing_rank;
    j["center_trivial"] = rep.center_trivial;
    j["killing_nondegenerate"] = rep.killing_nondegenerate;
    if (rep.expected_sl_dim)
        j["expected_sl_dim"] = *rep.expected_sl_dim;
    if (rep.sl_compatible)
        j["sl_compatible"] = *rep.sl_compatible;
    return j;
}

inline Json blockwise_delta_to_json(const BlockwiseDelta& rep) {
    Json j;
    Json blocks = Json::array();
    for (const auto& b : rep.per_block)
        blocks.push_back(quotient_report_to_json(b));
    j["blocks"] = std::move(blocks);
    j["combined"] = quotient_report_to_json(rep.combined);
    return j;
}

inline Json decomposition_to_json(const CanonicalDecomposition& dec) {
    Json j;
    Json h = Json::array();
    for (const auto& x : dec.h)
        h.push_back(x.str());
    j["h"] = std::move(h);
    j["d"] = matrix_to_json(dec.d);
    j["d0"] = matrix_to_json(dec.d0);
    j["residual"] = dec.residual_zero() ? "zero" : "nonzero";
    return j;
}

} // namespace filippov
