// filippov — exact computation of derivation-type operator spaces of
// finite-dimensional n-ary Filippov algebras given by structure constants.
//
// Subcommands:
//   verify            anticommutativity + Filippov identity check
//   solve             kernel of a chosen defining identity
//   chain             dimension table for Der ⊆ Der_δ ⊆ QDer ⊆ GDer ⊆ End
//   delta-report      GDer → annihilator → quotient → Killing verdicts
//   decompose         normal form (h, d, d_0 = -d^T) of a derivation tuple
//   probe-conjecture  observational GDer(A) = End(A) probe
//
// Exit codes: 0 pass, 1 mathematical failure (with witness), 2 usage/IO error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "filippov/algebra.hpp"
#include "filippov/decomposition.hpp"
#include "filippov/derivations.hpp"
#include "filippov/io.hpp"
#include "filippov/lie.hpp"

namespace {

using namespace filippov;

struct Output {
    std::string path; // empty = stdout

    void emit(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        write_text_file(path, text);
        std::cout << "wrote " << path << "\n";
    }
};

NaryAlgebra resolve_algebra(const std::string& source) {
    auto parse_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size())
                throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw FormatError("algebra source: \"" + s + "\" is not an integer");
        }
    };
    if (source.rfind("simple:", 0) == 0) {
        const int n = parse_int(source.substr(7));
        if (n < 2 || n > 9)
            throw FormatError("algebra source: simple:n needs 2 <= n <= 9");
        return NaryAlgebra::simple(n);
    }
    if (source.rfind("semisimple:", 0) == 0) {
        const std::string rest = source.substr(11);
        const auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw FormatError("algebra source: expected semisimple:n:t");
        const int n = parse_int(rest.substr(0, colon));
        const int t = parse_int(rest.substr(colon + 1));
        if (n < 2 || n > 9)
            throw FormatError("algebra source: semisimple:n:t needs 2 <= n <= 9");
        if (t < 1 || t > 9)
            throw FormatError("algebra source: semisimple:n:t needs 1 <= t <= 9");
        std::vector<NaryAlgebra> parts(static_cast<std::size_t>(t), NaryAlgebra::simple(n));
        return NaryAlgebra::direct_sum(parts);
    }
    return load_algebra(source);
}

std::string witness_text(const NaryAlgebra& alg, const TupleWitness& w) {
    std::ostringstream out;
    out << "violated on (";
    for (std::size_t i = 0; i < w.args.size(); ++i)
        out << (i ? "," : "") << "e" << w.args[i] + 1;
    out << "): lhs != rhs";
    (void)alg;
    return out.str();
}

int cmd_verify(const std::string& source, const std::string& format, const Output& out) {
    NaryAlgebra alg = resolve_algebra(source);
    auto witness = alg.check_filippov();
    const bool pass = !witness;
    if (format == "tsv") {
        std::ostringstream text;
        text << "check\tresult\n";
        text << "anticommutativity\tpass\n"; // structural: only increasing tuples are stored
        text << "filippov\t" << (pass ? "pass" : "fail") << "\n";
        out.emit(text.str());
    } else {
        Json j;
        j["anticommutativity"] = "pass";
        j["filippov"] = pass ? "pass" : "fail";
        if (witness) {
            Json w;
            Json xs = Json::array(), ys = Json::array();
            for (int x : witness->x)
                xs.push_back(x + 1);
            for (int y : witness->y)
                ys.push_back(y + 1);
            w["x"] = std::move(xs);
            w["y"] = std::move(ys);
            Json lhs = Json::array(), rhs = Json::array();
            for (const auto& c : witness->lhs)
                lhs.push_back(c.str());
            for (const auto& c : witness->rhs)
                rhs.push_back(c.str());
            w["lhs"] = std::move(lhs);
            w["rhs"] = std::move(rhs);
            j["witness"] = std::move(w);
        }
        out.emit(dump_json(j));
    }
    return pass ? 0 : 1;
}

int cmd_solve(const std::string& source, const std::string& space_name,
              const std::optional<std::string>& delta_text, const std::string& format,
              const Output& out) {
    NaryAlgebra alg = resolve_algebra(source);
    OperatorSpace space;
    if (space_name == "der") {
        space = solve_der(alg);
    } else if (space_name == "delta-der") {
        if (!delta_text)
            throw FormatError("solve --space delta-der needs --delta p/q");
        space = solve_delta_der(alg, Rational::parse(*delta_text));
    } else if (space_name == "centroid") {
        space = solve_centroid(alg);
    } else if (space_name == "qder") {
        space = solve_qder(alg);
    } else if (space_name == "gder") {
        space = solve_gder(alg);
    } else if (space_name == "nary-der") {
        space = solve_nary_derivations(alg);
    } else {
        throw FormatError("unknown space \"" + space_name +
                          "\" (expected der|delta-der|centroid|qder|gder|nary-der)");
    }
    std::ostream& note = out.path.empty() ? std::cerr : std::cout;
    note << space_kind_name(space.kind) << " dimension " << space.dimension();
    if (space.head_projection_dim)
        note << " (head projection " << *space.head_projection_dim << ")";
    note << "\n";
    if (format == "tsv") {
        std::ostringstream text;
        text << "kind\tdelta\tdimension\n";
        text << space_kind_name(space.kind) << "\t" << (space.delta ? space.delta->str() : "-")
             << "\t" << space.dimension() << "\n";
        out.emit(text.str());
    } else {
        out.emit(dump_json(space_to_json(space, algebra_hash(alg))));
    }
    return 0;
}

int cmd_chain(const std::string& source, const std::vector<std::string>& delta_texts,
              const std::string& format, const Output& out) {
    NaryAlgebra alg = resolve_algebra(source);
    std::vector<Rational> deltas;
    if (delta_texts.empty()) {
        deltas = default_delta_sweep(alg.arity());
    } else {
        for (const auto& t : delta_texts)
            deltas.push_back(Rational::parse(t));
    }
    ChainReport rep = chain_report(alg, deltas);
    if (format == "tsv") {
        std::ostringstream text;
        text << "space\tdimension\tnote\n";
        text << "Der\t" << rep.dim_der << "\t\n";
        for (const auto& row : rep.deltas)
            text << "Der_{" << row.delta.str() << "}\t" << row.dim_member
                 << "\tkernel=" << row.dim_kernel << "\n";
        text << "QDer-pairs\t" << rep.dim_qder_pairs << "\t\n";
        text << "QDer-heads\t" << rep.dim_qder_heads << "\t\n";
        text << "GDer\t" << rep.dim_gder << "\t\n";
        text << "End\t" << rep.dim_end << "\t\n";
        text << "chain\t" << rep.chain_line << "\t\n";
        out.emit(text.str());
    } else {
        out.emit(dump_json(chain_report_to_json(rep)));
    }
    std::cerr << rep.chain_line << "\n";
    return 0;
}

int cmd_delta_report(const std::string& source, const std::string& format, const Output& out) {
    NaryAlgebra alg = resolve_algebra(source);
    BlockwiseDelta rep = blockwise_delta(alg);
    if (format == "tsv") {
        std::ostringstream text;
        text << "block\tsubalgebra_dim\tannihilator_dim\tquotient_dim\tkilling_rank\tsl_compatible\n";
        for (std::size_t b = 0; b < rep.per_block.size(); ++b) {
            const auto& r = rep.per_block[b];
            text << b + 1 << "\t" << r.subalgebra_dim << "\t" << r.annihilator_dim << "\t"
                 << r.quotient_dim << "\t" << r.killing_rank << "\t"
                 << (r.sl_compatible && *r.sl_compatible ? "yes" : "no") << "\n";
        }
        const auto& c = rep.combined;
        text << "combined\t" << c.subalgebra_dim << "\t" << c.annihilator_dim << "\t"
             << c.quotient_dim << "\t" << c.killing_rank << "\t"
             << (c.sl_compatible && *c.sl_compatible ? "yes" : "no") << "\n";
        out.emit(text.str());
    } else {
        out.emit(dump_json(blockwise_delta_to_json(rep)));
    }
    return 0;
}

int cmd_decompose(const std::string& source, const std::string& tuple_path,
                  const std::string& format, const Output& out) {
    NaryAlgebra alg = resolve_algebra(source);
    DerivationTuple t = load_tuple(tuple_path);
    if (t.arity() != static_cast<std::size_t>(alg.arity()) || t.dim() != alg.dim())
        throw FormatError("tuple file does not match the algebra (arity " +
                          std::to_string(alg.arity()) + ", dim " + std::to_string(alg.dim()) + ")");
    try {
        if (alg.blocks().size() > 1) {
            BlockInvarianceReport rep = check_block_invariance(alg, t);
            if (!rep.invariant) {
                const auto& v = *rep.violation;
                std::cerr << "block invariance violated: operator f_" << v.operator_index
                          << " maps block " << v.from_block + 1 << " into block " << v.to_block + 1
                          << " (entry " << v.row + 1 << "," << v.col + 1 << ")\n";
                return 1;
            }
            Json j;
            j["invariant"] = true;
            Json blocks = Json::array();
            for (const auto& dec : rep.block_decompositions)
                blocks.push_back(decomposition_to_json(dec));
            j["blocks"] = std::move(blocks);
            if (format == "tsv") {
                std::ostringstream text;
                text << "block\th\tresidual\n";
                for (std::size_t b = 0; b < rep.block_decompositions.size(); ++b) {
                    const auto& dec = rep.block_decompositions[b];
                    text << b + 1 << "\t";
                    for (std::size_t i = 0; i < dec.h.size(); ++i)
                        text << (i ? "," : "") << dec.h[i].str();
                    text << "\t" << (dec.residual_zero() ? "zero" : "nonzero") << "\n";
                }
                out.emit(text.str());
            } else {
                out.emit(dump_json(j));
            }
        } else {
            CanonicalDecomposition dec = decompose(alg, t);
            if (format == "tsv") {
                std::ostringstream text;
                text << "h\t";
                for (std::size_t i = 0; i < dec.h.size(); ++i)
                    text << (i ? "," : "") << dec.h[i].str();
                text << "\nresidual\t" << (dec.residual_zero() ? "zero" : "nonzero") << "\n";
                out.emit(text.str());
            } else {
                out.emit(dump_json(decomposition_to_json(dec)));
            }
        }
    } catch (const TupleVerificationError& e) {
        std::cerr << "not a derivation tuple: " << witness_text(alg, e.witness) << "\n";
        return 1;
    } catch (const DecomposeError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}

int cmd_probe_conjecture(const std::string& source, const std::string& format, const Output& out) {
    NaryAlgebra alg = resolve_algebra(source);
    OperatorSpace gder = solve_gder(alg);
    const bool equals_end = gder.endos.size() == alg.dim() * alg.dim();
    const std::size_t n = static_cast<std::size_t>(alg.arity());
    std::string shape;
    if (alg.dim() <= n)
        shape = "dim<=n (allowed)";
    else if (alg.dim() == n + 1)
        shape = alg.has_zero_multiplication() ? "(n+1)-dim, zero multiplication (not simple)"
                                              : "(n+1)-dim (allowed if simple)";
    else
        shape = "outside conjecture shapes";
    if (format == "tsv") {
        std::ostringstream text;
        text << "gder_equals_end\t" << (equals_end ? "yes" : "no") << "\n";
        text << "gder_dim\t" << gder.endos.size() << "\n";
        text << "end_dim\t" << alg.dim() * alg.dim() << "\n";
        text << "shape\t" << shape << "\n";
        out.emit(text.str());
    } else {
        Json j;
        j["gder_equals_end"] = equals_end;
        j["gder_dim"] = gder.endos.size();
        j["end_dim"] = alg.dim() * alg.dim();
        j["shape"] = shape;
        j["note"] = "observational probe; no assertion";
        out.emit(dump_json(j));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact derivation spaces of n-ary Filippov algebras"};
    app.require_subcommand(1);

    std::string algebra_source;
    std::string format = "json";
    std::string out_path;
    std::string space_name;
    std::optional<std::string> delta_text;
    std::vector<std::string> chain_deltas;
    std::string tuple_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--algebra", algebra_source,
                        "builtin simple:n | semisimple:n:t, or an algebra JSON file")
            ->required();
        cmd->add_option("--format", format, "json|tsv")
            ->check(CLI::IsMember({"json", "tsv"}));
        cmd->add_option("--out", out_path, "output path (default stdout)");
    };

    CLI::App* verify = app.add_subcommand("verify", "anticommutativity + Filippov identity check");
    add_common(verify);

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a defining identity for its operator space");
    add_common(solve_cmd);
    solve_cmd->add_option("--space", space_name, "der|delta-der|centroid|qder|gder|nary-der")
        ->required();
    std::string delta_holder;
    auto* delta_opt = solve_cmd->add_option("--delta", delta_holder, "delta as a rational p/q");

    CLI::App* chain = app.add_subcommand("chain", "inclusion-chain dimension report");
    add_common(chain);
    chain->add_option("--deltas", chain_deltas, "delta sweep (default 1,1/n,-1,1/2,2)")
        ->delimiter(',');

    CLI::App* delta_report = app.add_subcommand("delta-report", "GDer -> annihilator -> quotient -> Killing report");
    add_common(delta_report);

    CLI::App* decompose_cmd = app.add_subcommand("decompose", "normal form of a derivation tuple file");
    add_common(decompose_cmd);
    decompose_cmd->add_option("--tuple", tuple_path, "DerivationTuple JSON file")->required();

    CLI::App* probe = app.add_subcommand("probe-conjecture", "observational GDer(A) = End(A) probe");
    add_common(probe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Output out{out_path};
    try {
        if (app.got_subcommand(verify))
            return cmd_verify(algebra_source, format, out);
        if (app.got_subcommand(solve_cmd)) {
            if (delta_opt->count() > 0)
                delta_text = delta_holder;
            return cmd_solve(algebra_source, space_name, delta_text, format, out);
        }
        if (app.got_subcommand(chain))
            return cmd_chain(algebra_source, chain_deltas, format, out);
        if (app.got_subcommand(delta_report))
            return cmd_delta_report(algebra_source, format, out);
        if (app.got_subcommand(decompose_cmd))
            return cmd_decompose(algebra_source, tuple_path, format, out);
        if (app.got_subcommand(probe))
            return cmd_probe_conjecture(algebra_source, format, out);
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
