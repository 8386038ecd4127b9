#pragma once

// The `rpl` command line. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success / Satisfied, 1 negative result, 2 input error
// (parse errors, malformed files or flags), 3 I/O error, 4 Unknown.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rpl/fragment.hpp"
#include "rpl/interpretation.hpp"
#include "rpl/io.hpp"
#include "rpl/parse.hpp"
#include "rpl/print.hpp"
#include "rpl/rectify.hpp"
#include "rpl/satisfaction.hpp"
#include "rpl/universe.hpp"

namespace rpl::cli {

enum ExitCode : int { Ok = 0, Negative = 1, InputError = 2, IoFailure = 3, Undecided = 4 };

namespace detail {

inline std::vector<Symbol> symbol_list(const std::vector<std::string>& names)
{
    std::vector<Symbol> out;
    for (const auto& n : names) {
        if (!is_well_formed_name(n) || is_keyword(n) || is_reserved_name(n))
            throw std::invalid_argument("not a usable symbol name: " + n);
        out.push_back(Symbol::user(n));
    }
    return out;
}

inline Expression parse_arg(const std::string& label, const std::string& text)
{
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw FileParseError(label, e);
    }
}

inline int exit_for(Verdict v)
{
    switch (v) {
    case Verdict::Satisfied: return Ok;
    case Verdict::Falsified: return Negative;
    default: return Undecided;
    }
}

struct Options {
    std::string file;
    std::uint32_t start = 1;
    bool as_set = false;

    std::string expr1, expr2;

    std::string program, interp;
    std::string mode = "exact";
    std::optional<std::uint32_t> depth;
    std::string range = "atoms";
    bool json = false;
    std::vector<std::string> symbols;
    std::uint32_t max_arity = 1;

    std::string spec, formula, base, pool;
};

inline int cmd_parse(const Options& o, std::ostream& out)
{
    for (const auto& l : load_lines(o.file)) out << print_canonical(l.expr) << '\n';
    return Ok;
}

inline int cmd_rect(const Options& o, std::ostream& out)
{
    auto lines = load_lines(o.file);
    if (o.as_set) {
        std::vector<Expression> es;
        for (const auto& l : lines) es.push_back(l.expr);
        std::uint32_t total = 1;
        for (const auto& r : rect_set(es)) {
            out << print_canonical(r) << '\n';
            total += r.quantifier_count();
        }
        out << "final=" << total << '\n';
        return Ok;
    }
    for (const auto& l : lines) {
        RectOutcome r = rect(l.expr, o.start);
        out << print_canonical(r.rectified) << "\tfinal=" << r.final_index << '\n';
    }
    return Ok;
}

inline int cmd_variant(const Options& o, std::ostream& out)
{
    Expression a = parse_arg("expr1", o.expr1);
    Expression b = parse_arg("expr2", o.expr2);
    bool v = is_variant(a, b);
    out << (v ? "variant" : "not-variant") << '\n';
    return v ? Ok : Negative;
}

inline int cmd_check(const Options& o, std::ostream& out)
{
    ModeSpec mode;
    if (o.mode == "exact") {
        if (o.depth) throw CLI::ValidationError("--depth", "only valid with --mode bounded");
        mode = ModeSpec::exact();
    } else {
        if (!o.depth) throw CLI::ValidationError("--depth", "required with --mode bounded");
        mode = ModeSpec::bounded(*o.depth);
    }
    RangePolicy range = o.range == "atoms" ? RangePolicy::AtomsOnly : RangePolicy::AllExpressions;
    std::vector<Expression> program = load_program(o.program);
    Interpretation interp = load_interpretation(o.interp);
    std::vector<Symbol> extras = symbol_list(o.symbols);
    Signature sig = default_signature(interp, program, extras, o.max_arity, range);
    CheckReport report = check_program(interp, program, mode, sig);
    if (o.json)
        out << to_json(report, range).dump(2) << '\n';
    else
        out << render_text(report);
    return exit_for(report.aggregate);
}

inline int cmd_universe(const Options& o, std::ostream& out)
{
    Signature sig;
    sig.symbols = symbol_list(o.symbols);
    std::sort(sig.symbols.begin(), sig.symbols.end());
    sig.symbols.erase(std::unique(sig.symbols.begin(), sig.symbols.end()), sig.symbols.end());
    sig.max_arity = o.max_arity;
    sig.check();
    auto listing = o.range == "atoms" ? enumerate_atoms(sig, *o.depth) : enumerate_expressions(sig, *o.depth);
    for (const auto& a : listing) out << print_canonical(a) << '\n';
    return Ok;
}

inline int cmd_fragment(const Options& o, std::ostream& out)
{
    FragmentSpec spec = load_fragment_spec(o.spec);
    bool all_in = true;
    for (const auto& l : load_lines(o.file)) {
        FormulaClass c = classify_formula(spec, l.expr);
        if (c.kind == FormulaClass::Kind::NotInFragment) all_in = false;
        out << to_string(c) << '\t' << print_canonical(l.expr) << '\n';
    }
    return all_in ? Ok : Negative;
}

inline int cmd_conservative(const Options& o, std::ostream& out)
{
    FragmentSpec spec = load_fragment_spec(o.spec);
    Expression f = parse_arg("formula", o.formula);
    Interpretation base = load_interpretation(o.base);
    std::vector<Expression> pool;
    for (const auto& l : load_lines(o.pool)) pool.push_back(l.expr);
    ConservativeReport r = conservative_check(spec, f, base, pool, *o.depth);
    if (o.json)
        out << to_json(r).dump(2) << '\n';
    else
        out << render_text(r);
    if (!r.ok()) return Negative;
    return r.inconclusive ? Undecided : Ok;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Reflective Predicate Logic toolkit", "rpl"};
    app.require_subcommand(1);
    detail::Options o;

    auto* parse_cmd = app.add_subcommand("parse", "print the canonical form of every expression in FILE");
    parse_cmd->add_option("file", o.file, "program file (.rpl)")->required();

    auto* rect_cmd = app.add_subcommand("rect", "rectify every expression in FILE");
    rect_cmd->add_option("file", o.file, "program file (.rpl)")->required();
    rect_cmd->add_option("--start", o.start, "initial variable index")->check(CLI::Range(1u, 1000000000u));
    rect_cmd->add_flag("--as-set", o.as_set, "rectify the whole file as one standardised-apart set");

    auto* variant_cmd = app.add_subcommand("variant", "test whether two expressions are variants");
    variant_cmd->add_option("expr1", o.expr1)->required();
    variant_cmd->add_option("expr2", o.expr2)->required();

    auto* check_cmd = app.add_subcommand("check", "model-check a program against an interpretation");
    check_cmd->add_option("--program", o.program, "program file (.rpl)")->required();
    check_cmd->add_option("--interp", o.interp, "interpretation file (.rpli)")->required();
    check_cmd->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "bounded"}));
    check_cmd->add_option("--depth", o.depth, "enumeration depth (bounded mode)");
    check_cmd->add_option("--range", o.range)->check(CLI::IsMember({"atoms", "expressions"}));
    check_cmd->add_option("--symbols", o.symbols, "extra signature symbols")->delimiter(',');
    check_cmd->add_option("--max-arity", o.max_arity)->check(CLI::Range(1u, 16u));
    check_cmd->add_flag("--json", o.json, "emit the JSON report");

    auto* universe_cmd = app.add_subcommand("universe", "list one atom per variant class up to a height");
    universe_cmd->add_option("--symbols", o.symbols)->delimiter(',')->required();
    universe_cmd->add_option("--depth", o.depth)->required();
    universe_cmd->add_option("--max-arity", o.max_arity)->check(CLI::Range(1u, 16u));
    universe_cmd->add_option("--range", o.range)->check(CLI::IsMember({"atoms", "expressions"}));

    auto* fragment_cmd = app.add_subcommand("fragment", "classify every expression of FILE against a fragment");
    fragment_cmd->add_option("--spec", o.spec, "fragment spec (JSON)")->required();
    fragment_cmd->add_option("file", o.file)->required();

    auto* cons_cmd = app.add_subcommand("conservative", "compare first-order and RPL verdicts over extensions");
    cons_cmd->add_option("--spec", o.spec)->required();
    cons_cmd->add_option("--formula", o.formula)->required();
    cons_cmd->add_option("--base", o.base)->required();
    cons_cmd->add_option("--pool", o.pool)->required();
    cons_cmd->add_option("--depth", o.depth)->required();
    cons_cmd->add_flag("--json", o.json);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "rpl: " << e.what() << '\n';
        return InputError;
    }

    try {
        if (parse_cmd->parsed()) return detail::cmd_parse(o, out);
        if (rect_cmd->parsed()) return detail::cmd_rect(o, out);
        if (variant_cmd->parsed()) return detail::cmd_variant(o, out);
        if (check_cmd->parsed()) return detail::cmd_check(o, out);
        if (universe_cmd->parsed()) return detail::cmd_universe(o, out);
        if (fragment_cmd->parsed()) return detail::cmd_fragment(o, out);
        if (cons_cmd->parsed()) return detail::cmd_conservative(o, out);
    } catch (const IoError& e) {
        err << "rpl: " << e.what() << '\n';
        return IoFailure;
    } catch (const FileParseError& e) {
        err << e.what() << '\n';
        return InputError;
    } catch (const NotAnAtom& e) {
        err << "rpl: NotAnAtom: " << e.what() << '\n';
        return InputError;
    } catch (const CLI::Error& e) {
        err << "rpl: " << e.what() << '\n';
        return InputError;
    } catch (const std::invalid_argument& e) {
        err << "rpl: " << e.what() << '\n';
        return InputError;
    }
    return InputError;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace rpl::cli
