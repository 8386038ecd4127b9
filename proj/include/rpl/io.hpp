#pragma once

// File loading, fragment spec files and report serialisation.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpl/fragment.hpp"
#include "rpl/interpretation.hpp"
#include "rpl/parse.hpp"
#include "rpl/print.hpp"
#include "rpl/satisfaction.hpp"

namespace rpl {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A ParseError tagged with the file it came from.
class FileParseError : public std::runtime_error {
public:
    FileParseError(std::string path, const ParseError& e)
        : std::runtime_error(path + ":" + std::to_string(e.span().start) + ": " + std::string(e.code()) + ": " +
                             e.what()),
          path_(std::move(path)), error_(e)
    {
    }
    const std::string& path() const noexcept { return path_; }
    const ParseError& error() const noexcept { return error_; }

private:
    std::string path_;
    ParseError error_;
};

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return ss.str();
}

inline std::vector<SourceLine> load_lines(const std::string& path, ParseOptions opts = {})
{
    std::string text = read_file(path);
    try {
        return parse_lines(text, opts);
    } catch (const ParseError& e) {
        throw FileParseError(path, e);
    }
}

inline std::vector<Expression> load_program(const std::string& path)
{
    std::vector<Expression> out;
    for (auto& l : load_lines(path)) out.push_back(std::move(l.expr));
    return out;
}

inline Interpretation load_interpretation(const std::string& path) { return interp_from_lines(load_lines(path)); }

// Fragment specs:
// {"variables": ["x"], "term_symbols": {"a": [0]}, "predicate_symbols": {"p": [1, 2]}}

namespace detail {

inline Symbol user_symbol(const std::string& name)
{
    if (!is_well_formed_name(name) || is_keyword(name) || is_reserved_name(name))
        throw InvalidFragmentSpec("bad symbol name in fragment spec: " + name);
    return Symbol::user(name);
}

inline std::map<Symbol, std::set<std::uint32_t>> arity_map(const nlohmann::json& j, const char* field)
{
    std::map<Symbol, std::set<std::uint32_t>> out;
    if (!j.contains(field)) return out;
    const auto& m = j.at(field);
    if (!m.is_object()) throw InvalidFragmentSpec(std::string(field) + " must be an object");
    for (const auto& [name, arities] : m.items()) {
        if (!arities.is_array()) throw InvalidFragmentSpec(std::string(field) + "." + name + " must be an array");
        auto& set = out[user_symbol(name)];
        for (const auto& a : arities) {
            if (!a.is_number_unsigned()) throw InvalidFragmentSpec("arity must be a non-negative integer");
            set.insert(a.get<std::uint32_t>());
        }
    }
    return out;
}

}  // namespace detail

inline FragmentSpec fragment_spec_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw InvalidFragmentSpec("fragment spec must be a JSON object");
    FragmentSpec spec;
    if (j.contains("variables")) {
        if (!j.at("variables").is_array()) throw InvalidFragmentSpec("variables must be an array");
        for (const auto& v : j.at("variables")) {
            if (!v.is_string()) throw InvalidFragmentSpec("variables must be strings");
            spec.variables.insert(detail::user_symbol(v.get<std::string>()));
        }
    }
    spec.term_symbols = detail::arity_map(j, "term_symbols");
    spec.predicate_symbols = detail::arity_map(j, "predicate_symbols");
    spec.check();
    return spec;
}

inline nlohmann::json to_json(const FragmentSpec& spec)
{
    nlohmann::json j;
    j["variables"] = nlohmann::json::array();
    for (const auto& v : spec.variables) j["variables"].push_back(v.text());
    auto dump = [](const auto& m) {
        nlohmann::json o = nlohmann::json::object();
        for (const auto& [s, ar] : m) o[s.text()] = std::vector<std::uint32_t>(ar.begin(), ar.end());
        return o;
    };
    j["term_symbols"] = dump(spec.term_symbols);
    j["predicate_symbols"] = dump(spec.predicate_symbols);
    return j;
}

inline FragmentSpec load_fragment_spec(const std::string& path)
{
    std::string text = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidFragmentSpec(path + ": " + e.what());
    }
    return fragment_spec_from_json(j);
}

// Check reports. The layout is described in docs/report-schema.md.

inline constexpr const char* kReportSchema = "rpl-check-report/1";

inline std::string_view to_string(CheckMode m) noexcept { return m == CheckMode::Exact ? "exact" : "bounded"; }
inline std::string_view to_string(RangePolicy r) noexcept
{
    return r == RangePolicy::AtomsOnly ? "atoms" : "expressions";
}

inline Verdict verdict_from_string(const std::string& s)
{
    if (s == "Satisfied") return Verdict::Satisfied;
    if (s == "Falsified") return Verdict::Falsified;
    if (s == "Unknown") return Verdict::Unknown;
    throw std::invalid_argument("unknown verdict: " + s);
}

inline nlohmann::json to_json(const CheckReport& r, RangePolicy range)
{
    nlohmann::json j;
    j["schema"] = kReportSchema;
    j["mode"] = std::string(to_string(r.mode.mode));
    if (r.mode.mode == CheckMode::Bounded)
        j["depth"] = r.mode.depth;
    else
        j["depth"] = nullptr;
    j["range"] = std::string(to_string(range));
    j["aggregate"] = std::string(to_string(r.aggregate));
    j["results"] = nlohmann::json::array();
    for (const auto& it : r.items) {
        j["results"].push_back({{"expression", print_canonical(it.expression)},
                                {"verdict", std::string(to_string(it.verdict))},
                                {"witnesses", it.witnesses},
                                {"candidates_examined", it.candidates_examined}});
    }
    j["stats"] = {{"instantiations", r.stats.instantiations},
                  {"candidates", r.stats.candidates},
                  {"incomplete", r.stats.incomplete}};
    return j;
}

/// Reads a report back; expressions are re-parsed, so internal names in them are accepted.
inline CheckReport check_report_from_json(const nlohmann::json& j, RangePolicy* range = nullptr)
{
    if (j.at("schema").get<std::string>() != kReportSchema) throw std::invalid_argument("unsupported report schema");
    CheckReport r;
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "exact")
        r.mode = ModeSpec::exact();
    else if (mode == "bounded")
        r.mode = ModeSpec::bounded(j.at("depth").get<std::uint32_t>());
    else
        throw std::invalid_argument("unknown mode: " + mode);
    if (range) *range = j.at("range").get<std::string>() == "atoms" ? RangePolicy::AtomsOnly : RangePolicy::AllExpressions;
    r.aggregate = verdict_from_string(j.at("aggregate").get<std::string>());
    for (const auto& it : j.at("results")) {
        ExpressionReport e{parse(it.at("expression").get<std::string>(), {true}),
                           verdict_from_string(it.at("verdict").get<std::string>()),
                           it.at("witnesses").get<std::vector<std::string>>(),
                           it.at("candidates_examined").get<std::uint64_t>()};
        r.items.push_back(std::move(e));
    }
    const auto& s = j.at("stats");
    r.stats.instantiations = s.at("instantiations").get<std::uint64_t>();
    r.stats.candidates = s.at("candidates").get<std::uint64_t>();
    r.stats.incomplete = s.at("incomplete").get<bool>();
    r.stats.depth = r.mode.depth;
    return r;
}

inline std::string render_text(const CheckReport& r)
{
    std::string out;
    for (const auto& it : r.items) {
        out += std::string(to_string(it.verdict));
        out += '\t';
        out += print_canonical(it.expression);
        if (!it.witnesses.empty()) {
            out += "\twitness: ";
            for (std::size_t k = 0; k < it.witnesses.size(); ++k) {
                if (k) out += ", ";
                out += it.witnesses[k];
            }
        }
        out += '\n';
    }
    out += "aggregate: " + std::string(to_string(r.aggregate)) + "\n";
    return out;
}

inline nlohmann::json to_json(const ConservativeReport& r)
{
    nlohmann::json j;
    j["fo_verdict"] = std::string(to_string(r.fo));
    j["extensions"] = r.extensions;
    j["inconclusive"] = r.inconclusive;
    j["mismatches"] = nlohmann::json::array();
    for (const auto& m : r.mismatches) {
        std::vector<std::string> atoms;
        for (const auto& a : m.extension) atoms.push_back(print_canonical(a));
        j["mismatches"].push_back({{"extension", atoms},
                                   {"fo", std::string(to_string(m.fo))},
                                   {"rpl", std::string(to_string(m.rpl))}});
    }
    return j;
}

inline std::string render_text(const ConservativeReport& r)
{
    std::string out = "fo: " + std::string(to_string(r.fo)) + "\n";
    out += "extensions: " + std::to_string(r.extensions) + "\n";
    out += "inconclusive: " + std::to_string(r.inconclusive) + "\n";
    out += "mismatches: " + std::to_string(r.mismatches.size()) + "\n";
    for (const auto& m : r.mismatches) {
        out += "  J = {";
        for (std::size_t k = 0; k < m.extension.size(); ++k) {
            if (k) out += ", ";
            out += print_canonical(m.extension[k]);
        }
        out += "}: rpl " + std::string(to_string(m.rpl)) + ", fo " + std::string(to_string(m.fo)) + "\n";
    }
    return out;
}

}  // namespace rpl
