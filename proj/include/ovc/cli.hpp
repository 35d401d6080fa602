#ifndef OVC_CLI_HPP
#define OVC_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ovc/adjudication.hpp"
#include "ovc/identities.hpp"
#include "ovc/numeric_checks.hpp"
#include "ovc/operators.hpp"
#include "ovc/wire.hpp"

namespace ovc::cli {

namespace detail {

inline DiagonalMode parse_diagonal(const std::string& name) {
    if (name == "unit")
        return DiagonalMode::Unit;
    if (name == "symbol")
        return DiagonalMode::Symbol;
    if (name == "kernel")
        return DiagonalMode::Kernel;
    throw CLI::ValidationError("--diagonal", "must be unit, symbol or kernel");
}

// Operator words read right to left over tokens d (one derivation) and C
// (Wick contraction); D abbreviates Cdd.
inline Polynomial apply_word(const std::string& word, Polynomial p, DiagonalMode mode) {
    std::string expanded;
    for (char c : word) {
        if (c == 'D')
            expanded += "Cdd";
        else
            expanded += c;
    }
    for (auto it = expanded.rbegin(); it != expanded.rend(); ++it) {
        if (*it == 'd')
            p = delta(p);
        else if (*it == 'C')
            p = wick(p, mode);
        else
            throw CLI::ValidationError("--op", std::string("unknown operator token '") + *it +
                                                   "' (expected d, C or D)");
    }
    return p;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f)
        throw DomainError("cannot open output file '" + out_path + "'");
    f << text;
}

inline std::string report_line(const Report& r) {
    std::ostringstream os;
    os.precision(10);
    if (r.pass.has_value())
        os << (*r.pass ? "PASS " : "FAIL ");
    else
        os << "INFO ";
    os << r.check;
    if (r.inputs.contains("monomial"))
        os << " " << r.inputs["monomial"].get<std::string>();
    if (r.lhs)
        os << " lhs=" << *r.lhs;
    if (r.rhs)
        os << " rhs=" << *r.rhs;
    if (r.ratio)
        os << " ratio=" << *r.ratio;
    if (r.rel_error)
        os << " rel_error=" << *r.rel_error;
    for (const auto& n : r.notes)
        os << "\n  note: " << n;
    os << "\n";
    return os.str();
}

} // namespace detail

/// Batch entry point. Exit codes: 0 all checks passed, 1 failed check or
/// engine error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"replica overlap calculus engine"};
    app.require_subcommand(1);

    std::string graph_text, op_word, format = "text", config_path, diagonal = "unit", out_path;
    int max_edges = 0, max_vertices = -1, order = 2;
    double lambda = 0.3;
    bool with_trend = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", out_path, "write output to this file");
    };

    CLI::App* apply = app.add_subcommand("apply", "apply an operator word to a graph");
    apply->add_option("--graph", graph_text, "graph notation")->required();
    apply->add_option("--op", op_word, "operator word over d, C, D (right to left)")->required();
    apply->add_option("--diagonal", diagonal, "self-loop handling: unit|symbol|kernel");
    add_common(apply);

    CLI::App* check = app.add_subcommand("check", "fourth-order identity check");
    check->add_option("--graph", graph_text, "single monomial to check");
    check->add_option("--max-edges", max_edges, "run the whole catalog up to this edge count");
    check->add_option("--max-vertices", max_vertices, "catalog vertex bound");
    check->add_option("--diagonal", diagonal, "self-loop handling: unit|symbol|kernel");
    add_common(check);

    CLI::App* identities = app.add_subcommand("identities", "export the identity families");
    identities->add_option("--max-edges", max_edges, "catalog edge bound")->required();
    identities->add_option("--max-vertices", max_vertices, "catalog vertex bound");
    add_common(identities);

    CLI::App* verify = app.add_subcommand("verify", "run the numeric oracle suite");
    verify->add_option("--config", config_path, "oracle config document");
    verify->add_option("--graph", graph_text, "monomial under test (default (1,2))");
    verify->add_option("--lambda", lambda, "deformation strength for the effective-beta check");
    verify->add_flag("--trend", with_trend, "include the rate and free-energy trend sweeps");
    add_common(verify);

    CLI::App* explore = app.add_subcommand("explore", "probe the order-2k identity");
    explore->add_option("--graph", graph_text, "monomial")->required();
    explore->add_option("--order", order, "half-order k (operator order is 2k)")->required();
    explore->add_option("--diagonal", diagonal, "self-loop handling: unit|symbol|kernel");
    add_common(explore);

    std::vector<const char*> argv;
    argv.push_back("ovc");
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        DiagonalMode mode = detail::parse_diagonal(diagonal);

        if (apply->parsed()) {
            Polynomial p = detail::apply_word(op_word, Polynomial::monomial(parse_graph(graph_text)),
                                              mode);
            if (format == "json") {
                nlohmann::ordered_json doc{{"command", "apply"},
                                           {"graph", graph_text},
                                           {"op", op_word},
                                           {"diagonal", diagonal},
                                           {"polynomial", polynomial_to_wire_json(p)}};
                detail::emit(doc.dump(2) + "\n", out_path, out);
            } else {
                detail::emit(p.str() + "\n", out_path, out);
            }
            return 0;
        }

        if (check->parsed()) {
            if (graph_text.empty() == (max_edges == 0)) {
                err << "usage error: check needs exactly one of --graph or --max-edges\n";
                return 2;
            }
            Report rep = graph_text.empty()
                             ? verify_catalog(enumerate_monomials(max_edges, max_vertices))
                             : fourth_order_check(parse_graph(graph_text), mode);
            if (format == "json") {
                detail::emit(rep.to_json().dump(2) + "\n", out_path, out);
            } else {
                std::string text = detail::report_line(rep);
                if (rep.data.contains("per_monomial"))
                    for (const auto& row : rep.data["per_monomial"])
                        text += std::string("  ") + (row["residual_zero"].get<bool>() ? "ok    "
                                                                                      : "FAIL  ") +
                                row["monomial"].get<std::string>() + "\n";
                detail::emit(text, out_path, out);
            }
            return rep.pass.value_or(false) ? 0 : 1;
        }

        if (identities->parsed()) {
            auto records = generate_identities(enumerate_monomials(max_edges, max_vertices));
            std::string text;
            if (format == "json") {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& rec : records)
                    arr.push_back(identity_to_json(rec));
                text = nlohmann::ordered_json{{"records", arr}}.dump(2) + "\n";
            } else {
                for (const auto& rec : records)
                    text += identity_to_json(rec).dump() + "\n";
            }
            detail::emit(text, out_path, out);
            for (const auto& rec : records)
                if (!rec.zero_sum_ok)
                    return 1;
            return 0;
        }

        if (verify->parsed()) {
            OracleConfig cfg;
            if (!config_path.empty()) {
                std::ifstream f(config_path);
                if (!f)
                    throw DomainError("cannot read config file '" + config_path + "'");
                std::stringstream buffer;
                buffer << f.rdbuf();
                nlohmann::ordered_json doc;
                try {
                    doc = nlohmann::ordered_json::parse(buffer.str());
                } catch (const nlohmann::json::parse_error& e) {
                    throw ovc::ParseError(std::string("invalid config document: ") + e.what());
                }
                cfg = config_from_json(doc);
            }
            Graph m = parse_graph(graph_text.empty() ? "(1,2)" : graph_text);

            std::vector<Report> reports;
            std::vector<std::string> skipped;
            if (cfg.n <= 3) {
                reports.push_back(effective_beta_check(m, cfg, lambda));
                reports.push_back(lambda_derivative_check(m, cfg, 2));
                reports.push_back(lambda_derivative_check(m, cfg, 4));
            } else {
                skipped.push_back("effective_beta and lambda_derivative require N <= 3");
            }
            if (cfg.n <= 4 && cfg.beta > 0) {
                reports.push_back(beta_derivative_check(m, cfg));
                reports.push_back(beta_second_derivative_ratio(m, cfg));
            } else {
                skipped.push_back("beta derivative checks require N <= 4 and beta > 0");
            }
            if (with_trend) {
                std::vector<int> ns;
                for (int n = 2; n <= std::max(4, cfg.n); ++n)
                    ns.push_back(n);
                reports.push_back(rate_trend(m, ns, cfg));
                reports.push_back(free_energy_trend(ns, cfg));
            }

            bool all_ok = true;
            for (const auto& r : reports)
                if (r.failed())
                    all_ok = false;

            if (format == "json") {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (const auto& r : reports)
                    arr.push_back(r.to_json());
                nlohmann::ordered_json doc{{"config", config_to_json(cfg)},
                                           {"reports", arr},
                                           {"skipped", skipped},
                                           {"pass", all_ok}};
                detail::emit(doc.dump(2) + "\n", out_path, out);
            } else {
                std::string text;
                for (const auto& r : reports)
                    text += detail::report_line(r);
                for (const auto& s : skipped)
                    text += "SKIP " + s + "\n";
                detail::emit(text, out_path, out);
            }
            return all_ok ? 0 : 1;
        }

        if (explore->parsed()) {
            Report rep = higher_order_explore(parse_graph(graph_text), order, mode);
            if (format == "json")
                detail::emit(rep.to_json().dump(2) + "\n", out_path, out);
            else
                detail::emit(detail::report_line(rep), out_path, out);
            return rep.pass.value_or(true) ? 0 : 1;
        }
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    err << "usage error: no command\n";
    return 2;
}

} // namespace ovc::cli

#endif
