#include "modfunctor/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "modfunctor/block_dimensions.hpp"
#include "modfunctor/correlators.hpp"
#include "modfunctor/errors.hpp"
#include "modfunctor/report.hpp"
#include "modfunctor/sewing_series.hpp"
#include "modfunctor/stable_graph.hpp"
#include "modfunctor/verlinde_algebra.hpp"

namespace modfunctor {

namespace {

struct Settings {
    double tol = Tolerances{}.axiom;
    double int_tol = Tolerances{}.integer;
    unsigned max_genus = 3;
    std::size_t max_legs = 4;
    unsigned jobs = 1;
    bool premodular = false;

    Tolerances tolerances() const { return {tol, int_tol}; }
    Strictness strictness() const { return premodular ? Strictness::premodular : Strictness::modular; }
    EvalOptions eval() const { return {jobs, &default_cache()}; }
};

double env_tolerance()
{
    const char* value = std::getenv("MODFUNCTOR_TOL");
    if (value == nullptr || *value == '\0') {
        return Tolerances{}.axiom;
    }
    std::string text(value);
    double tol = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), tol);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !(tol > 0.0)) {
        throw input_error("MODFUNCTOR_TOL is not a positive number: '" + text + "'");
    }
    return tol;
}

mpq_class parse_fraction(const std::string& text)
{
    mpq_class q;
    if (text.empty() || q.set_str(text, 10) != 0 || q.get_den() == 0) {
        throw input_error("not a rational number: '" + text + "'");
    }
    q.canonicalize();
    return q;
}

int exit_for(const CheckReport& report)
{
    return report.passed() ? exit_pass : exit_check_failure;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Settings s;
    try {
        s.tol = env_tolerance();
    } catch (const input_error& e) {
        err << "modfunctor: error: " << e.what() << '\n';
        return exit_input_error;
    }

    CLI::App app{"Modular functor verification engine"};
    app.name("modfunctor");
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->always_capture_default();
    app.add_option("--tol", s.tol, "axiom tolerance (default from MODFUNCTOR_TOL)")->check(CLI::PositiveNumber);
    app.add_option("--int-tol", s.int_tol, "integrality tolerance")->check(CLI::PositiveNumber);
    app.add_option("--max-genus", s.max_genus, "largest genus in the check battery");
    app.add_option("--max-legs", s.max_legs, "largest number of marked points in the check battery");
    app.add_option("--jobs", s.jobs, "worker threads for labeling enumeration")->check(CLI::PositiveNumber);
    app.add_flag("--premodular", s.premodular, "skip unitarity, S^2 = C and the (ST)^3 relation");

    std::string datum_path;
    auto add_datum = [&](CLI::App* sub) {
        sub->add_option("datum", datum_path, "modular datum file")->required();
    };

    auto* check = app.add_subcommand("check", "run the full check suite");
    add_datum(check);

    auto* report = app.add_subcommand("report", "run the check suite and print the JSON report");
    add_datum(report);

    unsigned genus = 0;
    std::vector<std::string> label_tokens;
    auto* dim = app.add_subcommand("dim", "dimension of the block space on a smooth curve");
    add_datum(dim);
    dim->add_option("--genus,-g", genus, "genus")->required();
    dim->add_option("labels", label_tokens, "labels of the marked points (names or indices)");

    std::string graph_path;
    auto* graph_dim = app.add_subcommand("graph-dim", "graph-sum dimension for a stable graph file");
    add_datum(graph_dim);
    graph_dim->add_option("graph", graph_path, "stable graph file")->required();

    auto* verlinde = app.add_subcommand("verlinde", "fusion rules from the Verlinde formula and S-eigenvalues");
    add_datum(verlinde);

    std::size_t insertions = 0;
    bool invariant = false;
    auto* cardy = app.add_subcommand("cardy", "Cardy-case correlator space dimension");
    add_datum(cardy);
    cardy->add_option("--genus,-g", genus, "genus")->required();
    cardy->add_option("--insertions,-n", insertions, "number of bulk insertions");
    cardy->add_flag("--invariant", invariant, "also check that C commutes with S and T");

    std::string modules_path;
    unsigned truncation = 6;
    std::string split_text = "1/2";
    auto* sewing = app.add_subcommand("sewing", "q d/dq identity for truncated sewing elements");
    add_datum(sewing);
    sewing->add_option("modules", modules_path, "graded module file (default: built-in modules)");
    sewing->add_option("--truncation,-t", truncation, "truncation degree");
    sewing->add_option("--split", split_text, "alpha_plus as p/q; alpha_minus = 1 - alpha_plus");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) {
        args.emplace_back(argv[i]);
    }
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "modfunctor: error: " << e.what() << '\n';
        return exit_input_error;
    }

    try {
        if (*check || *report) {
            SuiteOptions options{s.tolerances(), s.strictness(), s.max_genus, s.max_legs, s.jobs, 6};
            auto raw = read_modular_data(read_text_file(datum_path));
            auto result = run_check_suite(raw, options);
            if (*check) {
                out << report_text(result);
            } else {
                out << report_json(result);
            }
            return exit_for(result);
        }

        const auto d = load_modular_datum(datum_path, s.tolerances(), s.strictness());

        if (*dim) {
            std::vector<Label> labels;
            for (const auto& t : label_tokens) {
                labels.push_back(d.resolve_label(t));
            }
            out << dim_smooth(d, genus, labels, s.eval()) << '\n';
            return exit_pass;
        }
        if (*graph_dim) {
            auto shape = parse_genus_graph(read_text_file(graph_path));
            shape.require_stable();
            out << dim_graph(make_block_query(d, std::move(shape)), s.eval()).value << '\n';
            return exit_pass;
        }
        if (*verlinde) {
            auto fusion = verlinde_coefficients(d);
            for (auto i : d.labels()) {
                for (auto j : d.labels()) {
                    if (j < i) {
                        continue;
                    }
                    out << d.name(i) << " x " << d.name(j) << " =";
                    bool first = true;
                    for (auto k : d.labels()) {
                        auto n = fusion(i.index, j.index, d.dual(k).index);
                        if (n != 0) {
                            out << (first ? " " : " + ");
                            if (n != 1) {
                                out << n << ' ';
                            }
                            out << d.name(k);
                            first = false;
                        }
                    }
                    out << '\n';
                }
            }
            const FusionRing ring(d);
            auto diag = diagonalize(ring);
            out << "S-conjugation residual " << diag.off_diagonal_residual << '\n';
            return exit_pass;
        }
        if (*cardy) {
            out << dim_cardy({d, genus, insertions}, s.eval()) << '\n';
            if (invariant) {
                auto entry = check_cardy_invariant(d);
                out << entry.detail << '\n';
                return entry.passed ? exit_pass : exit_check_failure;
            }
            return exit_pass;
        }
        if (*sewing) {
            auto alpha = parse_fraction(split_text);
            const SplitParameters split(alpha, 1 - alpha);
            auto modules = modules_path.empty() ? default_graded_modules(d)
                                                : parse_graded_modules(read_text_file(modules_path), d);
            int code = exit_pass;
            for (const auto& m : modules) {
                auto entry = check_qdq_identity(d, m, truncation, split);
                out << (entry.passed ? "pass " : "FAIL ") << entry.name << "  " << entry.detail << '\n';
                if (!entry.passed) {
                    code = exit_check_failure;
                }
            }
            return code;
        }
    } catch (const input_error& e) {
        err << "modfunctor: error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const check_failure& e) {
        err << "modfunctor: check failed: " << e.what() << '\n';
        return exit_check_failure;
    }
    return exit_input_error;
}

} // namespace modfunctor
