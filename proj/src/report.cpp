#include "modfunctor/report.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "modfunctor/block_dimensions.hpp"
#include "modfunctor/correlators.hpp"
#include "modfunctor/errors.hpp"
#include "modfunctor/sewing_series.hpp"
#include "modfunctor/verlinde_algebra.hpp"

namespace modfunctor {

namespace {

std::string pair_name(unsigned g, std::size_t n)
{
    return "g=" + std::to_string(g) + " n=" + std::to_string(n);
}

// Nondecreasing label tuples of length n.
std::vector<std::vector<Label>> multisets(std::size_t rank, std::size_t n)
{
    std::vector<std::vector<Label>> out;
    std::vector<Label> cur(n, unit_label);
    for (;;) {
        out.push_back(cur);
        std::size_t k = n;
        while (k > 0 && cur[k - 1].index + 1 == rank) {
            --k;
        }
        if (k == 0) {
            return out;
        }
        ++cur[k - 1].index;
        for (std::size_t j = k; j < n; ++j) {
            cur[j] = cur[k - 1];
        }
    }
}

// Folds per-labeling entries into one entry per (g, n).
class Aggregate {
public:
    explicit Aggregate(std::string name) { entry_.name = std::move(name); }

    void add(const CheckEntry& e)
    {
        ++count_;
        if (e.residual.magnitude() > entry_.residual.magnitude()) {
            entry_.residual = e.residual;
        }
        if (!e.passed && entry_.passed) {
            entry_.passed = false;
            entry_.detail = e.name + ": " + e.detail;
        }
    }

    CheckEntry finish()
    {
        if (entry_.passed) {
            entry_.detail = std::to_string(count_) + " labelings agree";
        }
        return entry_;
    }

private:
    CheckEntry entry_;
    std::size_t count_ = 0;
};

CheckEntry axiom_entry(const AxiomCheck& a)
{
    CheckEntry e{"axiom: " + a.name, a.passed, Residual::of(a.residual), a.detail};
    if (!e.passed && e.detail.empty()) {
        e.detail = "residual above tolerance";
    }
    return e;
}

CheckEntry verlinde_entry(const ModularDatum& d)
{
    CheckEntry e;
    e.name = "Verlinde formula reproduces the fusion tensor";
    try {
        verlinde_coefficients(d);
        auto ev = evaluate_verlinde(d);
        e.residual = Residual::of(ev.max_integrality_defect);
        e.detail = "rank " + std::to_string(d.rank());
    } catch (const non_integral_coefficient& x) {
        e.passed = false;
        e.residual = Residual::of(x.defect());
        e.detail = x.what();
    } catch (const fusion_mismatch& x) {
        e.passed = false;
        e.residual = Residual::of(mpq_class(1));
        e.detail = x.what();
    }
    return e;
}

CheckEntry mueger_entry(const ModularDatum& d)
{
    auto center = mueger_center(d);
    auto ri = rank_identity(d);
    CheckEntry e;
    e.name = "Mueger center is trivial";
    e.passed = center.size() == 1 && center[0] == unit_label;
    e.residual = Residual::of(mpq_class(static_cast<long>(center.size())) - 1);
    std::ostringstream os;
    os << "center " << format_labels(d, center) << "; " << ri.transparent_simples << " transparent of rank "
       << ri.rank;
    if (!e.passed) {
        os << "; braiding is degenerate, datum is not modular";
    }
    e.detail = os.str();
    return e;
}

} // namespace

CheckReport run_check_suite(const RawModularData& raw, const SuiteOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    CheckReport report;
    report.datum_fingerprint = fingerprint(raw);

    bool axioms_ok = true;
    for (const auto& a : audit_axioms(raw, options.tol, options.strictness)) {
        report.entries.push_back(axiom_entry(a));
        axioms_ok = axioms_ok && a.passed;
    }
    const auto d = ModularDatum::unchecked(raw, options.tol, options.strictness);
    report.entries.push_back(verlinde_entry(d));
    report.entries.push_back(mueger_entry(d));

    if (axioms_ok) {
        const FusionRing ring(d);
        report.entries.push_back(check_diagonalization(ring));
        report.entries.push_back(check_cardy_invariant(d));

        DimensionCache cache;
        const EvalOptions eval{options.jobs, &cache};
        for (unsigned g = 0; g <= options.max_genus; ++g) {
            for (std::size_t n = 0; n <= options.max_legs; ++n) {
                const bool pair_ok = is_stable_pair(g, n) || (g == 1 && n == 0);
                if (!pair_ok) {
                    continue;
                }
                if (is_stable_vertex(g, n)) {
                    Aggregate fact("factorization " + pair_name(g, n));
                    for (const auto& ls : multisets(d.rank(), n)) {
                        std::vector<std::string> names;
                        for (auto l : ls) {
                            names.push_back(d.name(l));
                        }
                        fact.add(check_factorization(d, GenusGraph::single_vertex(g, names), ls, eval));
                    }
                    report.entries.push_back(fact.finish());
                }
                Aggregate vac("vacuum propagation " + pair_name(g, n));
                for (const auto& ls : multisets(d.rank(), n)) {
                    vac.add(check_vacuum_propagation(d, g, ls, eval));
                }
                report.entries.push_back(vac.finish());
                report.entries.push_back(check_cardy_dimension({d, g, n}, eval));
            }
        }
        const SplitParameters split(mpq_class(1, 2), mpq_class(1, 2));
        for (const auto& m : default_graded_modules(d)) {
            report.entries.push_back(check_qdq_identity(d, m, options.sewing_truncation, split));
        }
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string report_json(const CheckReport& report)
{
    nlohmann::json doc;
    doc["schema"] = "modfunctor-report/1";
    doc["datum_fingerprint"] = report.datum_fingerprint;
    doc["passed"] = report.passed();
    auto entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json residual;
        if (e.residual.kind == Residual::Kind::numeric) {
            residual["kind"] = "numeric";
            residual["value"] = e.residual.numeric;
        } else {
            residual["kind"] = "exact";
            residual["value"] = e.residual.exact.get_str();
        }
        entries.push_back({{"name", e.name},
                           {"status", e.passed ? "pass" : "fail"},
                           {"residual", residual},
                           {"detail", e.detail}});
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

std::string report_text(const CheckReport& report)
{
    std::ostringstream os;
    std::size_t failed = 0;
    for (const auto& e : report.entries) {
        failed += e.passed ? 0 : 1;
        os << (e.passed ? "pass " : "FAIL ") << e.name << "  residual ";
        if (e.residual.kind == Residual::Kind::numeric) {
            os << std::setprecision(3) << e.residual.numeric;
        } else {
            os << e.residual.exact.get_str() << " (exact)";
        }
        if (!e.detail.empty()) {
            os << "  " << e.detail;
        }
        os << '\n';
    }
    os << report.entries.size() << " checks, " << failed << " failed; datum " << report.datum_fingerprint << "; "
       << std::fixed << std::setprecision(1) << report.elapsed_ms << " ms\n";
    return os.str();
}

} // namespace modfunctor
