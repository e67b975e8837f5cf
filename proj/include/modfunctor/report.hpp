#pragma once

#include <string>

#include "modfunctor/check_report.hpp"
#include "modfunctor/modular_data.hpp"

namespace modfunctor {

struct SuiteOptions {
    Tolerances tol;
    Strictness strictness = Strictness::modular;
    unsigned max_genus = 3;
    std::size_t max_legs = 4;
    unsigned jobs = 1;
    unsigned sewing_truncation = 6;
};

// Axioms, Verlinde consistency, Mueger center, diagonalization, Cardy checks,
// factorization and vacuum propagation over the (g, n) battery, and the sewing
// identity on the default graded modules. When an axiom fails only the checks
// that do not presuppose the axioms are run.
CheckReport run_check_suite(const RawModularData& raw, const SuiteOptions& options);

// Machine-readable report: sorted keys, no timing, schema in docs/report-schema.md.
std::string report_json(const CheckReport& report);

// One line per entry and a summary line carrying the elapsed time.
std::string report_text(const CheckReport& report);

} // namespace modfunctor
