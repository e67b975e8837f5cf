#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace modfunctor {

// Distance between the two sides of a check. Exact residuals come from integer
// or rational comparisons and are zero iff the sides agree.
struct Residual {
    enum class Kind { numeric, exact };
    Kind kind = Kind::exact;
    double numeric = 0.0;
    mpq_class exact = 0;

    static Residual exact_zero() { return {}; }
    static Residual of(double value) { return {Kind::numeric, value, 0}; }
    static Residual of(mpq_class value) { return {Kind::exact, 0.0, abs(value)}; }

    bool is_exact_zero() const { return kind == Kind::exact && exact == 0; }
    double magnitude() const { return kind == Kind::numeric ? numeric : exact.get_d(); }
};

struct CheckEntry {
    std::string name;
    bool passed = true;
    Residual residual;
    // nonempty whenever passed is false
    std::string detail;
};

struct CheckReport {
    std::string datum_fingerprint;
    std::vector<CheckEntry> entries;
    double elapsed_ms = 0.0;

    bool passed() const
    {
        for (const auto& e : entries) {
            if (!e.passed) {
                return false;
            }
        }
        return true;
    }
};

} // namespace modfunctor
