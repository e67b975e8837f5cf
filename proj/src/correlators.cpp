#include "modfunctor/correlators.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "modfunctor/errors.hpp"

namespace modfunctor {

std::uint64_t dim_cardy(const DoubledQuery& q, const EvalOptions& options)
{
    const auto& d = q.datum;
    const auto n = q.insertions;
    if (q.genus == 0 && n <= 1) {
        throw unstable_pair(q.genus, n);
    }
    std::vector<Label> tuple(n, unit_label);
    std::vector<Label> duals(n, unit_label);
    std::uint64_t total = 0;
    for (;;) {
        for (std::size_t k = 0; k < n; ++k) {
            duals[k] = d.dual(tuple[k]);
        }
        auto a = dim_smooth(d, q.genus, tuple, options);
        if (a != 0) {
            std::uint64_t term = 0;
            if (__builtin_mul_overflow(a, dim_smooth(d, q.genus, duals, options), &term) ||
                __builtin_add_overflow(total, term, &total)) {
                throw std::overflow_error("correlator dimension exceeds 64 bits");
            }
        }
        std::size_t k = 0;
        while (k < n && ++tuple[k].index == d.rank()) {
            tuple[k].index = 0;
            ++k;
        }
        if (k == n) {
            return total;
        }
    }
}

CheckEntry check_cardy_dimension(const DoubledQuery& q, const EvalOptions& options)
{
    CheckEntry entry;
    entry.name = "Cardy correlator space g=" + std::to_string(q.genus) + " n=" + std::to_string(q.insertions);
    auto value = dim_cardy(q, options);
    entry.passed = value >= 1;
    entry.residual = Residual::of(mpq_class(entry.passed ? 0 : 1));
    entry.detail = "dimension " + std::to_string(value) + (entry.passed ? "" : " leaves no room for a correlator");
    return entry;
}

namespace {

double max_abs(const Eigen::MatrixXcd& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

} // namespace

CardyResiduals cardy_residuals(const ModularDatum& d)
{
    const auto c = d.charge_conjugation();
    const auto& s = d.s_matrix();
    const auto t = d.t_matrix();
    return {max_abs(c * s - s * c), max_abs(c * t - t * c)};
}

CheckEntry check_cardy_invariant(const ModularDatum& d)
{
    auto r = cardy_residuals(d);
    CheckEntry entry;
    entry.name = "charge-conjugation modular invariant";
    entry.residual = Residual::of(std::max(r.cs, r.ct));
    entry.passed = r.cs < d.tolerances().axiom && r.ct < d.tolerances().axiom;
    std::ostringstream os;
    os << "|[C,S]| = " << r.cs << ", |[C,T]| = " << r.ct;
    entry.detail = os.str();
    return entry;
}

} // namespace modfunctor
