#pragma once

#include <cstdint>

#include "modfunctor/block_dimensions.hpp"
#include "modfunctor/check_report.hpp"
#include "modfunctor/modular_data.hpp"

namespace modfunctor {

// Genus g with n insertions of the bulk object sum_S S (x) S' at pairs of
// conjugate points on the double.
struct DoubledQuery {
    const ModularDatum& datum;
    unsigned genus = 0;
    std::size_t insertions = 0;
};

// sum over (S_1..S_n) of dim(g, S) * dim(g, dual S). (1, 0) is admitted as for
// dim_smooth; (0, 0) and (0, 1) throw unstable_pair.
std::uint64_t dim_cardy(const DoubledQuery& q, const EvalOptions& options = {});

// dim_cardy >= 1 as a report entry.
CheckEntry check_cardy_dimension(const DoubledQuery& q, const EvalOptions& options = {});

struct CardyResiduals {
    double cs = 0.0; // max |CS - SC|
    double ct = 0.0; // max |CT - TC|
};

CardyResiduals cardy_residuals(const ModularDatum& d);

// Both commutators below the axiom tolerance.
CheckEntry check_cardy_invariant(const ModularDatum& d);

} // namespace modfunctor
