#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "modfunctor/check_report.hpp"
#include "modfunctor/modular_data.hpp"
#include "modfunctor/stable_graph.hpp"

namespace modfunctor {

// Thread-safe memo of smooth dimensions keyed by (fingerprint, genus, sorted
// labels). Concurrent inserts of one key store the same value.
class DimensionCache {
public:
    using Key = std::tuple<std::string, unsigned, std::vector<std::uint32_t>>;

    bool lookup(const Key& key, std::uint64_t& value) const;
    void insert(Key key, std::uint64_t value);
    std::size_t size() const;
    void clear();

private:
    mutable std::shared_mutex mutex_;
    std::map<Key, std::uint64_t> entries_;
};

DimensionCache& default_cache();

struct EvalOptions {
    // worker threads for the labeling enumeration; 0 and 1 both mean serial
    unsigned jobs = 1;
    // nullptr disables memoization
    DimensionCache* cache = &default_cache();
};

// Rank of the conformal-block bundle on the smooth locus, evaluated as a sum
// over edge labelings of the caterpillar pants decomposition. (1, 0) is taken
// as (1, 1) with a vacuum leg; (0, 2) is the pairing; (0, 0) and (0, 1) throw
// unstable_pair.
std::uint64_t dim_smooth(const ModularDatum& d, unsigned genus, std::span<const Label> labels,
                         const EvalOptions& options = {});

struct BlockQuery {
    const ModularDatum& datum;
    GenusGraph shape;
    // indexed by marked point
    std::vector<Label> leg_labels;
};

// Resolves the shape's leg names against the datum's labels.
BlockQuery make_block_query(const ModularDatum& d, GenusGraph shape);

struct DimensionResult {
    std::uint64_t value = 0;
    // complete labelings with every vertex factor nonzero
    std::uint64_t labelings_enumerated = 0;
};

// Sum over internal-edge labelings of the product of vertex dimensions. The
// lower half-edge of each edge carries the label, the other its dual; edges are
// labeled in declaration order and a partial labeling is dropped as soon as a
// completed vertex contributes zero.
DimensionResult dim_graph(const BlockQuery& q, const EvalOptions& options = {});

// dim(g, labels + [0]) against dim(g, labels).
CheckEntry check_vacuum_propagation(const ModularDatum& d, unsigned genus, std::span<const Label> labels,
                                    const EvalOptions& options = {});

// dim_graph of every one-edge degeneration at every vertex against dim_graph(sg).
CheckEntry check_factorization(const ModularDatum& d, const GenusGraph& sg, std::span<const Label> leg_labels,
                               const EvalOptions& options = {});

std::string format_labels(const ModularDatum& d, std::span<const Label> labels);

} // namespace modfunctor
