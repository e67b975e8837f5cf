#include "modfunctor/block_dimensions.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "modfunctor/errors.hpp"

namespace modfunctor {

bool DimensionCache::lookup(const Key& key, std::uint64_t& value) const
{
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        return false;
    }
    value = it->second;
    return true;
}

void DimensionCache::insert(Key key, std::uint64_t value)
{
    std::unique_lock lock(mutex_);
    entries_.emplace(std::move(key), value);
}

std::size_t DimensionCache::size() const
{
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void DimensionCache::clear()
{
    std::unique_lock lock(mutex_);
    entries_.clear();
}

DimensionCache& default_cache()
{
    static DimensionCache cache;
    return cache;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("block dimension exceeds 64 bits");
    }
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("block dimension exceeds 64 bits");
    }
    return r;
}

void require_in_range(const ModularDatum& d, std::span<const Label> labels)
{
    for (auto l : labels) {
        if (l.index >= d.rank()) {
            throw unknown_label(std::to_string(l.index));
        }
    }
}

// Labeling enumeration over a fixed graph. Vertex factors are fusion
// coefficients for trivalent genus-0 vertices and smooth dimensions otherwise.
class GraphSum {
public:
    GraphSum(const ModularDatum& d, const GenusGraph& g, std::span<const Label> leg_labels,
             const EvalOptions& options)
        : d_(d), g_(g), options_(options), assignment_(g.graph().half_edge_count(), 0),
          edges_(g.graph().internal_edges()), completes_at_(edges_.size())
    {
        for (std::size_t k = 0; k < g.leg_count(); ++k) {
            assignment_[idx(g.leg(k))] = leg_labels[k].index;
        }
        std::vector<std::ptrdiff_t> last(g.vertex_count(), -1);
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            auto [x, y] = edges_[e];
            last[idx(g.graph().source(x))] = static_cast<std::ptrdiff_t>(e);
            last[idx(g.graph().source(y))] = static_cast<std::ptrdiff_t>(e);
        }
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            if (last[v] < 0) {
                fixed_.push_back(vertex_id(v));
            } else {
                completes_at_[static_cast<std::size_t>(last[v])].push_back(vertex_id(v));
            }
        }
    }

    DimensionResult run()
    {
        std::uint64_t base = 1;
        for (auto v : fixed_) {
            base = checked_mul(base, factor(v, assignment_, memo_));
            if (base == 0) {
                return {};
            }
        }
        if (edges_.empty()) {
            return {base, 1};
        }
        unsigned jobs = std::max(1u, options_.jobs);
        if (jobs == 1 || d_.rank() == 1) {
            DimensionResult r;
            descend(0, base, assignment_, memo_, r);
            return r;
        }
        jobs = std::min<unsigned>(jobs, static_cast<unsigned>(d_.rank()));
        std::vector<DimensionResult> partial(jobs);
        std::vector<std::exception_ptr> failure(jobs);
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < jobs; ++t) {
            workers.emplace_back([&, t] {
                try {
                    auto assignment = assignment_;
                    Memo memo;
                    for (std::size_t l = t; l < d_.rank(); l += jobs) {
                        step(0, static_cast<std::uint32_t>(l), base, assignment, memo, partial[t]);
                    }
                } catch (...) {
                    failure[t] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) {
            w.join();
        }
        DimensionResult total;
        for (unsigned t = 0; t < jobs; ++t) {
            if (failure[t]) {
                std::rethrow_exception(failure[t]);
            }
            total.value = checked_add(total.value, partial[t].value);
            total.labelings_enumerated += partial[t].labelings_enumerated;
        }
        return total;
    }

private:
    using Memo = std::map<std::pair<unsigned, std::vector<std::uint32_t>>, std::uint64_t>;

    std::uint64_t factor(VertexId v, const std::vector<std::uint32_t>& assignment, Memo& memo) const
    {
        const auto& hs = g_.graph().half_edges_at(v);
        unsigned genus = g_.genus(v);
        if (genus == 0 && hs.size() == 3) {
            return d_.raw().fusion(assignment[idx(hs[0])], assignment[idx(hs[1])], assignment[idx(hs[2])]);
        }
        std::vector<std::uint32_t> key;
        key.reserve(hs.size());
        for (auto h : hs) {
            key.push_back(assignment[idx(h)]);
        }
        std::sort(key.begin(), key.end());
        auto [it, fresh] = memo.try_emplace({genus, key}, 0);
        if (fresh) {
            std::vector<Label> labels;
            for (auto l : key) {
                labels.emplace_back(l);
            }
            it->second = dim_smooth(d_, genus, labels, options_);
        }
        return it->second;
    }

    void step(std::size_t e, std::uint32_t label, std::uint64_t acc, std::vector<std::uint32_t>& assignment,
              Memo& memo, DimensionResult& out) const
    {
        auto [x, y] = edges_[e];
        assignment[idx(x)] = label;
        assignment[idx(y)] = d_.dual(Label{label}).index;
        for (auto v : completes_at_[e]) {
            auto f = factor(v, assignment, memo);
            if (f == 0) {
                return;
            }
            acc = checked_mul(acc, f);
        }
        descend(e + 1, acc, assignment, memo, out);
    }

    void descend(std::size_t e, std::uint64_t acc, std::vector<std::uint32_t>& assignment, Memo& memo,
                 DimensionResult& out) const
    {
        if (e == edges_.size()) {
            out.value = checked_add(out.value, acc);
            ++out.labelings_enumerated;
            return;
        }
        for (std::uint32_t l = 0; l < d_.rank(); ++l) {
            step(e, l, acc, assignment, memo, out);
        }
    }

    const ModularDatum& d_;
    const GenusGraph& g_;
    EvalOptions options_;
    std::vector<std::uint32_t> assignment_;
    std::vector<std::pair<HalfEdgeId, HalfEdgeId>> edges_;
    std::vector<std::vector<VertexId>> completes_at_;
    std::vector<VertexId> fixed_;
    Memo memo_;
};

} // namespace

std::uint64_t dim_smooth(const ModularDatum& d, unsigned genus, std::span<const Label> labels,
                         const EvalOptions& options)
{
    require_in_range(d, labels);
    const auto n = labels.size();
    if (genus == 0 && n <= 1) {
        throw unstable_pair(genus, n);
    }
    if (genus == 1 && n == 0) {
        const Label vacuum[] = {unit_label};
        return dim_smooth(d, 1, vacuum, options);
    }
    if (genus == 0 && n == 2) {
        return d.dual(labels[0]) == labels[1] ? 1 : 0;
    }
    if (genus == 0 && n == 3) {
        return d.fusion(labels[0], labels[1], labels[2]);
    }

    DimensionCache::Key key;
    if (options.cache != nullptr) {
        std::vector<std::uint32_t> sorted;
        for (auto l : labels) {
            sorted.push_back(l.index);
        }
        std::sort(sorted.begin(), sorted.end());
        key = {d.fingerprint(), genus, std::move(sorted)};
        std::uint64_t value = 0;
        if (options.cache->lookup(key, value)) {
            return value;
        }
    }
    auto shape = caterpillar(genus, n);
    EvalOptions serial = options;
    serial.jobs = 1;
    auto value = GraphSum(d, shape, labels, serial).run().value;
    if (options.cache != nullptr) {
        options.cache->insert(std::move(key), value);
    }
    return value;
}

BlockQuery make_block_query(const ModularDatum& d, GenusGraph shape)
{
    std::vector<Label> labels;
    for (const auto& name : shape.leg_names()) {
        labels.push_back(d.resolve_label(name));
    }
    return BlockQuery{d, std::move(shape), std::move(labels)};
}

DimensionResult dim_graph(const BlockQuery& q, const EvalOptions& options)
{
    if (q.leg_labels.size() != q.shape.leg_count()) {
        throw length_mismatch("expected " + std::to_string(q.shape.leg_count()) + " leg labels, got " +
                              std::to_string(q.leg_labels.size()));
    }
    require_in_range(q.datum, q.leg_labels);
    for (std::size_t v = 0; v < q.shape.vertex_count(); ++v) {
        auto val = q.shape.graph().valence(vertex_id(v));
        if (q.shape.genus(vertex_id(v)) == 0 && val <= 1) {
            throw unstable_pair(0, val);
        }
    }
    return GraphSum(q.datum, q.shape, q.leg_labels, options).run();
}

std::string format_labels(const ModularDatum& d, std::span<const Label> labels)
{
    std::string out = "[";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out += (i ? "," : "") + d.name(labels[i]);
    }
    return out + "]";
}

CheckEntry check_vacuum_propagation(const ModularDatum& d, unsigned genus, std::span<const Label> labels,
                                    const EvalOptions& options)
{
    std::vector<Label> extended(labels.begin(), labels.end());
    extended.push_back(unit_label);
    CheckEntry entry;
    entry.name = "vacuum propagation g=" + std::to_string(genus) + " " + format_labels(d, labels);
    auto without = dim_smooth(d, genus, labels, options);
    auto with = dim_smooth(d, genus, extended, options);
    entry.passed = with == without;
    entry.residual = Residual::of(mpq_class(static_cast<unsigned long>(with)) -
                                  mpq_class(static_cast<unsigned long>(without)));
    std::ostringstream os;
    os << with << (entry.passed ? " = " : " != ") << without;
    entry.detail = os.str();
    return entry;
}

CheckEntry check_factorization(const ModularDatum& d, const GenusGraph& sg, std::span<const Label> leg_labels,
                               const EvalOptions& options)
{
    std::vector<Label> labels(leg_labels.begin(), leg_labels.end());
    CheckEntry entry;
    entry.name = "factorization g=" + std::to_string(sg.total_genus()) + " " + format_labels(d, labels) + " on " +
                 std::to_string(sg.vertex_count()) + "-vertex graph";
    auto base = dim_graph(BlockQuery{d, sg, labels}, options).value;
    mpq_class worst = 0;
    std::size_t compared = 0;
    std::ostringstream mismatches;
    for (std::size_t v = 0; v < sg.vertex_count(); ++v) {
        auto degenerations = one_edge_degenerations_at(sg, vertex_id(v));
        for (std::size_t k = 0; k < degenerations.size(); ++k) {
            auto value = dim_graph(BlockQuery{d, degenerations[k], labels}, options).value;
            ++compared;
            mpq_class diff = abs(mpq_class(static_cast<unsigned long>(value)) - static_cast<unsigned long>(base));
            if (diff != 0) {
                mismatches << " vertex " << v << " degeneration " << k << ": " << value << " != " << base << ';';
            }
            worst = std::max(worst, diff);
        }
    }
    entry.passed = worst == 0;
    entry.residual = Residual::of(worst);
    if (entry.passed) {
        entry.detail = std::to_string(compared) + " degenerations agree at " + std::to_string(base);
    } else {
        entry.detail = "mismatch:" + mismatches.str();
    }
    return entry;
}

} // namespace modfunctor
