#include "modfunctor/stable_graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "modfunctor/errors.hpp"

namespace modfunctor {

GenusGraph::GenusGraph(Graph graph, std::vector<unsigned> genus, std::vector<HalfEdgeId> leg_order,
                       std::vector<std::string> leg_names)
    : graph_(std::move(graph)), genus_(std::move(genus)), leg_order_(std::move(leg_order)),
      leg_names_(std::move(leg_names))
{
    if (genus_.size() != graph_.vertex_count()) {
        throw invalid_graph("genus map must cover every vertex");
    }
    if (leg_names_.size() != leg_order_.size()) {
        throw invalid_graph("every leg needs a name");
    }
    auto legs = graph_.legs();
    auto sorted = leg_order_;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != legs) {
        throw invalid_graph("leg order must list every leg exactly once");
    }
    leg_position_.assign(graph_.half_edge_count(), leg_order_.size());
    for (std::size_t k = 0; k < leg_order_.size(); ++k) {
        leg_position_[idx(leg_order_[k])] = k;
    }
}

GenusGraph GenusGraph::single_vertex(unsigned genus, std::vector<std::string> leg_names)
{
    GenusGraphBuilder b;
    auto v = b.add_vertex(genus);
    for (auto& name : leg_names) {
        b.add_leg(v, std::move(name));
    }
    return b.build();
}

unsigned GenusGraph::total_genus() const
{
    unsigned g = 0;
    for (auto x : genus_) {
        g += x;
    }
    return g + static_cast<unsigned>(graph_.first_betti_number());
}

bool GenusGraph::is_stable() const
{
    for (std::size_t v = 0; v < vertex_count(); ++v) {
        if (!vertex_stable(vertex_id(v))) {
            return false;
        }
    }
    return true;
}

void GenusGraph::require_stable() const
{
    for (std::size_t v = 0; v < vertex_count(); ++v) {
        if (!vertex_stable(vertex_id(v))) {
            throw unstable_pair(genus_[v], graph_.valence(vertex_id(v)));
        }
    }
}

VertexId GenusGraphBuilder::add_vertex(unsigned genus)
{
    genus_.push_back(genus);
    return vertex_id(genus_.size() - 1);
}

void GenusGraphBuilder::add_leg(VertexId v, std::string name)
{
    if (idx(v) >= genus_.size()) {
        throw invalid_graph("leg on unknown vertex");
    }
    auto h = half_edge_id(involution_.size());
    involution_.push_back(h);
    source_.push_back(v);
    legs_.push_back(h);
    names_.push_back(std::move(name));
}

void GenusGraphBuilder::add_edge(VertexId a, VertexId b)
{
    if (idx(a) >= genus_.size() || idx(b) >= genus_.size()) {
        throw invalid_graph("edge on unknown vertex");
    }
    auto h = involution_.size();
    involution_.push_back(half_edge_id(h + 1));
    involution_.push_back(half_edge_id(h));
    source_.push_back(a);
    source_.push_back(b);
}

GenusGraph GenusGraphBuilder::build() const
{
    return GenusGraph(Graph(genus_.size(), involution_, source_), genus_, legs_, names_);
}

GenusGraph parse_genus_graph(std::string_view text)
{
    GenusGraphBuilder b;
    std::map<std::string, VertexId, std::less<>> ids;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto vertex = [&](const std::string& id) {
        auto it = ids.find(id);
        if (it == ids.end()) {
            throw invalid_graph("line " + std::to_string(line_no) + ": undeclared vertex '" + id + "'");
        }
        return it->second;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(std::move(t));
        }
        if (tok.empty()) {
            continue;
        }
        if (tok[0] == "vertex") {
            if (tok.size() != 4 || tok[2] != "genus") {
                throw syntax_error(line_no, "expected 'vertex <id> genus <g>'");
            }
            unsigned g{};
            auto [ptr, ec] = std::from_chars(tok[3].data(), tok[3].data() + tok[3].size(), g);
            if (ec != std::errc{} || ptr != tok[3].data() + tok[3].size()) {
                throw syntax_error(line_no, "genus must be a non-negative integer");
            }
            if (ids.contains(tok[1])) {
                throw invalid_graph("line " + std::to_string(line_no) + ": duplicate vertex '" + tok[1] + "'");
            }
            ids.emplace(tok[1], b.add_vertex(g));
        } else if (tok[0] == "leg") {
            if (tok.size() != 3) {
                throw syntax_error(line_no, "expected 'leg <vertex_id> <label>'");
            }
            b.add_leg(vertex(tok[1]), tok[2]);
        } else if (tok[0] == "edge") {
            if (tok.size() != 3) {
                throw syntax_error(line_no, "expected 'edge <vertex_id> <vertex_id>'");
            }
            b.add_edge(vertex(tok[1]), vertex(tok[2]));
        } else {
            throw syntax_error(line_no, "unknown directive '" + tok[0] + "'");
        }
    }
    return b.build();
}

GenusGraph contract_edge(const GenusGraph& g, std::size_t edge)
{
    const auto& gr = g.graph();
    auto edges = gr.internal_edges();
    if (edge >= edges.size()) {
        throw invalid_graph("edge index out of range");
    }
    auto [a, b] = edges[edge];
    auto u = gr.source(a);
    auto w = gr.source(b);
    if (u > w) {
        std::swap(u, w);
    }
    auto genus = g.genera();
    std::vector<std::size_t> vertex_new(g.vertex_count());
    std::size_t nv = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (u != w && vertex_id(v) == w) {
            continue;
        }
        vertex_new[v] = nv++;
    }
    if (u == w) {
        genus[idx(u)] += 1;
    } else {
        genus[idx(u)] += genus[idx(w)];
        vertex_new[idx(w)] = vertex_new[idx(u)];
        genus.erase(genus.begin() + static_cast<std::ptrdiff_t>(idx(w)));
    }

    std::vector<std::size_t> half_new(gr.half_edge_count());
    std::size_t nh = 0;
    for (std::size_t h = 0; h < gr.half_edge_count(); ++h) {
        if (half_edge_id(h) == a || half_edge_id(h) == b) {
            continue;
        }
        half_new[h] = nh++;
    }
    std::vector<HalfEdgeId> inv(nh);
    std::vector<VertexId> src(nh);
    for (std::size_t h = 0; h < gr.half_edge_count(); ++h) {
        if (half_edge_id(h) == a || half_edge_id(h) == b) {
            continue;
        }
        inv[half_new[h]] = half_edge_id(half_new[idx(gr.involution(half_edge_id(h)))]);
        src[half_new[h]] = vertex_id(vertex_new[idx(gr.source(half_edge_id(h)))]);
    }
    std::vector<HalfEdgeId> legs;
    for (std::size_t k = 0; k < g.leg_count(); ++k) {
        legs.push_back(half_edge_id(half_new[idx(g.leg(k))]));
    }
    return GenusGraph(Graph(nv, std::move(inv), std::move(src)), std::move(genus), std::move(legs), g.leg_names());
}

namespace {

// Loop at v, genus g(v) - 1.
GenusGraph add_loop(const GenusGraph& g, VertexId v)
{
    const auto& gr = g.graph();
    auto h = gr.half_edge_count();
    std::vector<HalfEdgeId> inv;
    std::vector<VertexId> src;
    for (std::size_t i = 0; i < h; ++i) {
        inv.push_back(gr.involution(half_edge_id(i)));
        src.push_back(gr.source(half_edge_id(i)));
    }
    inv.push_back(half_edge_id(h + 1));
    inv.push_back(half_edge_id(h));
    src.push_back(v);
    src.push_back(v);
    auto genus = g.genera();
    genus[idx(v)] -= 1;
    std::vector<HalfEdgeId> legs;
    for (std::size_t k = 0; k < g.leg_count(); ++k) {
        legs.push_back(g.leg(k));
    }
    return GenusGraph(Graph(gr.vertex_count(), std::move(inv), std::move(src)), std::move(genus), std::move(legs),
                      g.leg_names());
}

// Split v: half-edges in `moved` go to a new vertex of genus `moved_genus`,
// joined to v by a new edge.
GenusGraph split_vertex(const GenusGraph& g, VertexId v, const std::vector<HalfEdgeId>& moved, unsigned moved_genus)
{
    const auto& gr = g.graph();
    auto h = gr.half_edge_count();
    auto w = vertex_id(gr.vertex_count());
    std::vector<HalfEdgeId> inv;
    std::vector<VertexId> src;
    for (std::size_t i = 0; i < h; ++i) {
        inv.push_back(gr.involution(half_edge_id(i)));
        src.push_back(gr.source(half_edge_id(i)));
    }
    for (auto m : moved) {
        src[idx(m)] = w;
    }
    inv.push_back(half_edge_id(h + 1));
    inv.push_back(half_edge_id(h));
    src.push_back(v);
    src.push_back(w);
    auto genus = g.genera();
    genus[idx(v)] -= moved_genus;
    genus.push_back(moved_genus);
    std::vector<HalfEdgeId> legs;
    for (std::size_t k = 0; k < g.leg_count(); ++k) {
        legs.push_back(g.leg(k));
    }
    return GenusGraph(Graph(gr.vertex_count() + 1, std::move(inv), std::move(src)), std::move(genus),
                      std::move(legs), g.leg_names());
}

// Every stable one-edge degeneration at v, with repetitions.
std::vector<GenusGraph> raw_degenerations(const GenusGraph& g, VertexId v)
{
    std::vector<GenusGraph> out;
    const auto genus = g.genus(v);
    const auto hs = g.graph().half_edges_at(v);
    const auto k = hs.size();
    if (genus >= 1 && is_stable_vertex(genus - 1, k + 2)) {
        out.push_back(add_loop(g, v));
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<HalfEdgeId> moved;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask & (std::size_t{1} << i)) {
                moved.push_back(hs[i]);
            }
        }
        for (unsigned g2 = 0; g2 <= genus; ++g2) {
            if (is_stable_vertex(genus - g2, k - moved.size() + 1) && is_stable_vertex(g2, moved.size() + 1)) {
                out.push_back(split_vertex(g, v, moved, g2));
            }
        }
    }
    return out;
}

void append_unique(std::vector<GenusGraph>& out, std::set<std::string>& seen, std::vector<GenusGraph> candidates)
{
    for (auto& c : candidates) {
        if (seen.insert(canonical_form(c)).second) {
            out.push_back(std::move(c));
        }
    }
}

struct VertexKey {
    unsigned genus;
    std::vector<std::size_t> legs;
    std::size_t loops;
    std::size_t valence;

    auto operator<=>(const VertexKey&) const = default;
};

class Canonizer {
public:
    explicit Canonizer(const GenusGraph& g) : g_(g), n_(g.vertex_count()), adj_(n_ * n_, 0)
    {
        const auto& gr = g.graph();
        std::vector<VertexKey> keys(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            keys[v].genus = g.genus(vertex_id(v));
            keys[v].valence = gr.valence(vertex_id(v));
        }
        for (std::size_t k = 0; k < g.leg_count(); ++k) {
            keys[idx(gr.source(g.leg(k)))].legs.push_back(k);
        }
        for (auto [a, b] : gr.internal_edges()) {
            auto u = idx(gr.source(a));
            auto w = idx(gr.source(b));
            if (u == w) {
                keys[u].loops += 1;
            } else {
                adj_[u * n_ + w] += 1;
                adj_[w * n_ + u] += 1;
            }
        }
        keys_ = keys;
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<std::size_t> colors(n_);
        for (std::size_t v = 0; v < n_; ++v) {
            colors[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
        }
        search(refine(std::move(colors)));
    }

    const std::string& result() const { return best_; }

private:
    // Equitable refinement; colors stay ordered consistently with the input order.
    std::vector<std::size_t> refine(std::vector<std::size_t> colors) const
    {
        for (;;) {
            using Sig = std::pair<std::size_t, std::vector<std::pair<std::size_t, unsigned>>>;
            std::vector<Sig> sig(n_);
            for (std::size_t v = 0; v < n_; ++v) {
                sig[v].first = colors[v];
                for (std::size_t w = 0; w < n_; ++w) {
                    if (adj_[v * n_ + w]) {
                        sig[v].second.emplace_back(colors[w], adj_[v * n_ + w]);
                    }
                }
                std::sort(sig[v].second.begin(), sig[v].second.end());
            }
            auto sorted = sig;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            std::vector<std::size_t> next(n_);
            for (std::size_t v = 0; v < n_; ++v) {
                next[v] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
            }
            if (count_colors(next) == count_colors(colors)) {
                return next;
            }
            colors = std::move(next);
        }
    }

    static std::size_t count_colors(const std::vector<std::size_t>& c)
    {
        return std::set<std::size_t>(c.begin(), c.end()).size();
    }

    void search(const std::vector<std::size_t>& colors)
    {
        // First smallest non-singleton cell.
        std::map<std::size_t, std::vector<std::size_t>> cells;
        for (std::size_t v = 0; v < n_; ++v) {
            cells[colors[v]].push_back(v);
        }
        const std::vector<std::size_t>* target = nullptr;
        for (const auto& [c, members] : cells) {
            if (members.size() > 1 && (!target || members.size() < target->size())) {
                target = &members;
            }
        }
        if (!target) {
            std::vector<std::size_t> order(n_);
            for (std::size_t v = 0; v < n_; ++v) {
                order[colors[v]] = v;
            }
            auto enc = encode(order);
            if (best_.empty() || enc < best_) {
                best_ = std::move(enc);
            }
            return;
        }
        for (auto v : *target) {
            // Individualize v: it sorts just before the rest of its cell.
            std::vector<std::size_t> c(n_);
            for (std::size_t w = 0; w < n_; ++w) {
                c[w] = 2 * colors[w] + (w == v ? 0 : 1);
            }
            search(refine(std::move(c)));
        }
    }

    std::string encode(const std::vector<std::size_t>& order) const
    {
        std::ostringstream os;
        for (auto v : order) {
            const auto& k = keys_[v];
            os << 'g' << k.genus << 'l' << k.loops << '[';
            for (auto leg : k.legs) {
                os << leg << ':' << g_.leg_name(leg) << ',';
            }
            os << ']';
        }
        os << '|';
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                os << adj_[order[i] * n_ + order[j]] << ',';
            }
        }
        return os.str();
    }

    const GenusGraph& g_;
    std::size_t n_;
    std::vector<unsigned> adj_;
    std::vector<VertexKey> keys_;
    std::string best_;
};

} // namespace

std::vector<GenusGraph> one_edge_degenerations_at(const GenusGraph& g, VertexId v)
{
    std::vector<GenusGraph> out;
    std::set<std::string> seen;
    append_unique(out, seen, raw_degenerations(g, v));
    return out;
}

std::vector<GenusGraph> one_edge_degenerations(const GenusGraph& g)
{
    std::vector<GenusGraph> out;
    std::set<std::string> seen;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        append_unique(out, seen, raw_degenerations(g, vertex_id(v)));
    }
    return out;
}

std::string canonical_form(const GenusGraph& g)
{
    return Canonizer(g).result();
}

bool isomorphic(const GenusGraph& a, const GenusGraph& b)
{
    return a.leg_count() == b.leg_count() && a.vertex_count() == b.vertex_count() &&
           canonical_form(a) == canonical_form(b);
}

GenusGraph caterpillar(unsigned genus, std::size_t legs)
{
    if (!is_stable_vertex(genus, legs)) {
        throw unstable_pair(genus, legs);
    }
    GenusGraphBuilder b;
    std::size_t next_leg = 0;
    auto leg = [&](VertexId v) {
        b.add_leg(v, std::to_string(next_leg));
        ++next_leg;
    };
    const std::size_t slots = legs + genus;
    // slot s < legs is a leg, otherwise a tadpole
    auto attach = [&](VertexId v, std::size_t slot) {
        if (slot < legs) {
            leg(v);
        } else {
            auto t = b.add_vertex(0);
            b.add_edge(v, t);
            b.add_edge(t, t);
        }
    };
    if (slots == 2) {
        if (legs == 1) { // (1, 1)
            auto v = b.add_vertex(0);
            leg(v);
            b.add_edge(v, v);
        } else { // (2, 0)
            auto v = b.add_vertex(0);
            auto w = b.add_vertex(0);
            b.add_edge(v, v);
            b.add_edge(v, w);
            b.add_edge(w, w);
        }
        return b.build();
    }
    const std::size_t spine = slots - 2;
    std::vector<VertexId> s;
    for (std::size_t i = 0; i < spine; ++i) {
        s.push_back(b.add_vertex(0));
    }
    std::size_t slot = 0;
    for (std::size_t i = 0; i < spine; ++i) {
        std::size_t take = (i == 0 ? 2 : 1) + (i + 1 == spine ? 1 : 0);
        for (std::size_t t = 0; t < take; ++t) {
            attach(s[i], slot++);
        }
        if (i + 1 < spine) {
            b.add_edge(s[i], s[i + 1]);
        }
    }
    return b.build();
}

GenusGraph random_stable_graph(unsigned genus, const std::vector<std::string>& leg_names, std::mt19937_64& rng)
{
    const auto n = leg_names.size();
    if (!is_stable_pair(genus, n)) {
        throw unstable_pair(genus, n);
    }
    auto g = GenusGraph::single_vertex(genus, leg_names);
    const std::size_t max_edges = 3 * genus + n >= 3 ? 3 * genus + n - 3 : 0;
    auto steps = std::uniform_int_distribution<std::size_t>(0, max_edges)(rng);
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<GenusGraph> candidates;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            auto more = raw_degenerations(g, vertex_id(v));
            std::move(more.begin(), more.end(), std::back_inserter(candidates));
        }
        if (candidates.empty()) {
            break;
        }
        g = std::move(candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)]);
    }
    return g;
}

} // namespace modfunctor
