#include "modfunctor/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "modfunctor/errors.hpp"

namespace modfunctor {

namespace {

template <typename Id>
bool is_bijection(const std::vector<Id>& map, std::size_t size)
{
    if (map.size() != size) {
        return false;
    }
    std::vector<bool> hit(size, false);
    for (auto x : map) {
        auto i = static_cast<std::size_t>(x);
        if (i >= size || hit[i]) {
            return false;
        }
        hit[i] = true;
    }
    return true;
}

template <typename Id>
std::vector<Id> invert_ids(const std::vector<Id>& map)
{
    std::vector<Id> inv(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        inv[static_cast<std::size_t>(map[i])] = static_cast<Id>(i);
    }
    return inv;
}

} // namespace

Graph::Graph(std::size_t vertex_count, std::vector<HalfEdgeId> involution, std::vector<VertexId> source)
    : vertex_count_(vertex_count), involution_(std::move(involution)), source_(std::move(source))
{
    if (involution_.size() != source_.size()) {
        throw invalid_graph("involution and source maps have different domains");
    }
    for (std::size_t h = 0; h < involution_.size(); ++h) {
        auto j = idx(involution_[h]);
        if (j >= involution_.size() || idx(involution_[j]) != h) {
            throw invalid_graph("half-edge " + std::to_string(h) + ": involution is not an involution");
        }
        if (idx(source_[h]) >= vertex_count_) {
            throw invalid_graph("half-edge " + std::to_string(h) + ": source vertex out of range");
        }
    }
}

Graph Graph::corollas(const std::vector<std::size_t>& legs_per_vertex)
{
    std::vector<HalfEdgeId> inv;
    std::vector<VertexId> src;
    for (std::size_t v = 0; v < legs_per_vertex.size(); ++v) {
        for (std::size_t k = 0; k < legs_per_vertex[v]; ++k) {
            inv.push_back(half_edge_id(inv.size()));
            src.push_back(vertex_id(v));
        }
    }
    return Graph(legs_per_vertex.size(), std::move(inv), std::move(src));
}

std::vector<HalfEdgeId> Graph::legs() const
{
    std::vector<HalfEdgeId> out;
    for (std::size_t h = 0; h < involution_.size(); ++h) {
        if (idx(involution_[h]) == h) {
            out.push_back(half_edge_id(h));
        }
    }
    return out;
}

std::vector<std::pair<HalfEdgeId, HalfEdgeId>> Graph::internal_edges() const
{
    std::vector<std::pair<HalfEdgeId, HalfEdgeId>> out;
    for (std::size_t h = 0; h < involution_.size(); ++h) {
        if (idx(involution_[h]) > h) {
            out.emplace_back(half_edge_id(h), involution_[h]);
        }
    }
    return out;
}

std::vector<HalfEdgeId> Graph::half_edges_at(VertexId v) const
{
    std::vector<HalfEdgeId> out;
    for (std::size_t h = 0; h < source_.size(); ++h) {
        if (source_[h] == v) {
            out.push_back(half_edge_id(h));
        }
    }
    return out;
}

std::size_t Graph::valence(VertexId v) const
{
    return static_cast<std::size_t>(std::count(source_.begin(), source_.end(), v));
}

std::vector<std::size_t> Graph::components() const
{
    std::vector<std::size_t> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t h = 0; h < involution_.size(); ++h) {
        auto a = find(idx(source_[h]));
        auto b = find(idx(source_[idx(involution_[h])]));
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::vector<std::size_t> out(vertex_count_);
    std::vector<std::size_t> number(vertex_count_, vertex_count_);
    std::size_t next = 0;
    for (std::size_t v = 0; v < vertex_count_; ++v) {
        auto r = find(v);
        if (number[r] == vertex_count_) {
            number[r] = next++;
        }
        out[v] = number[r];
    }
    return out;
}

std::size_t Graph::component_count() const
{
    auto c = components();
    return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
}

std::size_t Graph::first_betti_number() const
{
    return internal_edges().size() + component_count() - vertex_count_;
}

bool Graph::is_corolla_union() const
{
    for (std::size_t h = 0; h < involution_.size(); ++h) {
        if (idx(involution_[h]) != h) {
            return false;
        }
    }
    return true;
}

Graph nu(const Graph& g)
{
    std::vector<HalfEdgeId> inv(g.half_edge_count());
    std::vector<VertexId> src(g.half_edge_count());
    for (std::size_t h = 0; h < inv.size(); ++h) {
        inv[h] = half_edge_id(h);
        src[h] = g.source(half_edge_id(h));
    }
    return Graph(g.vertex_count(), std::move(inv), std::move(src));
}

Contraction pi0_map(const Graph& g)
{
    auto comp = g.components();
    Contraction out;
    out.vertex_map.reserve(comp.size());
    for (auto c : comp) {
        out.vertex_map.push_back(vertex_id(c));
    }
    out.leg_map.assign(g.half_edge_count(), std::nullopt);
    std::vector<HalfEdgeId> inv;
    std::vector<VertexId> src;
    for (auto h : g.legs()) {
        out.leg_map[idx(h)] = half_edge_id(inv.size());
        inv.push_back(half_edge_id(inv.size()));
        src.push_back(out.vertex_map[idx(g.source(h))]);
    }
    out.graph = Graph(g.component_count(), std::move(inv), std::move(src));
    return out;
}

Graph pi0(const Graph& g)
{
    return pi0_map(g).graph;
}

CorollaIso CorollaIso::identity(const Graph& object)
{
    CorollaIso iso;
    for (std::size_t v = 0; v < object.vertex_count(); ++v) {
        iso.vertex_map.push_back(vertex_id(v));
    }
    for (std::size_t h = 0; h < object.half_edge_count(); ++h) {
        iso.half_edge_map.push_back(half_edge_id(h));
    }
    return iso;
}

bool CorollaIso::valid_between(const Graph& from, const Graph& to) const
{
    if (from.vertex_count() != to.vertex_count() || from.half_edge_count() != to.half_edge_count()) {
        return false;
    }
    if (!is_bijection(vertex_map, from.vertex_count()) || !is_bijection(half_edge_map, from.half_edge_count())) {
        return false;
    }
    for (std::size_t h = 0; h < from.half_edge_count(); ++h) {
        if (to.source(half_edge_map[h]) != vertex_map[idx(from.source(half_edge_id(h)))]) {
            return false;
        }
    }
    return true;
}

CorollaIso CorollaIso::inverse() const
{
    return {invert_ids(vertex_map), invert_ids(half_edge_map)};
}

CorollaIso CorollaIso::then(const CorollaIso& next) const
{
    CorollaIso out;
    for (auto v : vertex_map) {
        out.vertex_map.push_back(next.vertex_map[idx(v)]);
    }
    for (auto h : half_edge_map) {
        out.half_edge_map.push_back(next.half_edge_map[idx(h)]);
    }
    return out;
}

GraphMorphism::GraphMorphism(Graph source, Graph graph, Graph target, CorollaIso phi0, CorollaIso phi1)
    : source_(std::move(source)), graph_(std::move(graph)), target_(std::move(target)), phi0_(std::move(phi0)),
      phi1_(std::move(phi1))
{
    if (!source_.is_corolla_union() || !target_.is_corolla_union()) {
        throw boundary_mismatch("source and target must be disjoint unions of corollas");
    }
    if (!phi0_.valid_between(source_, nu(graph_))) {
        throw boundary_mismatch("phi0 is not an isomorphism onto nu(graph)");
    }
    if (!phi1_.valid_between(pi0(graph_), target_)) {
        throw boundary_mismatch("phi1 is not an isomorphism from pi0(graph)");
    }
}

GraphMorphism GraphMorphism::identity(const Graph& object)
{
    return GraphMorphism(object, object, object, CorollaIso::identity(object), CorollaIso::identity(object));
}

GraphMorphism GraphMorphism::relabeling(const std::vector<std::size_t>& perm)
{
    auto corolla = Corolla{perm.size()}.graph();
    auto phi1 = CorollaIso::identity(corolla);
    for (std::size_t k = 0; k < perm.size(); ++k) {
        phi1.half_edge_map[k] = half_edge_id(perm[k]);
    }
    return GraphMorphism(corolla, corolla, corolla, CorollaIso::identity(corolla), std::move(phi1));
}

GraphMorphism GraphMorphism::gluing(const Graph& object, const std::vector<std::pair<HalfEdgeId, HalfEdgeId>>& pairs)
{
    if (!object.is_corolla_union()) {
        throw boundary_mismatch("gluing expects a disjoint union of corollas");
    }
    std::vector<HalfEdgeId> inv;
    std::vector<VertexId> src;
    for (std::size_t h = 0; h < object.half_edge_count(); ++h) {
        inv.push_back(half_edge_id(h));
        src.push_back(object.source(half_edge_id(h)));
    }
    for (auto [a, b] : pairs) {
        if (idx(a) >= inv.size() || idx(b) >= inv.size() || a == b || inv[idx(a)] != a || inv[idx(b)] != b) {
            throw boundary_mismatch("gluing pairs must be distinct, unused half-edges");
        }
        inv[idx(a)] = b;
        inv[idx(b)] = a;
    }
    Graph graph(object.vertex_count(), std::move(inv), std::move(src));
    auto target = pi0(graph);
    auto phi1 = CorollaIso::identity(target);
    return GraphMorphism(object, std::move(graph), std::move(target), CorollaIso::identity(object), std::move(phi1));
}

GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& second)
{
    if (first.target() != second.source()) {
        throw boundary_mismatch("target of the first morphism differs from the source of the second");
    }
    const auto& g1 = first.graph();
    const auto& g2 = second.graph();
    const auto c1 = pi0_map(g1);
    const auto c2 = pi0_map(g2);
    const auto legs1 = g1.legs(); // legs1[p] is the half-edge behind leg p of pi0(g1)
    const auto phi1_inv = first.phi1().inverse();
    const auto phi0_inv = second.phi0().inverse();

    // Where a leg of g1 lands among the half-edges of g2.
    auto landing = [&](HalfEdgeId leg) {
        auto b = first.phi1().half_edge_map[idx(*c1.leg_map[idx(leg)])];
        return second.phi0().half_edge_map[idx(b)];
    };

    std::vector<HalfEdgeId> inv(g1.half_edge_count());
    std::vector<VertexId> src(g1.half_edge_count());
    for (std::size_t h = 0; h < inv.size(); ++h) {
        auto he = half_edge_id(h);
        src[h] = g1.source(he);
        inv[h] = g1.involution(he);
        if (!g1.is_leg(he)) {
            continue;
        }
        auto target = landing(he);
        if (g2.is_leg(target)) {
            continue;
        }
        auto partner_b = phi0_inv.half_edge_map[idx(g2.involution(target))];
        auto partner_leg = phi1_inv.half_edge_map[idx(partner_b)];
        inv[h] = legs1[idx(partner_leg)];
    }
    Graph composite(g1.vertex_count(), std::move(inv), std::move(src));

    const auto cc = pi0_map(composite);
    CorollaIso phi1;
    phi1.vertex_map.assign(cc.graph.vertex_count(), vertex_id(0));
    std::vector<bool> seen(cc.graph.vertex_count(), false);
    for (std::size_t v = 0; v < g1.vertex_count(); ++v) {
        auto b = first.phi1().vertex_map[idx(c1.vertex_map[v])];
        auto w = second.phi0().vertex_map[idx(b)];
        auto image = second.phi1().vertex_map[idx(c2.vertex_map[idx(w)])];
        auto comp = idx(cc.vertex_map[v]);
        if (seen[comp] && phi1.vertex_map[comp] != image) {
            throw boundary_mismatch("composite component maps to two target vertices");
        }
        seen[comp] = true;
        phi1.vertex_map[comp] = image;
    }
    phi1.half_edge_map.assign(cc.graph.half_edge_count(), half_edge_id(0));
    for (auto leg : composite.legs()) {
        auto h2 = landing(leg);
        phi1.half_edge_map[idx(*cc.leg_map[idx(leg)])] = second.phi1().half_edge_map[idx(*c2.leg_map[idx(h2)])];
    }
    return GraphMorphism(first.source(), std::move(composite), second.target(), first.phi0(), std::move(phi1));
}

bool equivalent(const GraphMorphism& a, const GraphMorphism& b)
{
    if (a.source() != b.source() || a.target() != b.target()) {
        return false;
    }
    const auto& ga = a.graph();
    const auto& gb = b.graph();
    if (ga.vertex_count() != gb.vertex_count() || ga.half_edge_count() != gb.half_edge_count()) {
        return false;
    }
    // The identifications with the source pin the isomorphism down completely.
    const auto psi = a.phi0().inverse().then(b.phi0());
    for (std::size_t h = 0; h < ga.half_edge_count(); ++h) {
        auto he = half_edge_id(h);
        if (psi.half_edge_map[idx(ga.involution(he))] != gb.involution(psi.half_edge_map[h])) {
            return false;
        }
        if (gb.source(psi.half_edge_map[h]) != psi.vertex_map[idx(ga.source(he))]) {
            return false;
        }
    }
    const auto ca = pi0_map(ga);
    const auto cb = pi0_map(gb);
    for (std::size_t v = 0; v < ga.vertex_count(); ++v) {
        auto via_a = a.phi1().vertex_map[idx(ca.vertex_map[v])];
        auto via_b = b.phi1().vertex_map[idx(cb.vertex_map[idx(psi.vertex_map[v])])];
        if (via_a != via_b) {
            return false;
        }
    }
    for (auto leg : ga.legs()) {
        auto via_a = a.phi1().half_edge_map[idx(*ca.leg_map[idx(leg)])];
        auto via_b = b.phi1().half_edge_map[idx(*cb.leg_map[idx(psi.half_edge_map[idx(leg)])])];
        if (via_a != via_b) {
            return false;
        }
    }
    return true;
}

} // namespace modfunctor
