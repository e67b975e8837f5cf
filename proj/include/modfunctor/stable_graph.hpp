#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "modfunctor/graph.hpp"

namespace modfunctor {

// (g, n) other than (0,0), (0,1), (1,0).
constexpr bool is_stable_pair(unsigned genus, std::size_t legs) noexcept
{
    return !(genus == 0 && legs <= 1) && !(genus == 1 && legs == 0);
}

// Vertex of the dual graph of a stable nodal curve: 2g - 2 + valence > 0.
constexpr bool is_stable_vertex(unsigned genus, std::size_t valence) noexcept
{
    return 2 * genus + valence > 2;
}

// Graph with a genus at every vertex and named, ordered legs (the marked points).
// Leg k is the k-th marked point; names need not be unique.
class GenusGraph {
public:
    GenusGraph() = default;
    GenusGraph(Graph graph, std::vector<unsigned> genus, std::vector<HalfEdgeId> leg_order,
               std::vector<std::string> leg_names);

    static GenusGraph single_vertex(unsigned genus, std::vector<std::string> leg_names);

    const Graph& graph() const noexcept { return graph_; }
    std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
    unsigned genus(VertexId v) const { return genus_[idx(v)]; }
    const std::vector<unsigned>& genera() const noexcept { return genus_; }

    std::size_t leg_count() const noexcept { return leg_order_.size(); }
    HalfEdgeId leg(std::size_t k) const { return leg_order_[k]; }
    const std::string& leg_name(std::size_t k) const { return leg_names_[k]; }
    const std::vector<std::string>& leg_names() const noexcept { return leg_names_; }
    // Marked-point index of a leg half-edge, or leg_count() for internal half-edges.
    std::size_t leg_position(HalfEdgeId h) const { return leg_position_[idx(h)]; }

    // sum of vertex genera + first Betti number
    unsigned total_genus() const;
    bool vertex_stable(VertexId v) const { return is_stable_vertex(genus(v), graph_.valence(v)); }
    bool is_stable() const;
    // Throws unstable_pair for the first unstable vertex.
    void require_stable() const;

    friend bool operator==(const GenusGraph&, const GenusGraph&) = default;

private:
    Graph graph_;
    std::vector<unsigned> genus_;
    std::vector<HalfEdgeId> leg_order_;
    std::vector<std::string> leg_names_;
    std::vector<std::size_t> leg_position_;
};

// Incremental construction; half-edges are numbered in declaration order, so
// internal edges keep their declaration order.
class GenusGraphBuilder {
public:
    VertexId add_vertex(unsigned genus);
    void add_leg(VertexId v, std::string name);
    void add_edge(VertexId a, VertexId b);
    GenusGraph build() const;

private:
    std::vector<unsigned> genus_;
    std::vector<HalfEdgeId> involution_;
    std::vector<VertexId> source_;
    std::vector<HalfEdgeId> legs_;
    std::vector<std::string> names_;
};

// Stable-graph document: `vertex <id> genus <g>`, `leg <vertex_id> <label>`,
// `edge <vertex_id> <vertex_id>`; `#` starts a comment.
GenusGraph parse_genus_graph(std::string_view text);

// Contract one internal edge (index into graph().internal_edges()). A loop adds
// one to its vertex genus; any other edge merges its endpoints, summing genera.
GenusGraph contract_edge(const GenusGraph& g, std::size_t edge);

// All stable graphs with one more edge that contract back to g, up to
// isomorphism fixing the marked points. The new edge is always the last one.
std::vector<GenusGraph> one_edge_degenerations(const GenusGraph& g);
std::vector<GenusGraph> one_edge_degenerations_at(const GenusGraph& g, VertexId v);

// Total order key: equal iff isomorphic by a map fixing every marked point.
std::string canonical_form(const GenusGraph& g);
bool isomorphic(const GenusGraph& a, const GenusGraph& b);

// Trivalent genus-0 graph for the stable pair (g, n) with 2g - 2 + n > 0: a
// caterpillar whose spine carries the n legs first and then g tadpoles (an edge
// ending in a vertex with a self-loop). Legs are named by position.
GenusGraph caterpillar(unsigned genus, std::size_t legs);

// Random stable graph of total genus g with the given legs, reached from the
// one-vertex graph by a random number of random one-edge degenerations.
// (0, 2) admits no degeneration and always yields the single vertex.
GenusGraph random_stable_graph(unsigned genus, const std::vector<std::string>& leg_names, std::mt19937_64& rng);

} // namespace modfunctor
