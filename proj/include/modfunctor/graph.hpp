#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace modfunctor {

enum class VertexId : std::uint32_t {};
enum class HalfEdgeId : std::uint32_t {};

constexpr std::size_t idx(VertexId v) noexcept { return static_cast<std::size_t>(v); }
constexpr std::size_t idx(HalfEdgeId h) noexcept { return static_cast<std::size_t>(h); }
constexpr VertexId vertex_id(std::size_t i) noexcept { return static_cast<VertexId>(i); }
constexpr HalfEdgeId half_edge_id(std::size_t i) noexcept { return static_cast<HalfEdgeId>(i); }

// Costello graph (V, H, i, s): half-edges fixed by the involution are legs,
// 2-cycles are internal edges.
class Graph {
public:
    Graph() = default;
    // Throws invalid_graph if the involution is not an involution or a source is out of range.
    Graph(std::size_t vertex_count, std::vector<HalfEdgeId> involution, std::vector<VertexId> source);

    // Disjoint union of corollas with the given leg counts; half-edges numbered vertex by vertex.
    static Graph corollas(const std::vector<std::size_t>& legs_per_vertex);

    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t half_edge_count() const noexcept { return involution_.size(); }
    HalfEdgeId involution(HalfEdgeId h) const { return involution_[idx(h)]; }
    VertexId source(HalfEdgeId h) const { return source_[idx(h)]; }
    bool is_leg(HalfEdgeId h) const { return involution_[idx(h)] == h; }

    std::vector<HalfEdgeId> legs() const;
    // One entry per internal edge, (h, i(h)) with h < i(h), ordered by h.
    std::vector<std::pair<HalfEdgeId, HalfEdgeId>> internal_edges() const;
    std::vector<HalfEdgeId> half_edges_at(VertexId v) const;
    std::size_t valence(VertexId v) const;

    // Component index of every vertex; components are numbered by their smallest vertex.
    std::vector<std::size_t> components() const;
    std::size_t component_count() const;
    // |E| - |V| + #components
    std::size_t first_betti_number() const;

    // True when the involution is the identity.
    bool is_corolla_union() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::size_t vertex_count_ = 0;
    std::vector<HalfEdgeId> involution_;
    std::vector<VertexId> source_;
};

// One vertex, finitely many legs.
struct Corolla {
    std::size_t legs = 0;

    Graph graph() const { return Graph::corollas({legs}); }
};

// Cut every internal edge.
Graph nu(const Graph& g);

struct Contraction {
    Graph graph;
    std::vector<VertexId> vertex_map;                 // vertex of g -> vertex (component) of graph
    std::vector<std::optional<HalfEdgeId>> leg_map;   // half-edge of g -> leg of graph, if a leg
};

// Contract every internal edge: one vertex per component, legs kept in
// increasing half-edge order.
Contraction pi0_map(const Graph& g);
Graph pi0(const Graph& g);

// Isomorphism between disjoint unions of corollas.
struct CorollaIso {
    std::vector<VertexId> vertex_map;
    std::vector<HalfEdgeId> half_edge_map;

    static CorollaIso identity(const Graph& object);
    // Checks bijectivity and s_to(h') = v(s_from(h)).
    bool valid_between(const Graph& from, const Graph& to) const;
    CorollaIso inverse() const;
    CorollaIso then(const CorollaIso& next) const;

    friend bool operator==(const CorollaIso&, const CorollaIso&) = default;
};

// Morphism source -> target of the graph category: a graph together with
// identifications source ~ nu(graph) and pi0(graph) ~ target.
class GraphMorphism {
public:
    // Throws boundary_mismatch if an identification is not an isomorphism of corolla unions.
    GraphMorphism(Graph source, Graph graph, Graph target, CorollaIso phi0, CorollaIso phi1);

    static GraphMorphism identity(const Graph& object);
    // Relabeling of the legs of the corolla with n legs: leg k goes to leg perm[k].
    static GraphMorphism relabeling(const std::vector<std::size_t>& perm);
    // Glue the object's half-edges pairwise (each pair becomes an internal edge); target is pi0.
    static GraphMorphism gluing(const Graph& object, const std::vector<std::pair<HalfEdgeId, HalfEdgeId>>& pairs);

    const Graph& source() const noexcept { return source_; }
    const Graph& target() const noexcept { return target_; }
    const Graph& graph() const noexcept { return graph_; }
    const CorollaIso& phi0() const noexcept { return phi0_; }
    const CorollaIso& phi1() const noexcept { return phi1_; }

private:
    Graph source_;
    Graph graph_;
    Graph target_;
    CorollaIso phi0_;
    CorollaIso phi1_;
};

// second after first. Throws boundary_mismatch unless first.target() == second.source().
GraphMorphism compose(const GraphMorphism& first, const GraphMorphism& second);

// Equal as morphisms: some graph isomorphism commutes with both identifications.
bool equivalent(const GraphMorphism& a, const GraphMorphism& b);

} // namespace modfunctor
