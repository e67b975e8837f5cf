#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "modfunctor/graph.hpp"
#include "modfunctor/stable_graph.hpp"

namespace modfunctor::testing {

inline Graph relabel(const Graph& g, const std::vector<std::size_t>& pv, const std::vector<std::size_t>& ph)
{
    std::vector<HalfEdgeId> inv(g.half_edge_count());
    std::vector<VertexId> src(g.half_edge_count());
    for (std::size_t h = 0; h < g.half_edge_count(); ++h) {
        inv[ph[h]] = half_edge_id(ph[idx(g.involution(half_edge_id(h)))]);
        src[ph[h]] = vertex_id(pv[idx(g.source(half_edge_id(h)))]);
    }
    return Graph(g.vertex_count(), std::move(inv), std::move(src));
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng)
{
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline CorollaIso iso_of(const std::vector<std::size_t>& pv, const std::vector<std::size_t>& ph)
{
    CorollaIso iso;
    for (auto v : pv) {
        iso.vertex_map.push_back(vertex_id(v));
    }
    for (auto h : ph) {
        iso.half_edge_map.push_back(half_edge_id(h));
    }
    return iso;
}

inline Graph random_object(std::mt19937_64& rng, std::size_t max_vertices = 4, std::size_t max_legs = 4)
{
    std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
    std::uniform_int_distribution<std::size_t> nl(0, max_legs);
    std::vector<std::size_t> legs(nv(rng));
    for (auto& l : legs) {
        l = nl(rng);
    }
    return Graph::corollas(legs);
}

// Uniformly relabeled gluing of a random set of half-edge pairs of `object`,
// followed by a random identification of the target.
inline GraphMorphism random_morphism_from(const Graph& object, std::mt19937_64& rng)
{
    auto order = random_permutation(object.half_edge_count(), rng);
    std::bernoulli_distribution glue(0.5);
    std::vector<HalfEdgeId> inv(object.half_edge_count());
    std::vector<VertexId> src(object.half_edge_count());
    for (std::size_t h = 0; h < inv.size(); ++h) {
        inv[h] = half_edge_id(h);
        src[h] = object.source(half_edge_id(h));
    }
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
        if (glue(rng)) {
            inv[order[i]] = half_edge_id(order[i + 1]);
            inv[order[i + 1]] = half_edge_id(order[i]);
        }
    }
    Graph g0(object.vertex_count(), std::move(inv), std::move(src));
    auto pv = random_permutation(g0.vertex_count(), rng);
    auto ph = random_permutation(g0.half_edge_count(), rng);
    auto graph = relabel(g0, pv, ph);
    auto t0 = pi0(graph);
    auto qv = random_permutation(t0.vertex_count(), rng);
    auto qh = random_permutation(t0.half_edge_count(), rng);
    auto target = relabel(t0, qv, qh);
    return GraphMorphism(object, graph, target, iso_of(pv, ph), iso_of(qv, qh));
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices = 6, std::size_t max_half_edges = 10)
{
    std::uniform_int_distribution<std::size_t> nv(1, max_vertices);
    std::uniform_int_distribution<std::size_t> nh(0, max_half_edges);
    auto v = nv(rng);
    auto h = nh(rng);
    std::uniform_int_distribution<std::size_t> pick(0, v - 1);
    std::vector<VertexId> src(h);
    for (auto& s : src) {
        s = vertex_id(pick(rng));
    }
    std::vector<HalfEdgeId> inv(h);
    for (std::size_t i = 0; i < h; ++i) {
        inv[i] = half_edge_id(i);
    }
    auto order = random_permutation(h, rng);
    std::bernoulli_distribution glue(0.6);
    for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
        if (glue(rng)) {
            inv[order[i]] = half_edge_id(order[i + 1]);
            inv[order[i + 1]] = half_edge_id(order[i]);
        }
    }
    return Graph(v, std::move(inv), std::move(src));
}

// Isomorphism fixing the marked points, by trying every vertex bijection.
inline bool brute_force_isomorphic(const GenusGraph& a, const GenusGraph& b)
{
    const auto n = a.vertex_count();
    if (n != b.vertex_count() || a.leg_count() != b.leg_count() ||
        a.graph().half_edge_count() != b.graph().half_edge_count()) {
        return false;
    }
    auto multiplicities = [n](const GenusGraph& g) {
        std::vector<unsigned> m(n * n, 0);
        for (auto [x, y] : g.graph().internal_edges()) {
            auto u = idx(g.graph().source(x));
            auto w = idx(g.graph().source(y));
            m[u * n + w] += 1;
            if (u != w) {
                m[w * n + u] += 1;
            }
        }
        return m;
    };
    const auto ma = multiplicities(a);
    const auto mb = multiplicities(b);
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            ok = a.genus(vertex_id(v)) == b.genus(vertex_id(p[v]));
        }
        for (std::size_t k = 0; k < a.leg_count() && ok; ++k) {
            ok = p[idx(a.graph().source(a.leg(k)))] == idx(b.graph().source(b.leg(k)));
        }
        for (std::size_t u = 0; u < n && ok; ++u) {
            for (std::size_t w = 0; w < n && ok; ++w) {
                ok = ma[u * n + w] == mb[p[u] * n + p[w]];
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

// Every stable one-edge degeneration at v, built from scratch and deduplicated
// by brute-force isomorphism.
inline std::vector<GenusGraph> oracle_degenerations(const GenusGraph& g, VertexId v)
{
    const auto& gr = g.graph();
    const auto hs = gr.half_edges_at(v);
    const auto k = hs.size();
    const auto gv = g.genus(v);

    // side[h] = 0 keeps h at v, 1 moves it to the new vertex (or marks a loop when new_vertex is false)
    auto rebuild = [&](const std::vector<int>& side, unsigned moved_genus, bool new_vertex) {
        GenusGraphBuilder b;
        std::vector<VertexId> map;
        for (std::size_t u = 0; u < g.vertex_count(); ++u) {
            unsigned genus = g.genus(vertex_id(u));
            if (vertex_id(u) == v) {
                genus = new_vertex ? gv - moved_genus : gv - 1;
            }
            map.push_back(b.add_vertex(genus));
        }
        VertexId extra = new_vertex ? b.add_vertex(moved_genus) : vertex_id(0);
        auto where = [&](HalfEdgeId h) {
            if (gr.source(h) == v && new_vertex && side[idx(h)] == 1) {
                return extra;
            }
            return map[idx(gr.source(h))];
        };
        for (std::size_t i = 0; i < g.leg_count(); ++i) {
            b.add_leg(where(g.leg(i)), g.leg_name(i));
        }
        for (auto [x, y] : gr.internal_edges()) {
            b.add_edge(where(x), where(y));
        }
        if (new_vertex) {
            b.add_edge(map[idx(v)], extra);
        } else {
            b.add_edge(map[idx(v)], map[idx(v)]);
        }
        return b.build();
    };

    std::vector<GenusGraph> all;
    if (gv >= 1 && 2 * (gv - 1) + k + 2 > 2) {
        all.push_back(rebuild(std::vector<int>(gr.half_edge_count(), 0), 0, false));
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        std::vector<int> side(gr.half_edge_count(), 0);
        std::size_t moved = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (mask >> i & 1) {
                side[idx(hs[i])] = 1;
                ++moved;
            }
        }
        for (unsigned g2 = 0; g2 <= gv; ++g2) {
            unsigned g1 = gv - g2;
            if (2 * g1 + (k - moved + 1) > 2 && 2 * g2 + (moved + 1) > 2) {
                all.push_back(rebuild(side, g2, true));
            }
        }
    }
    std::vector<GenusGraph> unique;
    for (auto& c : all) {
        bool dup = false;
        for (const auto& u : unique) {
            dup = dup || brute_force_isomorphic(c, u);
        }
        if (!dup) {
            unique.push_back(std::move(c));
        }
    }
    return unique;
}

} // namespace modfunctor::testing
