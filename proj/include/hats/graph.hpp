#ifndef HATS_GRAPH_HPP
#define HATS_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "hats/common.hpp"

namespace hats {

// Directed visibility graph on dense vertices 0..n-1. An arc u->v means
// "u sees v". Undirected edges are stored as both arcs. Labels are metadata
// only; all internal logic works on indices.
class VisibilityGraph {
public:
    VisibilityGraph() = default;
    explicit VisibilityGraph(int vertex_count);
    VisibilityGraph(int vertex_count, const std::vector<std::pair<Vertex, Vertex>>& arcs);

    int vertex_count() const { return int(out_.size()); }

    // Both throw on self-arcs or out-of-range endpoints.
    void add_arc(Vertex u, Vertex v);
    void add_edge(Vertex u, Vertex v); // arc pair u->v, v->u

    bool has_arc(Vertex u, Vertex v) const;

    const std::vector<Vertex>& out_neighbors(Vertex u) const { return out_[u]; }
    const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_[v]; }

    std::vector<std::pair<Vertex, Vertex>> arcs() const;
    std::size_t arc_count() const;

    // True when every arc has its reverse.
    bool is_symmetric() const;
    // Complete as an undirected graph: every ordered pair of distinct
    // vertices is an arc.
    bool is_complete() const;

    bool operator==(const VisibilityGraph& o) const { return out_ == o.out_; }
    bool operator!=(const VisibilityGraph& o) const { return !(*this == o); }

    std::vector<std::string> labels; // optional; empty or size n

private:
    void check_vertex(Vertex v) const;

    std::vector<std::vector<Vertex>> out_; // sorted ascending
    std::vector<std::vector<Vertex>> in_;  // sorted ascending
};

// Strongly connected components in topological order: for every arc u->v
// with u, v in different components, u's component comes first. Vertices
// inside a component are sorted ascending.
std::vector<std::vector<Vertex>> condensation(const VisibilityGraph& g);

// Subgraph induced by `kept` (deduplicated, sorted ascending); arcs with both
// endpoints kept survive, relabeled by position in the sorted set.
VisibilityGraph induced_subgraph(const VisibilityGraph& g, std::vector<Vertex> kept);

} // namespace hats

#endif
