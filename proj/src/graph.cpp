#include "hats/graph.hpp"

#include <algorithm>

namespace hats {

VisibilityGraph::VisibilityGraph(int vertex_count) {
    if (vertex_count <= 0) throw error("graph: vertex count must be positive");
    out_.resize(vertex_count);
    in_.resize(vertex_count);
}

VisibilityGraph::VisibilityGraph(int vertex_count,
                                 const std::vector<std::pair<Vertex, Vertex>>& arcs)
    : VisibilityGraph(vertex_count) {
    for (auto [u, v] : arcs) add_arc(u, v);
}

void VisibilityGraph::check_vertex(Vertex v) const {
    if (v < 0 || v >= vertex_count())
        throw error("graph: vertex " + std::to_string(v) + " out of range");
}

void VisibilityGraph::add_arc(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw error("graph: self-arc at " + std::to_string(u));
    auto& o = out_[u];
    auto it = std::lower_bound(o.begin(), o.end(), v);
    if (it != o.end() && *it == v) return;
    o.insert(it, v);
    auto& i = in_[v];
    i.insert(std::lower_bound(i.begin(), i.end(), u), u);
}

void VisibilityGraph::add_edge(Vertex u, Vertex v) {
    add_arc(u, v);
    add_arc(v, u);
}

bool VisibilityGraph::has_arc(Vertex u, Vertex v) const {
    if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count()) return false;
    return std::binary_search(out_[u].begin(), out_[u].end(), v);
}

std::vector<std::pair<Vertex, Vertex>> VisibilityGraph::arcs() const {
    std::vector<std::pair<Vertex, Vertex>> result;
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : out_[u]) result.emplace_back(u, v);
    return result;
}

std::size_t VisibilityGraph::arc_count() const {
    std::size_t total = 0;
    for (const auto& o : out_) total += o.size();
    return total;
}

bool VisibilityGraph::is_symmetric() const {
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : out_[u])
            if (!has_arc(v, u)) return false;
    return true;
}

bool VisibilityGraph::is_complete() const {
    for (Vertex u = 0; u < vertex_count(); ++u)
        if (int(out_[u].size()) != vertex_count() - 1) return false;
    return true;
}

// Iterative Tarjan; components pop in reverse topological order.
std::vector<std::vector<Vertex>> condensation(const VisibilityGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<Vertex> stack;
    std::vector<std::vector<Vertex>> comps;
    int next_index = 0;

    struct Frame {
        Vertex v;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        call.push_back({root, 0});
        while (!call.empty()) {
            Frame& f = call.back();
            Vertex v = f.v;
            if (f.edge == 0) {
                index[v] = low[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            const auto& succ = g.out_neighbors(v);
            bool descended = false;
            while (f.edge < succ.size()) {
                Vertex w = succ[f.edge++];
                if (index[w] == -1) {
                    call.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<Vertex> comp;
                Vertex w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                comps.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                Vertex parent = call.back().v;
                low[parent] = std::min(low[parent], low[v]);
            }
        }
    }
    std::reverse(comps.begin(), comps.end());
    return comps;
}

VisibilityGraph induced_subgraph(const VisibilityGraph& g, std::vector<Vertex> kept) {
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) throw error("induced subgraph: empty vertex set");
    std::vector<int> rank(g.vertex_count(), -1);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] < 0 || kept[i] >= g.vertex_count())
            throw error("induced subgraph: vertex out of range");
        rank[kept[i]] = int(i);
    }
    VisibilityGraph sub(int(kept.size()));
    for (Vertex u : kept)
        for (Vertex v : g.out_neighbors(u))
            if (rank[v] != -1) sub.add_arc(rank[u], rank[v]);
    if (!g.labels.empty()) {
        sub.labels.reserve(kept.size());
        for (Vertex u : kept) sub.labels.push_back(g.labels[u]);
    }
    return sub;
}

} // namespace hats
