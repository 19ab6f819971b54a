#include "hats/certificates.hpp"

#include <algorithm>

#include "hats/rational.hpp"

namespace hats {

namespace {

struct Violation {
    std::string path;
    std::string message;
};

class Checker {
public:
    explicit Checker(const CertCheckOptions& opts) : opts_(opts) {}

    CertCheckResult run(const LosingCertificate& root) {
        CertCheckResult result;
        try {
            check(root, "root");
        } catch (const Violation& v) {
            result.valid = false;
            result.violation_path = v.path;
            result.message = v.message;
        }
        result.trusted_brute_force = trusted_;
        result.solver_nodes = solver_nodes_;
        return result;
    }

private:
    [[noreturn]] static void fail(const std::string& path, const std::string& message) {
        throw Violation{path, message};
    }

    void expect(bool ok, const std::string& path, const std::string& message) {
        if (!ok) fail(path, message);
    }

    void check(const LosingCertificate& node, const std::string& path) {
        auto findings = validate_game(node.game);
        expect(findings.empty(), path,
               findings.empty() ? "" : "malformed game: " + findings.front());
        expect(!node.game.hint.has_value(), path, "certificates cover hint-free games only");

        switch (node.rule) {
            case CertRule::clique_deficit: return check_clique_deficit(node, path);
            case CertRule::brute_forced: return check_brute_forced(node, path);
            case CertRule::glue_at_vertex: return check_glue(node, path);
            case CertRule::add_half_edge: return check_add_half_edge(node, path);
            case CertRule::remove_strong_vertex: return check_remove_strong(node, path);
            case CertRule::scc_split: return check_scc_split(node, path);
            case CertRule::path_step: return check_path_step(node, path);
            case CertRule::hatness_increase: return check_hatness_increase(node, path);
        }
        fail(path, "unknown rule");
    }

    void check_children(const LosingCertificate& node, const std::string& path,
                        std::size_t expected) {
        expect(node.children.size() == expected, path,
               "rule needs " + std::to_string(expected) + " children, has " +
                   std::to_string(node.children.size()));
        for (std::size_t i = 0; i < node.children.size(); ++i)
            check(node.children[i], path + ".children[" + std::to_string(i) + "]");
    }

    void check_clique_deficit(const LosingCertificate& node, const std::string& path) {
        check_children(node, path, 0);
        expect(node.game.graph.is_complete(), path, "clique deficit needs a complete graph");
        Rational sum(0);
        for (Vertex v = 0; v < node.game.n(); ++v)
            sum += Rational(node.game.guesses[v], node.game.hatness[v]);
        expect(sum < Rational(1), path, "sum of g/h is " + sum.str() + ", not below 1");
    }

    void check_brute_forced(const LosingCertificate& node, const std::string& path) {
        check_children(node, path, 0);
        if (strategy_space_size(node.game) > u128(opts_.brute_budget)) {
            trusted_ = true; // accepted on record, flagged for the caller
            return;
        }
        SolveResult solved = brute_force_decide(node.game, {opts_.brute_budget});
        solver_nodes_ += solved.nodes_explored;
        if (solved.status == SolveStatus::undecided) {
            trusted_ = true;
            return;
        }
        expect(solved.status == SolveStatus::losing, path,
               "solver found a winning strategy for a game certified losing");
    }

    void check_glue(const LosingCertificate& node, const std::string& path) {
        check_children(node, path, 2);
        const HatGame& g1 = node.children[0].game;
        const HatGame& g2 = node.children[1].game;
        Vertex a1 = node.left_vertex, a2 = node.right_vertex;
        expect(a1 >= 0 && a1 < g1.n(), path, "glue: left vertex out of range");
        expect(a2 >= 0 && a2 < g2.n(), path, "glue: right vertex out of range");
        const int s = node.s;
        expect(g1.guesses[a1] == s && g2.guesses[a2] == s, path,
               "glue: both sides must give the glued vertex s guesses");
        expect(g2.hatness[a2] == s + 1, path,
               "glue: second game must be strong at the glued vertex (h = s+1)");
        expect(g1.hatness[a1] >= s + 1, path,
               "glue: first game needs h >= s+1 at the glued vertex");
        expect(node.vertex == a1, path, "glue: conclusion vertex must be the left index");
        HatGame expected = glue_games(g1, a1, g2, a2);
        expect(expected == node.game, path, "glue: stated game differs from the rule's conclusion");
    }

    void check_add_half_edge(const LosingCertificate& node, const std::string& path) {
        check_children(node, path, 1);
        const HatGame& child = node.children[0].game;
        Vertex u = node.from, v = node.to;
        expect(u >= 0 && u < node.game.n() && v >= 0 && v < node.game.n() && u != v, path,
               "add_half_edge: bad arc");
        expect(node.game.graph.has_arc(u, v), path, "add_half_edge: arc absent from conclusion");
        expect(!child.graph.has_arc(u, v), path, "add_half_edge: arc already in the child");
        expect(child.n() == node.game.n(), path, "add_half_edge: vertex count mismatch");
        VisibilityGraph expected(child.graph);
        expected.add_arc(u, v);
        expect(expected == node.game.graph, path,
               "add_half_edge: graphs differ beyond the added arc");
        expect(child.hatness == node.game.hatness, path, "add_half_edge: hatness must not change");
        for (Vertex x = 0; x < node.game.n(); ++x) {
            if (x == u) continue;
            expect(child.guesses[x] == node.game.guesses[x], path,
                   "add_half_edge: guesses may change only at the arc tail");
        }
        expect(node.game.guesses[u] == child.guesses[u] / node.game.hatness[v], path,
               "add_half_edge: g'(u) must be floor(g(u)/h(v))");
    }

    void check_remove_strong(const LosingCertificate& node, const std::string& path) {
        check_children(node, path, 1);
        const HatGame& child = node.children[0].game;
        const Vertex a = node.vertex;
        const int s = node.s;
        expect(a >= 0 && a < node.game.n(), path, "remove_strong_vertex: vertex out of range");
        expect(node.game.hatness[a] == s + 1 && node.game.guesses[a] == s, path,
               "remove_strong_vertex: vertex is not strong");
        for (Vertex u = 0; u < node.game.n(); ++u) {
            if (u == a) continue;
            expect(node.game.graph.has_arc(a, u) && node.game.graph.has_arc(u, a), path,
                   "remove_strong_vertex: vertex must see and be seen by everyone");
        }
        std::vector<Vertex> kept;
        for (Vertex u = 0; u < node.game.n(); ++u)
            if (u != a) kept.push_back(u);
        InducedSubgame rest = induced_subgame(node.game, kept);
        expect(child.graph == rest.game.graph, path,
               "remove_strong_vertex: child graph must be the game without the vertex");
        expect(child.hatness == rest.game.hatness, path,
               "remove_strong_vertex: hatness must carry over");
        expect(int(child.guesses.size()) == rest.game.n(), path,
               "remove_strong_vertex: child size mismatch");
        for (Vertex u = 0; u < rest.game.n(); ++u)
            expect(child.guesses[u] == (s + 1) * rest.game.guesses[u], path,
                   "remove_strong_vertex: child guesses must be (s+1) times the conclusion's");
    }

    void check_scc_split(const LosingCertificate& node, const std::string& path) {
        auto comps = condensation(node.game.graph);
        expect(comps.size() >= 2, path, "scc_split: the graph is already strongly connected");
        check_children(node, path, comps.size());
        for (std::size_t i = 0; i < comps.size(); ++i) {
            InducedSubgame sub = induced_subgame(node.game, comps[i]);
            expect(node.children[i].game == sub.game, path,
                   "scc_split: child " + std::to_string(i) +
                       " does not match the component subgame");
        }
    }

    static bool is_path_graph(const VisibilityGraph& g) {
        const int n = g.vertex_count();
        if (g.arc_count() != std::size_t(2 * (n - 1))) return false;
        for (Vertex v = 0; v + 1 < n; ++v)
            if (!g.has_arc(v, v + 1) || !g.has_arc(v + 1, v)) return false;
        return true;
    }

    static bool matches_path_pattern(const HatGame& g, int s) {
        if (!is_path_graph(g.graph)) return false;
        if (g.hatness[0] != 2 * s) return false;
        for (Vertex v = 1; v < g.n(); ++v)
            if (g.hatness[v] != 4 * s - 1) return false;
        for (Vertex v = 0; v < g.n(); ++v)
            if (g.guesses[v] != s) return false;
        return true;
    }

    void check_path_step(const LosingCertificate& node, const std::string& path) {
        check_children(node, path, 1);
        const int s = node.s;
        expect(s >= 1, path, "path_step: s must be positive");
        expect(node.game.n() >= 2, path, "path_step: conclusion path too short");
        expect(matches_path_pattern(node.game, s), path,
               "path_step: conclusion must be the 2s / 4s-1 path pattern");
        expect(node.children[0].game.n() == node.game.n() - 1, path,
               "path_step: child must be one vertex shorter");
        expect(matches_path_pattern(node.children[0].game, s), path,
               "path_step: child must be the 2s / 4s-1 path pattern");
    }

    void check_hatness_increase(const LosingCertificate& node, const std::string& path) {
        check_children(node, path, 1);
        const HatGame& child = node.children[0].game;
        expect(child.graph == node.game.graph, path, "hatness_increase: graph must not change");
        expect(child.guesses == node.game.guesses, path,
               "hatness_increase: guesses must not change");
        expect(child.n() == node.game.n(), path, "hatness_increase: size mismatch");
        for (Vertex v = 0; v < node.game.n(); ++v)
            expect(node.game.hatness[v] >= child.hatness[v], path,
                   "hatness_increase: hatness may only grow");
    }

    const CertCheckOptions& opts_;
    bool trusted_ = false;
    u64 solver_nodes_ = 0;
};

HatGame path_pattern_game(int s, int n) {
    VisibilityGraph graph(n);
    for (Vertex v = 0; v + 1 < n; ++v) graph.add_edge(v, v + 1);
    std::vector<int> hatness(n, 4 * s - 1);
    hatness[0] = 2 * s;
    return make_game(std::move(graph), std::move(hatness), std::vector<int>(n, s));
}

HatGame petal_pattern_game(int s, int n) {
    // path 0..n-1, stem n adjacent to every path vertex
    VisibilityGraph graph(n + 1);
    for (Vertex v = 0; v + 1 < n; ++v) graph.add_edge(v, v + 1);
    for (Vertex v = 0; v < n; ++v) graph.add_edge(v, n);
    std::vector<int> hatness(n + 1, 4 * s * (s + 1) - 1);
    hatness[n] = s + 1;
    return make_game(std::move(graph), std::move(hatness), std::vector<int>(n + 1, s));
}

} // namespace

std::string cert_rule_name(CertRule rule) {
    switch (rule) {
        case CertRule::clique_deficit: return "clique_deficit";
        case CertRule::brute_forced: return "brute_forced";
        case CertRule::glue_at_vertex: return "glue_at_vertex";
        case CertRule::add_half_edge: return "add_half_edge";
        case CertRule::remove_strong_vertex: return "remove_strong_vertex";
        case CertRule::scc_split: return "scc_split";
        case CertRule::path_step: return "path_step";
        case CertRule::hatness_increase: return "hatness_increase";
    }
    return "?";
}

CertRule cert_rule_from_name(const std::string& name) {
    for (CertRule rule :
         {CertRule::clique_deficit, CertRule::brute_forced, CertRule::glue_at_vertex,
          CertRule::add_half_edge, CertRule::remove_strong_vertex, CertRule::scc_split,
          CertRule::path_step, CertRule::hatness_increase}) {
        if (cert_rule_name(rule) == name) return rule;
    }
    throw error("certificate: unknown rule '" + name + "'");
}

CertCheckResult check_certificate(const LosingCertificate& cert, const CertCheckOptions& opts) {
    Checker checker(opts);
    return checker.run(cert);
}

HatGame glue_games(const HatGame& left, Vertex left_vertex, const HatGame& right,
                   Vertex right_vertex) {
    if (left_vertex < 0 || left_vertex >= left.n()) throw error("glue: left vertex out of range");
    if (right_vertex < 0 || right_vertex >= right.n())
        throw error("glue: right vertex out of range");
    const int n = left.n() + right.n() - 1;
    auto map_right = [&](Vertex w) {
        if (w == right_vertex) return left_vertex;
        return left.n() + (w < right_vertex ? w : w - 1);
    };
    VisibilityGraph graph(n);
    for (auto [u, v] : left.graph.arcs()) graph.add_arc(u, v);
    for (auto [u, v] : right.graph.arcs()) graph.add_arc(map_right(u), map_right(v));
    std::vector<int> hatness = left.hatness;
    std::vector<int> guesses = left.guesses;
    hatness.resize(n);
    guesses.resize(n);
    for (Vertex w = 0; w < right.n(); ++w) {
        if (w == right_vertex) continue;
        hatness[map_right(w)] = right.hatness[w];
        guesses[map_right(w)] = right.guesses[w];
    }
    return make_game(std::move(graph), std::move(hatness), std::move(guesses));
}

LosingCertificate build_path_losing_cert(int s, int n) {
    if (s < 1 || n < 1) throw error("path losing certificate: need s >= 1, n >= 1");
    LosingCertificate node;
    node.game = path_pattern_game(s, n);
    if (n <= 2) {
        node.rule = CertRule::clique_deficit; // P_1 and P_2 are cliques with deficit
    } else {
        node.rule = CertRule::path_step;
        node.s = s;
        node.children.push_back(build_path_losing_cert(s, n - 1));
    }
    return node;
}

LosingCertificate build_uniform_path_losing_cert(int s, int n) {
    LosingCertificate node;
    node.rule = CertRule::hatness_increase;
    VisibilityGraph graph(n);
    for (Vertex v = 0; v + 1 < n; ++v) graph.add_edge(v, v + 1);
    node.game = make_game(std::move(graph), std::vector<int>(n, 4 * s - 1),
                          std::vector<int>(n, s));
    node.children.push_back(build_path_losing_cert(s, n));
    return node;
}

LosingCertificate build_petal_losing_cert(int s, int n) {
    if (s < 1 || n < 1) throw error("petal losing certificate: need s >= 1, n >= 1");
    LosingCertificate node;
    node.rule = CertRule::remove_strong_vertex;
    node.s = s;
    node.vertex = n; // the stem
    node.game = petal_pattern_game(s, n);
    node.children.push_back(build_uniform_path_losing_cert(s * (s + 1), n));
    return node;
}

LosingCertificate build_royal_petunia_cert(int s, const std::vector<PetuniaPetal>& petals) {
    if (petals.empty()) throw error("royal petunia: at least one petal");
    if (petals[0].glue_vertex != -1 || petals[0].to_petal != -1)
        throw error("royal petunia: the first petal is the root, it glues to nothing");

    // global index of each petal's vertices inside the growing conclusion
    std::vector<std::vector<Vertex>> global(petals.size());
    LosingCertificate cert = build_petal_losing_cert(s, petals[0].n);
    global[0].resize(petals[0].n + 1);
    for (Vertex v = 0; v <= petals[0].n; ++v) global[0][v] = v;

    for (std::size_t i = 1; i < petals.size(); ++i) {
        const PetuniaPetal& p = petals[i];
        if (p.n < 1) throw error("royal petunia: petal path must be nonempty");
        if (p.glue_vertex != p.n)
            throw error("royal petunia: petal " + std::to_string(i) +
                        " glues by vertex " + std::to_string(p.glue_vertex) +
                        ", but a royal petunia glues new petals at their stems");
        if (p.to_petal < 0 || p.to_petal >= int(i))
            throw error("royal petunia: glue target petal out of range");
        if (p.to_vertex < 0 || p.to_vertex >= int(global[p.to_petal].size()))
            throw error("royal petunia: glue target vertex out of range");

        LosingCertificate petal_cert = build_petal_losing_cert(s, p.n);
        Vertex a1 = global[p.to_petal][p.to_vertex];
        Vertex a2 = p.n; // the new petal's stem

        LosingCertificate glued;
        glued.rule = CertRule::glue_at_vertex;
        glued.s = s;
        glued.left_vertex = a1;
        glued.right_vertex = a2;
        glued.vertex = a1;
        glued.game = glue_games(cert.game, a1, petal_cert.game, a2);

        const int old_n = cert.game.n();
        global[i].resize(p.n + 1);
        for (Vertex w = 0; w <= p.n; ++w)
            global[i][w] = (w == a2) ? a1 : old_n + (w < a2 ? w : w - 1);

        glued.children.push_back(std::move(cert));
        glued.children.push_back(std::move(petal_cert));
        cert = std::move(glued);
    }
    return cert;
}

HatGame alon_game(int horizontal_edges) {
    if (horizontal_edges < 1) throw error("alon game: at least one horizontal edge");
    const int m = horizontal_edges;
    const int n = 2 + 2 * m; // A, B, then (u_i, v_i) pairs
    VisibilityGraph graph(n);
    graph.add_edge(0, 1);
    for (int i = 0; i < m; ++i) {
        Vertex u = 2 + 2 * i, v = 3 + 2 * i;
        graph.add_edge(u, v);
        graph.add_edge(0, u);
        graph.add_edge(0, v);
        graph.add_edge(1, u);
        graph.add_edge(1, v);
    }
    std::vector<int> hatness(n, 13);
    hatness[0] = 2;
    hatness[1] = 3;
    for (int i = 0; i < m; ++i) hatness[3 + 2 * i] = 12;
    return make_game(std::move(graph), std::move(hatness), std::vector<int>(n, 1));
}

LosingCertificate build_alon_cert(int horizontal_edges, bool uniform13) {
    const int m = horizontal_edges;
    HatGame full = alon_game(m);

    // start from the split game: no endpoint sees the apexes, endpoints
    // compensated with 6 guesses each
    HatGame split = full;
    {
        VisibilityGraph graph(full.n());
        for (auto [u, v] : full.graph.arcs())
            if (!(u >= 2 && v <= 1)) graph.add_arc(u, v);
        std::vector<int> guesses = full.guesses;
        for (Vertex x = 2; x < full.n(); ++x) guesses[x] = 6;
        split = make_game(std::move(graph), full.hatness, std::move(guesses));
    }

    LosingCertificate scc;
    scc.rule = CertRule::scc_split;
    scc.game = split;
    for (const auto& comp : condensation(split.graph)) {
        LosingCertificate leaf;
        leaf.rule = CertRule::clique_deficit;
        leaf.game = induced_subgame(split, comp).game;
        scc.children.push_back(std::move(leaf));
    }

    // reattach the removed arcs one at a time: each division 6 -> 3 -> 1
    LosingCertificate cert = std::move(scc);
    for (Vertex x = 2; x < full.n(); ++x) {
        for (Vertex apex : {0, 1}) {
            LosingCertificate step;
            step.rule = CertRule::add_half_edge;
            step.from = x;
            step.to = apex;
            HatGame next = cert.game;
            VisibilityGraph graph(next.graph);
            graph.add_arc(x, apex);
            next.graph = std::move(graph);
            next.guesses[x] = cert.game.guesses[x] / next.hatness[apex];
            step.game = std::move(next);
            step.children.push_back(std::move(cert));
            cert = std::move(step);
        }
    }
    if (cert.game != full) throw error("alon certificate: reattachment did not restore the game");

    if (uniform13) {
        LosingCertificate lift;
        lift.rule = CertRule::hatness_increase;
        HatGame uniform = full;
        for (Vertex v = 0; v < uniform.n(); ++v) uniform.hatness[v] = 13;
        lift.game = std::move(uniform);
        lift.children.push_back(std::move(cert));
        cert = std::move(lift);
    }
    return cert;
}

} // namespace hats
