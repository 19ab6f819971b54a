#ifndef HATS_CERTIFICATES_HPP
#define HATS_CERTIFICATES_HPP

#include <string>
#include <vector>

#include "hats/game.hpp"
#include "hats/verifier.hpp"

namespace hats {

// A checked derivation tree concluding that its game admits no winning
// strategy. Every node stores the full game it certifies, so a certificate
// is auditable standalone; the checker recomputes each rule's conclusion
// from its children and verifies the side conditions.
enum class CertRule {
    clique_deficit,       // leaf: complete graph with sum g/h < 1
    brute_forced,         // leaf: embedded solver verdict, re-run when in budget
    glue_at_vertex,       // two losing games glued where one side is strong
    add_half_edge,        // losing survives adding arc u->v with g(u) /= h(v)
    remove_strong_vertex, // losing game minus its strong vertex, guesses * (s+1)
    scc_split,            // all strongly connected subgames losing
    path_step,            // path induction: 2s at v0, 4s-1 elsewhere
    hatness_increase,     // raising hatnesses of a losing game keeps it losing
};

std::string cert_rule_name(CertRule rule);
CertRule cert_rule_from_name(const std::string& name);

struct LosingCertificate {
    CertRule rule = CertRule::clique_deficit;
    HatGame game;
    std::vector<LosingCertificate> children;

    // rule parameters
    int s = 0;              // glue_at_vertex, remove_strong_vertex, path_step
    Vertex vertex = -1;     // glue: glued vertex in the conclusion; remove: the strong vertex
    Vertex left_vertex = -1;  // glue: identified vertex in children[0]
    Vertex right_vertex = -1; // glue: identified vertex in children[1]
    Vertex from = -1, to = -1; // add_half_edge arc
    u64 budget = 0;            // brute_forced: solver budget used when built
};

struct CertCheckOptions {
    u64 brute_budget = 1000000000ULL; // re-run ceiling for brute_forced leaves
};

struct CertCheckResult {
    bool valid = true;
    std::string violation_path; // node path like root.children[1]
    std::string message;
    bool trusted_brute_force = false; // a leaf exceeded the re-run budget
    u64 solver_nodes = 0;
};

CertCheckResult check_certificate(const LosingCertificate& cert,
                                  const CertCheckOptions& opts = {});

// Gluing of two games at one vertex: children[0] keeps its indices, the
// identified vertex of children[1] maps onto it, the rest append in order.
HatGame glue_games(const HatGame& left, Vertex left_vertex, const HatGame& right,
                   Vertex right_vertex);

// ---------------------------------------------------------------------------
// builders for the engine's stock losing results

// Losing path family on P_n: h(v0) = 2s, h = 4s-1 elsewhere, s guesses.
// n = 1 and n = 2 are clique-deficit leaves; larger n chains path steps.
LosingCertificate build_path_losing_cert(int s, int n);

// The same conclusion lifted to uniform hatness 4s-1 via hatness_increase.
LosingCertificate build_uniform_path_losing_cert(int s, int n);

// Petal with stem hatness s+1 and 4s(s+1)-1 on the path, s guesses
// everywhere: strong-vertex removal of the stem over the losing path family
// for s(s+1). Path vertices 0..n-1, stem n.
LosingCertificate build_petal_losing_cert(int s, int n);

// A royal petunia grows by gluing each new petal at its stem. Vertices of a
// petal description: path 0..n-1, stem n.
struct PetuniaPetal {
    int n = 1;            // path length
    int glue_vertex = -1; // vertex of this petal glued onto the petunia (must be the stem)
    int to_petal = -1;    // earlier petal index
    int to_vertex = -1;   // vertex within that petal
};
LosingCertificate build_royal_petunia_cert(int s, const std::vector<PetuniaPetal>& petals);

// The two-apex planar pattern: apexes of hatness 2 and 3 joined to every
// endpoint of m disjoint edges with hatnesses 13/12, one guess everywhere.
// Removing the arcs into the apexes splits the game into losing cliques;
// the certificate reattaches them one at a time and finally raises every
// hatness to the uniform 13.
HatGame alon_game(int horizontal_edges);
LosingCertificate build_alon_cert(int horizontal_edges, bool uniform13 = true);

} // namespace hats

#endif
