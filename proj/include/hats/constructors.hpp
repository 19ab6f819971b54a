#ifndef HATS_CONSTRUCTORS_HPP
#define HATS_CONSTRUCTORS_HPP

#include <optional>
#include <vector>

#include "hats/phf.hpp"
#include "hats/strategy.hpp"

namespace hats {

// Arbitration over a vertex set S of the inner game: given the colors on S
// alone, name a sage of S that guessed its first coordinate correctly
// whenever any sage of S did, and for members of I also recover that sage's
// guess set. Two kinds are supported:
//   singleton            S = {v}, I empty; always names v.
//   out_closed_simulation N+(u) contained in S for all u in S, so observers
//                         can replay the inner strategy on S; I is any
//                         subset of S. Tie-break: lowest-index correct sage.
struct Arbitrator {
    enum class Kind { singleton, out_closed_simulation };
    Kind kind = Kind::singleton;
    std::vector<Vertex> s_set;   // sorted ascending
    std::vector<Vertex> reduced; // I, sorted ascending, subset of s_set

    static Arbitrator singleton(Vertex v);
    static Arbitrator out_closed(std::vector<Vertex> s_set, std::vector<Vertex> reduced);
};

// Interval strategy on the complete graph: vertex v owns a half-open
// interval of length g(v)/h(v) inside [0,1), intervals packed left to right
// in index order with overflow past 1 truncated, and guesses every own color
// that lands the fractional sum of all colors inside its interval. Refuses
// when the criterion sum g/h < 1 makes the game losing.
StrategyPtr clique_strategy(const std::vector<int>& hatness, const std::vector<int>& guesses);

// Product of two winning games at a shared vertex: the shared vertex gets
// composite colors (h1*h2, g1*g2), everything else keeps its game. The left
// game keeps its vertex indices; right-game vertices append after it.
StrategyPtr product_at_vertex(StrategyPtr left, StrategyPtr right, Vertex left_vertex,
                              Vertex right_vertex);

// General join with reducing: the inner game's predictable set S replaces
// vertex z of the outer game, joined to every neighbor of z. Vertices of I
// reduce (h*h'(z), g*g'(z)) to (h*b_v, a_v*g'(z)) where g(v) = s_v*a_v and
// h'(z) = s_v*b_v. Inner vertices keep their indices; outer vertices other
// than z append after them.
StrategyPtr reduced_join(StrategyPtr inner, const Arbitrator& arb, StrategyPtr outer,
                         Vertex z, const std::vector<int>& divisors);
StrategyPtr reduced_join(StrategyPtr inner, const Arbitrator& arb, StrategyPtr outer,
                         Vertex z, int uniform_divisor);

// Winning survives removal of one visibility arc u->v: u replaces its guess
// with the union over all hypothetical colors of v, so g(u) becomes
// min(g(u)*h(v), h(u)).
StrategyPtr remove_half_edge(StrategyPtr strategy, Vertex from, Vertex to);

// A strong vertex (h = s+1, g = s, adjacent to everything both ways) can be
// removed: survivors guess the union over its s+1 colors, multiplying their
// guess counts by s+1.
StrategyPtr strong_vertex_remove(StrategyPtr strategy, Vertex a);

// Inverse direction: when every guess count of the game divides by s+1, a
// strong vertex can be attached adjacent to everything, reducing guesses
// back by the factor s+1. Realized as substitution with reducing into the
// edge game (s/(s+1), 1/(s+1)).
StrategyPtr strong_vertex_attach(StrategyPtr strategy, int s);

// Hint-transfer marking table between adjacent vertices A and B: row i
// carries letters in the w_B columns starting at i*w_B (mod h_B). Valid when
// h_B divides w_B*h_A (torus closes) and w_A*w_B >= (w_A - g_A)*h_B, which
// bounds the empty cells per column in any w_A cyclically-consecutive rows
// by g_A; the bound is re-verified exhaustively at construction.
struct LTable {
    int h_a = 1, h_b = 1, w_a = 1, w_b = 1;

    bool has_letter(int row, int col) const {
        int start = int((long long)row * w_b % h_b);
        int d = col - start;
        if (d < 0) d += h_b;
        return d < w_b;
    }
    int max_window_empties() const;
};

LTable build_l_table(int h_a, int h_b, int w_a, int w_b, int g_a);

// Single-vertex hint game: the sage guesses the whole hinted window, so the
// width equals the guess count.
StrategyPtr hint_window_base(int hatness, int guesses);

// Appends a fresh vertex A (new highest index) adjacent to the child's hint
// vertex B and transfers the hint to A with width w_a: A guesses the rows
// with empty table cells in B's column inside its hinted window, and B
// derives its old window from A's color.
StrategyPtr hint_extend(StrategyPtr hint_strategy, int h_a, int w_a, int g_a);

// A hint whose window spans every color carries no information; fixes the
// window start at 0 and drops the hint from the game.
StrategyPtr drop_full_hint(StrategyPtr hint_strategy);

// The hinted path ladder: game on P_k with hatness 4s-2 (2s-1 at the last
// vertex when k = s), s guesses everywhere, hint (v_{k-1}, s+k-1).
StrategyPtr build_path_hint_chain(int s, int k);

// Winning strategy on P_{2s} with hatness 4s-2 and s guesses everywhere:
// two hinted ladders multiplied through the edge game (1/2, 1/2).
StrategyPtr build_path(int s);

// Star with center hatness H, center guesses s, leaves (s+1, 1). One leaf
// per tuple in [H]^(s+1) (mixed-radix order, first coordinate most
// significant): leaf i guesses the position of the center's color in its
// tuple; the center lists the colors no leaf would catch. Leaves are
// vertices 0..n-1, the center is vertex n.
StrategyPtr star_scrapheap(int s, int H);

// Same star from a perfect hash family with v = t = s+1: row i is leaf i's
// guess table indexed by the center color.
StrategyPtr star_from_phf(const PhfArray& phf);

enum class StarBackend { phf, scrapheap };

// Petal-shaped winning game with hatness 4s(s+1)-2 and s guesses: the path
// game for s(s+1) substituted with reducing into every leaf of the star.
// The PHF backend needs an array with v = t = s+1 and at least 4s(s+1)-2
// columns; s = 1 defaults to the binary separating family.
StrategyPtr build_petal(int s, StarBackend backend = StarBackend::phf,
                        const std::optional<PhfArray>& phf = std::nullopt);

// Planar construction: the 109-vertex petal game for s = 2 substituted with
// reducing into one end of the edge game (1/2, 1/2), then k >= 5 copies
// multiplied at the apex. The result has hatness 22 everywhere except 2^k at
// the apex; k >= 5 keeps 2^k >= 22.
StrategyPtr build_planar22(int k, const PhfArray& phf);

} // namespace hats

#endif
