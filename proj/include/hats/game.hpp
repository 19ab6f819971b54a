#ifndef HATS_GAME_HPP
#define HATS_GAME_HPP

#include <optional>
#include <string>
#include <vector>

#include "hats/graph.hpp"

namespace hats {

// The adversary privately tells `vertex` a cyclic window of `width`
// consecutive colors containing its true color.
struct Hint {
    Vertex vertex = 0;
    int width = 1;
    bool operator==(const Hint& o) const { return vertex == o.vertex && width == o.width; }
};

struct HatGame {
    VisibilityGraph graph;
    std::vector<int> hatness; // h(v) >= 1, colors are [0, h(v))
    std::vector<int> guesses; // g(v) >= 0, may be 0 (a sage who never guesses)
    std::optional<Hint> hint;

    int n() const { return graph.vertex_count(); }
    int h(Vertex v) const { return hatness[v]; }
    int g(Vertex v) const { return guesses[v]; }

    // Product of hatnesses, saturating at the u128 maximum.
    u128 placement_count() const;

    bool operator==(const HatGame& o) const {
        return graph == o.graph && hatness == o.hatness && guesses == o.guesses && hint == o.hint;
    }
    bool operator!=(const HatGame& o) const { return !(*this == o); }
};

struct HatPlacement {
    std::vector<int> colors;
    bool operator==(const HatPlacement& o) const { return colors == o.colors; }
};

HatGame make_game(VisibilityGraph graph, std::vector<int> hatness, std::vector<int> guesses,
                  std::optional<Hint> hint = std::nullopt);

// Clamps g(v) to h(v) where it exceeds it; returns one note per clamp.
std::vector<std::string> normalize_game(HatGame& game);

// Empty list iff all type invariants hold; each finding names the vertex and
// the rule it breaks. Never throws.
std::vector<std::string> validate_game(const HatGame& game);

bool placement_valid(const HatGame& game, const HatPlacement& p);

// Window membership for hint games: is color inside {start, ..., start+width-1 mod h}?
bool hint_window_contains(int h, int start, int width, int color);

struct InducedSubgame {
    HatGame game;
    std::vector<Vertex> vertex_map; // new index -> old index
    bool hint_dropped = false;
};

// Restriction to a nonempty vertex set; only internal arcs survive. A hint
// whose vertex is dropped is removed and flagged.
InducedSubgame induced_subgame(const HatGame& game, const std::vector<Vertex>& kept);

// Mixed-radix enumeration of placements, vertex 0 most significant: index
// order equals lexicographic order on color tuples.
class PlacementSpace {
public:
    explicit PlacementSpace(const std::vector<int>& hatness);

    u128 total() const { return total_; }

    HatPlacement decode(u64 index) const;
    void decode_into(u64 index, std::vector<int>& colors) const;
    u64 encode(const std::vector<int>& colors) const;

    // Odometer step in index order; returns false on wraparound.
    bool next(std::vector<int>& colors) const;

private:
    std::vector<int> hatness_;
    std::vector<u64> weight_; // weight_[v] = prod of hatness after v (valid when total fits u64)
    u128 total_;
};

} // namespace hats

#endif
