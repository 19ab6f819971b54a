#include "hats/game.hpp"

#include <algorithm>
#include <limits>

namespace hats {

u128 HatGame::placement_count() const {
    const u128 cap = ~u128(0);
    u128 total = 1;
    for (int hv : hatness) {
        if (hv == 0) return 0;
        if (total > cap / u128(hv)) return cap;
        total *= u128(hv);
    }
    return total;
}

HatGame make_game(VisibilityGraph graph, std::vector<int> hatness, std::vector<int> guesses,
                  std::optional<Hint> hint) {
    HatGame game{std::move(graph), std::move(hatness), std::move(guesses), std::move(hint)};
    if (int(game.hatness.size()) != game.n() || int(game.guesses.size()) != game.n())
        throw error("game: hatness/guesses size must match vertex count");
    normalize_game(game);
    auto bad = validate_game(game);
    if (!bad.empty()) throw error("game: " + bad.front());
    return game;
}

std::vector<std::string> normalize_game(HatGame& game) {
    std::vector<std::string> notes;
    for (Vertex v = 0; v < game.n() && v < int(game.guesses.size()); ++v) {
        if (v < int(game.hatness.size()) && game.guesses[v] > game.hatness[v]) {
            notes.push_back("clamped g(" + std::to_string(v) + ") from " +
                            std::to_string(game.guesses[v]) + " to h=" +
                            std::to_string(game.hatness[v]));
            game.guesses[v] = game.hatness[v];
        }
    }
    return notes;
}

std::vector<std::string> validate_game(const HatGame& game) {
    std::vector<std::string> findings;
    const int n = game.n();
    if (n <= 0) {
        findings.push_back("vertex count must be positive");
        return findings;
    }
    if (int(game.hatness.size()) != n) findings.push_back("hatness size mismatch");
    if (int(game.guesses.size()) != n) findings.push_back("guesses size mismatch");
    if (!game.graph.labels.empty() && int(game.graph.labels.size()) != n)
        findings.push_back("labels size mismatch");
    if (!findings.empty()) return findings;

    // The graph class rejects self-arcs and range errors at insertion, so
    // those invariants hold by construction; hatness/guess bounds do not.
    for (Vertex v = 0; v < n; ++v) {
        if (game.hatness[v] < 1)
            findings.push_back("hatness must be positive at " + std::to_string(v));
        if (game.guesses[v] < 0)
            findings.push_back("guess count negative at " + std::to_string(v));
        if (game.guesses[v] > game.hatness[v])
            findings.push_back("guess exceeds hatness at " + std::to_string(v));
    }
    if (game.hint) {
        const auto& h = *game.hint;
        if (h.vertex < 0 || h.vertex >= n) {
            findings.push_back("hint names invalid vertex " + std::to_string(h.vertex));
        } else {
            if (h.width < game.guesses[h.vertex] || h.width > game.hatness[h.vertex])
                findings.push_back("hint width outside [g, h] at " + std::to_string(h.vertex));
            if (h.width < 1) findings.push_back("hint width must be positive");
        }
    }
    return findings;
}

bool placement_valid(const HatGame& game, const HatPlacement& p) {
    if (int(p.colors.size()) != game.n()) return false;
    for (Vertex v = 0; v < game.n(); ++v)
        if (p.colors[v] < 0 || p.colors[v] >= game.hatness[v]) return false;
    return true;
}

bool hint_window_contains(int h, int start, int width, int color) {
    int d = color - start;
    if (d < 0) d += h;
    return d < width;
}

InducedSubgame induced_subgame(const HatGame& game, const std::vector<Vertex>& kept) {
    std::vector<Vertex> sorted = kept;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) throw error("induced subgame: empty vertex set");

    InducedSubgame result;
    result.game.graph = induced_subgraph(game.graph, sorted);
    result.vertex_map = sorted;
    for (Vertex v : sorted) {
        result.game.hatness.push_back(game.hatness[v]);
        result.game.guesses.push_back(game.guesses[v]);
    }
    if (game.hint) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), game.hint->vertex);
        if (it != sorted.end() && *it == game.hint->vertex) {
            result.game.hint = Hint{int(it - sorted.begin()), game.hint->width};
        } else {
            result.hint_dropped = true;
        }
    }
    return result;
}

PlacementSpace::PlacementSpace(const std::vector<int>& hatness) : hatness_(hatness) {
    total_ = 1;
    const u128 cap = ~u128(0);
    for (int hv : hatness_) {
        if (hv < 1) throw error("placement space: hatness must be positive");
        total_ = (total_ > cap / u128(hv)) ? cap : total_ * u128(hv);
    }
    const int n = int(hatness_.size());
    weight_.assign(n, 1);
    if (total_ <= u128(std::numeric_limits<u64>::max())) {
        for (int v = n - 2; v >= 0; --v)
            weight_[v] = weight_[v + 1] * u64(hatness_[v + 1]);
    }
}

HatPlacement PlacementSpace::decode(u64 index) const {
    HatPlacement p;
    decode_into(index, p.colors);
    return p;
}

void PlacementSpace::decode_into(u64 index, std::vector<int>& colors) const {
    const int n = int(hatness_.size());
    colors.resize(n);
    for (int v = 0; v < n; ++v)
        colors[v] = int((index / weight_[v]) % u64(hatness_[v]));
}

u64 PlacementSpace::encode(const std::vector<int>& colors) const {
    u64 index = 0;
    for (std::size_t v = 0; v < hatness_.size(); ++v)
        index += weight_[v] * u64(colors[v]);
    return index;
}

bool PlacementSpace::next(std::vector<int>& colors) const {
    for (int v = int(colors.size()) - 1; v >= 0; --v) {
        if (++colors[v] < hatness_[v]) return true;
        colors[v] = 0;
    }
    return false;
}

} // namespace hats
