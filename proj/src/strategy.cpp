#include "hats/strategy.hpp"

#include <algorithm>

namespace hats {

void Strategy::check_output(Vertex v, const GuessSet& out) const {
    if (int(out.size()) > game_.guesses[v])
        throw error("strategy bug: vertex " + std::to_string(v) + " lists " +
                    std::to_string(out.size()) + " guesses, budget " +
                    std::to_string(game_.guesses[v]));
    int prev = -1;
    for (int c : out) {
        if (c <= prev)
            throw error("strategy bug: vertex " + std::to_string(v) + " guess set not strictly increasing");
        if (c < 0 || c >= game_.hatness[v])
            throw error("strategy bug: vertex " + std::to_string(v) + " guesses color " +
                        std::to_string(c) + " outside [0, " + std::to_string(game_.hatness[v]) + ")");
        prev = c;
    }
}

u64 LookupStrategy::table_size(const HatGame& game, Vertex v) {
    u64 size = 1;
    for (Vertex u : game.graph.out_neighbors(v)) size *= u64(game.hatness[u]);
    return size;
}

u64 LookupStrategy::visible_index(const HatGame& game, Vertex v, const ColorView& colors) {
    u64 index = 0;
    for (Vertex u : game.graph.out_neighbors(v))
        index = index * u64(game.hatness[u]) + u64(colors.color(u));
    return index;
}

LookupStrategy::LookupStrategy(HatGame game, std::vector<std::vector<GuessSet>> tables)
    : Strategy(std::move(game), nlohmann::json{{"kind", "literal_lookup"}}),
      tables_(std::move(tables)) {
    if (game_.hint) throw error("lookup strategy: hint games not supported");
    if (int(tables_.size()) != game_.n())
        throw error("lookup strategy: one table per vertex required");
    for (Vertex v = 0; v < game_.n(); ++v)
        if (u64(tables_[v].size()) != table_size(game_, v))
            throw error("lookup strategy: table dimensions mismatch at vertex " + std::to_string(v));
}

void LookupStrategy::eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const {
    const GuessSet& entry = tables_[v][visible_index(game_, v, colors)];
    out.assign(entry.begin(), entry.end());
}

int ColorCodec::encode(int c1, int c2) const {
    if (c1 < 0 || c1 >= first_factor || c2 < 0 || c2 >= second_factor)
        throw error("codec: coordinate out of range");
    return c1 * second_factor + c2;
}

std::pair<int, int> ColorCodec::decode(int c) const {
    if (c < 0 || c >= first_factor * second_factor)
        throw error("codec: composite color out of range");
    return {c / second_factor, c % second_factor};
}

int pair_encode(int c1, int c2, const ColorCodec& codec) { return codec.encode(c1, c2); }

std::pair<int, int> pair_decode(int c, const ColorCodec& codec) { return codec.decode(c); }

GuessSet pad_guesses(const GuessSet& guesses, int size, int h) {
    if (int(guesses.size()) > size) throw error("pad_guesses: set already over size");
    if (size > h) throw error("pad_guesses: not enough colors to pad");
    GuessSet padded = guesses;
    for (int c = 0; int(padded.size()) < size; ++c) {
        if (c >= h) throw error("pad_guesses: ran out of colors");
        if (!std::binary_search(guesses.begin(), guesses.end(), c)) padded.push_back(c);
    }
    std::sort(padded.begin(), padded.end());
    return padded;
}

MaskCheckReport mask_check(const Strategy& strategy, u64 trials, u64 seed) {
    const HatGame& game = strategy.game();
    const int n = game.n();
    MaskCheckReport report;

    std::vector<Vertex> mutable_vertices;
    for (Vertex v = 0; v < n; ++v)
        if (game.hatness[v] >= 2) mutable_vertices.push_back(v);
    if (mutable_vertices.empty()) {
        report.trials_run = 0; // every color is forced; vacuous pass
        return report;
    }

    HatPlacement p;
    p.colors.resize(n);
    std::vector<GuessSet> before(n), after(n);
    for (u64 t = 0; t < trials; ++t) {
        for (Vertex v = 0; v < n; ++v)
            p.colors[v] = rng_below(rng_word(seed, t, u64(v)), game.hatness[v]);
        int hint_start = -1;
        if (game.hint)
            hint_start = rng_below(rng_word(seed, t, u64(n)), game.hatness[game.hint->vertex]);

        Vertex m = mutable_vertices[rng_below(rng_word(seed, t, u64(n) + 1), int(mutable_vertices.size()))];
        int shift = 1 + rng_below(rng_word(seed, t, u64(n) + 2), game.hatness[m] - 1);
        int new_color = (p.colors[m] + shift) % game.hatness[m];

        SpanView view(p);
        for (Vertex v = 0; v < n; ++v) strategy.eval(v, view, hint_start, before[v]);
        int old_color = p.colors[m];
        p.colors[m] = new_color;
        for (Vertex v = 0; v < n; ++v) strategy.eval(v, view, hint_start, after[v]);
        p.colors[m] = old_color;

        for (Vertex v = 0; v < n; ++v) {
            if (v == m || game.graph.has_arc(v, m)) continue;
            if (before[v] != after[v]) {
                report.ok = false;
                report.trial = t;
                report.trials_run = t + 1;
                report.mutated = m;
                report.affected = v;
                report.placement = p;
                report.old_color = old_color;
                report.new_color = new_color;
                report.message = "vertex " + std::to_string(v) + " changed guesses when non-visible vertex " +
                                 std::to_string(m) + " changed color";
                return report;
            }
        }
    }
    report.trials_run = trials;
    return report;
}

} // namespace hats
