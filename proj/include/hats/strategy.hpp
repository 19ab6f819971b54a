#ifndef HATS_STRATEGY_HPP
#define HATS_STRATEGY_HPP

#include <memory>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hats/game.hpp"
#include "hats/rng.hpp"

namespace hats {

// Sorted set of distinct colors, strictly increasing.
using GuessSet = std::vector<int>;

// Read-only access to a hat placement. Composed strategies stack views
// (index remapping, coordinate extraction, single-vertex overrides) instead
// of copying color vectors, so evaluation of deep compositions stays cheap.
struct ColorView {
    virtual ~ColorView() = default;
    virtual int color(Vertex v) const = 0;
};

struct SpanView final : ColorView {
    const int* data;
    explicit SpanView(const std::vector<int>& c) : data(c.data()) {}
    explicit SpanView(const HatPlacement& p) : data(p.colors.data()) {}
    int color(Vertex v) const override { return data[v]; }
};

struct OverrideView final : ColorView {
    const ColorView* base;
    Vertex vertex;
    int value;
    OverrideView(const ColorView& b, Vertex v, int val) : base(&b), vertex(v), value(val) {}
    int color(Vertex v) const override { return v == vertex ? value : base->color(v); }
};

// A deterministic strategy: per-vertex guess evaluator over the colors of
// out-neighbors, plus the hint window start for the hint vertex of a hint
// game. Immutable and side-effect free after construction; the provenance
// tree records which constructor produced each part and suffices to rebuild
// the evaluators.
class Strategy {
public:
    virtual ~Strategy() = default;

    const HatGame& game() const { return game_; }
    const nlohmann::json& provenance() const { return provenance_; }

    // Guesses of vertex v, sorted ascending. hint_start is the window start
    // told to the hint vertex (pass -1 for hint-free games); evaluators of
    // other vertices never consult it. Throws if the evaluator exceeds the
    // guess budget or emits an out-of-range or unsorted set: that is a
    // strategy bug, not an adversary move.
    void eval(Vertex v, const ColorView& colors, int hint_start, GuessSet& out) const {
        out.clear();
        eval_impl(v, colors, hint_start, out);
        check_output(v, out);
    }

    GuessSet eval_copy(Vertex v, const HatPlacement& p, int hint_start = -1) const {
        SpanView view(p);
        GuessSet out;
        eval(v, view, hint_start, out);
        return out;
    }

protected:
    Strategy(HatGame game, nlohmann::json provenance)
        : game_(std::move(game)), provenance_(std::move(provenance)) {}

    virtual void eval_impl(Vertex v, const ColorView& colors, int hint_start,
                           GuessSet& out) const = 0;

    HatGame game_;
    nlohmann::json provenance_;

private:
    void check_output(Vertex v, const GuessSet& out) const;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

// Ground form for brute-force solver output: one explicit table per vertex,
// indexed by the visible tuple (sorted out-neighbors, first neighbor most
// significant).
class LookupStrategy final : public Strategy {
public:
    LookupStrategy(HatGame game, std::vector<std::vector<GuessSet>> tables);

    const std::vector<std::vector<GuessSet>>& tables() const { return tables_; }

    static u64 table_size(const HatGame& game, Vertex v);
    static u64 visible_index(const HatGame& game, Vertex v, const ColorView& colors);

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override;

private:
    std::vector<std::vector<GuessSet>> tables_;
};

// Composite color layout: c = c_first * second_factor + c_second (first
// coordinate most significant). Fixed so strategies serialize reproducibly.
struct ColorCodec {
    int first_factor = 1;
    int second_factor = 1;
    int encode(int c1, int c2) const;
    std::pair<int, int> decode(int c) const;
};

int pair_encode(int c1, int c2, const ColorCodec& codec);
std::pair<int, int> pair_decode(int c, const ColorCodec& codec);

// Reshape of a guess set of size s*a into [a] x [s] by ascending rank
// (rank r sits at (r div s, r mod s)), and the layout [s] x [b] of the
// hidden color: hidden = m * b + rem. Shared between a reduced vertex and
// its observers, so it is pinned here once.
struct ReducedCodec {
    int s = 1; // common divisor
    int a = 1; // g(v) = s * a
    int b = 1; // h'(z) = s * b

    std::pair<int, int> rank_position(int rank) const { return {rank / s, rank % s}; }
    int rank_of_position(int q, int m) const { return q * s + m; }
    int hidden_color(int m, int rem) const { return m * b + rem; }
    std::pair<int, int> split_hidden(int z) const { return {z / b, z % b}; }
};

// Pads a guess set to exactly `size` entries with the smallest colors of
// [h] not already present. Both a reduced vertex and its observers must
// reshape the same set, so padding is deterministic.
GuessSet pad_guesses(const GuessSet& guesses, int size, int h);

struct MaskCheckReport {
    bool ok = true;
    u64 trials_run = 0;
    // first violation, when !ok
    u64 trial = 0;
    Vertex mutated = -1;
    Vertex affected = -1;
    HatPlacement placement;
    int old_color = -1;
    int new_color = -1;
    std::string message;
};

// Visibility contract check: mutating the color of a vertex m must not
// change the guesses of any vertex whose out-neighborhood excludes m.
MaskCheckReport mask_check(const Strategy& strategy, u64 trials, u64 seed);

} // namespace hats

#endif
