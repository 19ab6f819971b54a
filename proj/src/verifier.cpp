#include "hats/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

namespace hats {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string count_string(const std::vector<int>& hatness) {
    const u128 cap = ~u128(0);
    u128 total = 1;
    bool saturated = false;
    double lg = 0.0;
    for (int h : hatness) {
        lg += std::log10(double(h));
        if (!saturated && total > cap / u128(h)) saturated = true;
        if (!saturated) total *= u128(h);
    }
    if (!saturated) return u128_to_string(total);
    return "about 10^" + std::to_string((long long)lg);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

// Index of the first correct vertex, or -1. Early exit keeps large sampled
// runs cheap: most placements are settled by the first few vertices.
int first_correct(const Strategy& strategy, const ColorView& view, int hint_start,
                  GuessSet& scratch) {
    const int n = strategy.game().n();
    for (Vertex v = 0; v < n; ++v) {
        strategy.eval(v, view, hint_start, scratch);
        if (std::binary_search(scratch.begin(), scratch.end(), view.color(v))) return v;
    }
    return -1;
}

void run_workers(int threads, u64 total, const std::function<void(u64, u64)>& body) {
    if (threads <= 1 || total < 2) {
        if (total > 0) body(0, total);
        return;
    }
    std::vector<std::thread> pool;
    u64 chunk = (total + u64(threads) - 1) / u64(threads);
    for (int t = 0; t < threads; ++t) {
        u64 lo = std::min(total, chunk * u64(t));
        u64 hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// Ascending-scan minimum: each worker scans its range in increasing index
// order and stops once the running minimum precedes its cursor, so the final
// value is the global first index regardless of thread interleaving.
void record_min(std::atomic<u64>& best, u64 index) {
    u64 seen = best.load(std::memory_order_relaxed);
    while (index < seen && !best.compare_exchange_weak(seen, index)) {
    }
}

constexpr u64 kNoWitness = ~u64(0);

u128 sat_mul(u128 a, u128 b) {
    const u128 cap = ~u128(0);
    return (b != 0 && a > cap / b) ? cap : a * b;
}

u128 sat_pow(u128 base, u128 exponent) {
    const u128 cap = ~u128(0);
    if (base <= 1) return base;
    u128 result = 1;
    for (u128 i = 0; i < exponent && result < cap; ++i) result = sat_mul(result, base);
    return result;
}

u128 binomial128(int h, int g) {
    u128 comb = 1;
    for (int i = 1; i <= g; ++i) comb = sat_mul(comb, u128(h - g + i)) / u128(i);
    return comb;
}

} // namespace

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::winning_verified: return "winning-verified";
        case Outcome::disproved: return "disproved";
        case Outcome::sampled_clean: return "sampled-clean";
        case Outcome::undecided: return "undecided";
    }
    return "?";
}

Evaluation evaluate_all(const Strategy& strategy, const HatPlacement& placement,
                        int hint_start) {
    const HatGame& game = strategy.game();
    if (!placement_valid(game, placement)) throw error("evaluate_all: invalid placement");
    Evaluation result;
    result.guesses.resize(game.n());
    SpanView view(placement);
    for (Vertex v = 0; v < game.n(); ++v) {
        strategy.eval(v, view, hint_start, result.guesses[v]);
        if (std::binary_search(result.guesses[v].begin(), result.guesses[v].end(),
                               placement.colors[v]))
            result.correct.push_back(v);
    }
    return result;
}

Verdict verify_exhaustive(const Strategy& strategy, const VerifyOptions& opts) {
    const HatGame& game = strategy.game();
    if (game.hint) throw error("verify_exhaustive: hint games go through verify_hint_game");
    auto t0 = std::chrono::steady_clock::now();

    Verdict verdict;
    u128 total = game.placement_count();
    if (total > u128(opts.budget)) {
        verdict.outcome = Outcome::undecided;
        verdict.required = count_string(game.hatness);
        verdict.note = "budget " + std::to_string(opts.budget) + " placements, required " +
                       verdict.required;
        verdict.wall_time_s = seconds_since(t0);
        return verdict;
    }
    const u64 n_placements = u64(total);
    const PlacementSpace space(game.hatness);
    std::atomic<u64> best{kNoWitness};

    run_workers(resolve_threads(opts.threads), n_placements, [&](u64 lo, u64 hi) {
        std::vector<int> colors;
        space.decode_into(lo, colors);
        SpanView view(colors);
        GuessSet scratch;
        for (u64 idx = lo; idx < hi; ++idx) {
            if (idx >= best.load(std::memory_order_relaxed)) break;
            if (first_correct(strategy, view, -1, scratch) < 0) {
                record_min(best, idx);
                break;
            }
            space.next(colors);
        }
    });

    u64 found = best.load();
    if (found == kNoWitness) {
        verdict.outcome = Outcome::winning_verified;
        verdict.placements_checked = n_placements;
    } else {
        verdict.outcome = Outcome::disproved;
        verdict.witness = space.decode(found);
        verdict.placements_checked = found + 1;
    }
    verdict.wall_time_s = seconds_since(t0);
    return verdict;
}

Verdict verify_hint_game(const Strategy& strategy, const VerifyOptions& opts) {
    const HatGame& game = strategy.game();
    if (!game.hint) throw error("verify_hint_game: game has no hint");
    auto t0 = std::chrono::steady_clock::now();
    const Vertex b = game.hint->vertex;
    const int w = game.hint->width;
    const int hb = game.hatness[b];
    const int n = game.n();

    Verdict verdict;
    u128 pairs = game.placement_count() * u128(w);
    if (pairs > u128(opts.budget)) {
        verdict.outcome = Outcome::undecided;
        verdict.required = count_string(game.hatness) + " x " + std::to_string(w);
        verdict.note = "budget " + std::to_string(opts.budget) +
                       " placement-window pairs, required " + verdict.required;
        verdict.wall_time_s = seconds_since(t0);
        return verdict;
    }
    const u64 n_placements = u64(game.placement_count());
    const PlacementSpace space(game.hatness);
    std::atomic<u64> best{kNoWitness}; // placement index * w + window rank

    run_workers(resolve_threads(opts.threads), n_placements, [&](u64 lo, u64 hi) {
        std::vector<int> colors;
        space.decode_into(lo, colors);
        SpanView view(colors);
        GuessSet scratch, recheck;
        std::vector<int> starts(w);
        std::vector<GuessSet> first_sets(n);
        for (u64 idx = lo; idx < hi; ++idx) {
            if (idx * u64(w) >= best.load(std::memory_order_relaxed)) break;
            // valid window starts for this placement, ascending
            for (int j = 0; j < w; ++j) {
                int x = colors[b] - j;
                starts[j] = x < 0 ? x + hb : x;
            }
            std::sort(starts.begin(), starts.end());

            bool other_correct = false;
            for (Vertex v = 0; v < n; ++v) {
                if (v == b) continue;
                strategy.eval(v, view, starts[0], first_sets[v]);
                if (std::binary_search(first_sets[v].begin(), first_sets[v].end(), colors[v]))
                    other_correct = true;
            }
            if (w >= 2) {
                // guesses away from the hint vertex must not depend on the window
                for (Vertex v = 0; v < n; ++v) {
                    if (v == b) continue;
                    strategy.eval(v, view, starts[1], recheck);
                    if (recheck != first_sets[v])
                        throw error("strategy bug: vertex " + std::to_string(v) +
                                    " guesses depend on the hint window start");
                }
            }
            if (!other_correct) {
                bool disproof_here = false;
                for (int j = 0; j < w; ++j) {
                    strategy.eval(b, view, starts[j], scratch);
                    if (!std::binary_search(scratch.begin(), scratch.end(), colors[b])) {
                        record_min(best, idx * u64(w) + u64(j));
                        disproof_here = true;
                        break;
                    }
                }
                if (disproof_here) break;
            }
            space.next(colors);
        }
    });

    u64 found = best.load();
    if (found == kNoWitness) {
        verdict.outcome = Outcome::winning_verified;
        verdict.placements_checked = n_placements * u64(w);
    } else {
        verdict.outcome = Outcome::disproved;
        u64 p_idx = found / u64(w);
        int rank = int(found % u64(w));
        verdict.witness = space.decode(p_idx);
        std::vector<int> starts(w);
        for (int j = 0; j < w; ++j) {
            int x = verdict.witness->colors[b] - j;
            starts[j] = x < 0 ? x + hb : x;
        }
        std::sort(starts.begin(), starts.end());
        verdict.witness_hint_start = starts[rank];
        verdict.placements_checked = found + 1;
    }
    verdict.wall_time_s = seconds_since(t0);
    return verdict;
}

Verdict verify_sampled(const Strategy& strategy, u64 n_samples, u64 seed, int threads) {
    const HatGame& game = strategy.game();
    if (game.hint) throw error("verify_sampled: hint games not supported");
    auto t0 = std::chrono::steady_clock::now();
    const int n = game.n();
    std::atomic<u64> best{kNoWitness};

    run_workers(resolve_threads(threads), n_samples, [&](u64 lo, u64 hi) {
        std::vector<int> colors(n);
        SpanView view(colors);
        GuessSet scratch;
        for (u64 i = lo; i < hi; ++i) {
            if (i >= best.load(std::memory_order_relaxed)) break;
            for (Vertex v = 0; v < n; ++v)
                colors[v] = rng_below(rng_word(seed, i, u64(v)), game.hatness[v]);
            if (first_correct(strategy, view, -1, scratch) < 0) {
                record_min(best, i);
                break;
            }
        }
    });

    Verdict verdict;
    verdict.seed = seed;
    u64 found = best.load();
    if (found == kNoWitness) {
        verdict.outcome = Outcome::sampled_clean;
        verdict.placements_checked = n_samples;
    } else {
        verdict.outcome = Outcome::disproved;
        HatPlacement p;
        p.colors.resize(n);
        for (Vertex v = 0; v < n; ++v)
            p.colors[v] = rng_below(rng_word(seed, found, u64(v)), game.hatness[v]);
        verdict.witness = std::move(p);
        verdict.placements_checked = found + 1;
    }
    verdict.wall_time_s = seconds_since(t0);
    return verdict;
}

u128 strategy_space_size(const HatGame& game) {
    u128 space = 1;
    for (Vertex v = 0; v < game.n(); ++v) {
        u128 entries = 1;
        for (Vertex u : game.graph.out_neighbors(v))
            entries = sat_mul(entries, u128(game.hatness[u]));
        space = sat_mul(space, sat_pow(binomial128(game.hatness[v], game.guesses[v]), entries));
        if (space == ~u128(0)) return space;
    }
    return space;
}

namespace {

// Backtracking over per-vertex lookup tables. A placement is covered once
// some fixed table entry guesses it correctly; a branch dies as soon as it
// strands a placement no remaining entry can cover, or forces more than g(u)
// distinct colors onto a single not-yet-assigned entry.
class BruteForcer {
public:
    BruteForcer(const HatGame& game, u64 budget) : game_(game), budget_(budget), n_(game.n()) {}

    SolveResult run() {
        auto t0 = std::chrono::steady_clock::now();
        SolveResult result;
        u128 space = strategy_space_size(game_);
        result.space = (space == ~u128(0)) ? "huge" : u128_to_string(space);

        if (space > u128(budget_)) {
            result.status = SolveStatus::undecided;
            result.note = "strategy space " + result.space + " exceeds budget " +
                          std::to_string(budget_);
            result.wall_time_s = seconds_since(t0);
            return result;
        }
        for (int h : game_.hatness) {
            if (h > 64) {
                result.status = SolveStatus::undecided;
                result.note = "hatness above 64 unsupported by the solver";
                return result;
            }
        }
        u128 placements = game_.placement_count();
        u128 entry_bytes = 0;
        for (Vertex v = 0; v < n_; ++v)
            entry_bytes += sat_mul(u128(LookupStrategy::table_size(game_, v)),
                                   u128(game_.hatness[v]));
        if (placements > u128(kPlacementCap) || entry_bytes > u128(kEntryByteCap)) {
            result.status = SolveStatus::undecided;
            result.note = "placement state exceeds solver memory cap";
            return result;
        }
        n_placements_ = u64(placements);

        prepare();
        bool found = false;
        try {
            found = assign_vertex(0, 0);
        } catch (const BudgetExceeded&) {
            result.status = SolveStatus::undecided;
            result.nodes_explored = nodes_;
            result.note = "node budget " + std::to_string(budget_) + " exhausted";
            result.wall_time_s = seconds_since(t0);
            return result;
        }
        result.nodes_explored = nodes_;
        if (found) {
            result.status = SolveStatus::winning;
            std::vector<std::vector<GuessSet>> tables(n_);
            for (int k = 0; k < n_; ++k) tables[order_[k]] = assignment_[k];
            result.strategy = std::make_shared<LookupStrategy>(game_, std::move(tables));
        } else {
            result.status = SolveStatus::losing;
        }
        result.wall_time_s = seconds_since(t0);
        return result;
    }

private:
    struct BudgetExceeded {};
    static constexpr u64 kPlacementCap = u64(1) << 24;
    static constexpr u64 kEntryByteCap = u64(1) << 26;

    void prepare() {
        order_.resize(n_);
        for (int v = 0; v < n_; ++v) order_[v] = v;
        std::vector<u128> table_space(n_);
        for (int v = 0; v < n_; ++v) {
            u128 entries = 1;
            for (Vertex u : game_.graph.out_neighbors(v))
                entries = sat_mul(entries, u128(game_.hatness[u]));
            table_space[v] = sat_pow(binomial128(game_.hatness[v], game_.guesses[v]), entries);
        }
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return table_space[a] < table_space[b]; });

        pos_of_vertex_.assign(n_, 0);
        for (int k = 0; k < n_; ++k) pos_of_vertex_[order_[k]] = k;

        int all_xor = 0;
        for (int v = 0; v < n_; ++v) all_xor ^= v;
        remaining_.assign(n_placements_, std::uint8_t(n_));
        covered_.assign(n_placements_, 0);
        xor_unassigned_.assign(n_placements_, std::uint8_t(all_xor));

        entries_of_.resize(n_);
        free_of_.resize(n_);
        req_count_.resize(n_);
        req_mask_.resize(n_);
        req_distinct_.resize(n_);
        assignment_.resize(n_);
        for (int k = 0; k < n_; ++k) {
            int v = order_[k];
            u64 entries = LookupStrategy::table_size(game_, v);
            entries_of_[k] = entries;
            const auto& nb = game_.graph.out_neighbors(v);
            for (int u = 0; u < n_; ++u)
                if (!std::binary_search(nb.begin(), nb.end(), u)) free_of_[k].push_back(u);
            req_count_[k].assign(entries * u64(game_.hatness[v]), 0);
            req_mask_[k].assign(entries, 0);
            req_distinct_[k].assign(entries, 0);
            assignment_[k].assign(entries, {});
        }

        weights_.assign(n_, 1);
        for (int v = n_ - 2; v >= 0; --v)
            weights_[v] = weights_[v + 1] * u64(game_.hatness[v + 1]);
    }

    int color_at(u64 p, int v) const {
        return int((p / weights_[v]) % u64(game_.hatness[v]));
    }

    u64 entry_of(int v, u64 p) const {
        u64 e = 0;
        for (Vertex u : game_.graph.out_neighbors(v))
            e = e * u64(game_.hatness[u]) + u64(color_at(p, u));
        return e;
    }

    bool add_requirement(int u, u64 p) {
        int k = pos_of_vertex_[u];
        u64 e = entry_of(u, p);
        int color = color_at(p, u);
        auto& cnt = req_count_[k][e * u64(game_.hatness[u]) + u64(color)];
        if (cnt == 0) {
            req_mask_[k][e] |= u64(1) << color;
            req_distinct_[k][e] += 1;
        }
        cnt += 1;
        return req_distinct_[k][e] <= game_.guesses[u];
    }

    void drop_requirement(int u, u64 p) {
        int k = pos_of_vertex_[u];
        u64 e = entry_of(u, p);
        int color = color_at(p, u);
        auto& cnt = req_count_[k][e * u64(game_.hatness[u]) + u64(color)];
        cnt -= 1;
        if (cnt == 0) {
            req_mask_[k][e] &= ~(u64(1) << color);
            req_distinct_[k][e] -= 1;
        }
    }

    // Walk the placements matching entry e of order-position k, in a fixed
    // odometer order over the free vertices. Apply=true performs coverage
    // bookkeeping and returns false as soon as the branch dies; Apply=false
    // reverts the first `limit` placements of the same walk.
    template <bool Apply>
    bool walk_entry(int k, u64 entry, u64 cand_mask, u64 limit, u64& processed) {
        const int v = order_[k];
        const auto& nb = game_.graph.out_neighbors(v);
        u64 base = 0;
        {
            u64 e = entry;
            for (int i = int(nb.size()) - 1; i >= 0; --i) {
                int h = game_.hatness[nb[i]];
                base += weights_[nb[i]] * (e % u64(h));
                e /= u64(h);
            }
        }
        const auto& free_vertices = free_of_[k];
        free_colors_.assign(free_vertices.size(), 0);

        u64 total_free = 1;
        for (int u : free_vertices) total_free *= u64(game_.hatness[u]);

        processed = 0;
        u64 p = base;
        for (u64 step = 0; step < total_free; ++step) {
            if (processed >= limit) return true;
            bool covers = (cand_mask >> color_at(p, v)) & 1;
            if constexpr (Apply) {
                remaining_[p] -= 1;
                xor_unassigned_[p] = std::uint8_t(xor_unassigned_[p] ^ v);
                covered_[p] = std::uint8_t(covered_[p] + (covers ? 1 : 0));
                ++processed;
                if (covered_[p] == 0) {
                    if (remaining_[p] == 0) return false; // stranded placement
                    if (remaining_[p] == 1 && !add_requirement(xor_unassigned_[p], p))
                        return false;
                }
            } else {
                if (covered_[p] == 0 && remaining_[p] == 1)
                    drop_requirement(xor_unassigned_[p], p);
                covered_[p] = std::uint8_t(covered_[p] - (covers ? 1 : 0));
                xor_unassigned_[p] = std::uint8_t(xor_unassigned_[p] ^ v);
                remaining_[p] += 1;
                ++processed;
            }
            for (int i = int(free_vertices.size()) - 1; i >= 0; --i) {
                int u = free_vertices[i];
                if (++free_colors_[i] < game_.hatness[u]) {
                    p += weights_[u];
                    break;
                }
                p -= weights_[u] * u64(free_colors_[i] - 1);
                free_colors_[i] = 0;
            }
        }
        return true;
    }

    bool assign_vertex(int k, u64 entry) {
        if (k == n_) return true;
        if (entry == entries_of_[k]) return assign_vertex(k + 1, 0);
        const int v = order_[k];
        const int h = game_.hatness[v], g = game_.guesses[v];

        GuessSet cand(g);
        for (int i = 0; i < g; ++i) cand[i] = i;
        while (true) {
            u64 cand_mask = 0;
            for (int c : cand) cand_mask |= u64(1) << c;
            if ((cand_mask & req_mask_[k][entry]) == req_mask_[k][entry]) {
                if (++nodes_ > budget_) throw BudgetExceeded{};
                u64 processed = 0;
                bool alive = walk_entry<true>(k, entry, cand_mask, ~u64(0), processed);
                if (alive) {
                    assignment_[k][entry] = cand;
                    if (assign_vertex(k, entry + 1)) return true;
                }
                u64 reverted = 0;
                walk_entry<false>(k, entry, cand_mask, processed, reverted);
            }
            // next g-combination of [h] in lexicographic order
            int i = g - 1;
            while (i >= 0 && cand[i] == h - g + i) --i;
            if (i < 0) break;
            ++cand[i];
            for (int j = i + 1; j < g; ++j) cand[j] = cand[j - 1] + 1;
        }
        return false;
    }

    const HatGame& game_;
    u64 budget_;
    int n_;
    u64 n_placements_ = 0;
    u64 nodes_ = 0;
    std::vector<int> order_, pos_of_vertex_;
    std::vector<u64> entries_of_;
    std::vector<std::vector<int>> free_of_;
    std::vector<u64> weights_;
    std::vector<int> free_colors_;
    std::vector<std::uint8_t> remaining_, covered_, xor_unassigned_;
    std::vector<std::vector<std::uint8_t>> req_count_;
    std::vector<std::vector<u64>> req_mask_;
    std::vector<std::vector<std::uint8_t>> req_distinct_;
    std::vector<std::vector<GuessSet>> assignment_;
};

} // namespace

SolveResult brute_force_decide(const HatGame& game, const SolveOptions& opts) {
    if (game.hint) throw error("brute_force_decide: hint games not supported");
    auto bad = validate_game(game);
    if (!bad.empty()) throw error("brute_force_decide: " + bad.front());
    BruteForcer solver(game, opts.budget);
    return solver.run();
}

} // namespace hats
