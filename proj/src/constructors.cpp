#include "hats/constructors.hpp"

#include <algorithm>
#include <numeric>

#include "hats/rational.hpp"

namespace hats {

namespace {

using nlohmann::json;

void require(bool condition, const std::string& message) {
    if (!condition) throw error(message);
}

void require_hint_free(const StrategyPtr& s, const char* who) {
    require(s != nullptr, std::string(who) + ": null strategy");
    require(!s->game().hint, std::string(who) + ": hint games not composable here");
}

bool sorted_unique(const std::vector<Vertex>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] <= v[i - 1]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// clique strategy (interval covering of [0,1) in units of 1/lcm)

class CliqueStrategyImpl final : public Strategy {
public:
    CliqueStrategyImpl(HatGame game, json prov, std::int64_t denom)
        : Strategy(std::move(game), std::move(prov)), denom_(denom) {
        const int n = game_.n();
        weight_.resize(n);
        lo_.resize(n);
        hi_.resize(n);
        std::int64_t pos = 0;
        for (Vertex v = 0; v < n; ++v) {
            weight_[v] = denom_ / game_.hatness[v];
            std::int64_t len = weight_[v] * game_.guesses[v];
            lo_[v] = std::min(pos, denom_);
            hi_[v] = std::min(pos + len, denom_);
            pos += len;
        }
    }

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override {
        std::int64_t sum = 0;
        for (Vertex u = 0; u < game_.n(); ++u) {
            if (u == v) continue;
            sum = (sum + std::int64_t(colors.color(u)) * weight_[u]) % denom_;
        }
        for (int c = 0; c < game_.hatness[v]; ++c) {
            std::int64_t point = (sum + std::int64_t(c) * weight_[v]) % denom_;
            if (point >= lo_[v] && point < hi_[v]) out.push_back(c);
        }
    }

private:
    std::int64_t denom_;
    std::vector<std::int64_t> weight_, lo_, hi_;
};

// ---------------------------------------------------------------------------
// hint machinery

class HintWindowBaseImpl final : public Strategy {
public:
    HintWindowBaseImpl(HatGame game, json prov) : Strategy(std::move(game), std::move(prov)) {}

protected:
    void eval_impl(Vertex, const ColorView&, int hint_start, GuessSet& out) const override {
        const int h = game_.hatness[0];
        const int w = game_.hint->width;
        require(hint_start >= 0 && hint_start < h, "hint base: window start missing");
        for (int i = 0; i < w; ++i) out.push_back((hint_start + i) % h);
        std::sort(out.begin(), out.end());
    }
};

class HintExtendImpl final : public Strategy {
public:
    HintExtendImpl(HatGame game, json prov, StrategyPtr child, LTable table)
        : Strategy(std::move(game), std::move(prov)), child_(std::move(child)),
          table_(table) {
        a_ = game_.n() - 1;
        b_ = child_->game().hint->vertex;
    }

protected:
    void eval_impl(Vertex v, const ColorView& colors, int hint_start, GuessSet& out) const override {
        if (v == a_) {
            require(hint_start >= 0 && hint_start < table_.h_a,
                    "hint extend: window start missing");
            const int j = colors.color(b_);
            for (int i = 0; i < table_.w_a; ++i) {
                int row = (hint_start + i) % table_.h_a;
                if (!table_.has_letter(row, j)) out.push_back(row);
            }
            std::sort(out.begin(), out.end());
        } else if (v == b_) {
            // A not guessing pins B's color to the lettered columns of A's row
            int row = colors.color(a_);
            int derived = int((long long)row * table_.w_b % table_.h_b);
            child_->eval(v, colors, derived, out);
        } else {
            child_->eval(v, colors, -1, out);
        }
    }

private:
    StrategyPtr child_;
    LTable table_;
    Vertex a_, b_;
};

class DropHintImpl final : public Strategy {
public:
    DropHintImpl(HatGame game, json prov, StrategyPtr child)
        : Strategy(std::move(game), std::move(prov)), child_(std::move(child)) {}

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override {
        child_->eval(v, colors, 0, out);
    }

private:
    StrategyPtr child_;
};

// ---------------------------------------------------------------------------
// reduced join (also realizes product and substitution)

class ReducedJoinImpl final : public Strategy {
public:
    ReducedJoinImpl(HatGame joint, json prov, StrategyPtr inner, StrategyPtr outer,
                    Arbitrator arb, Vertex z, std::vector<int> divisors_by_reduced)
        : Strategy(std::move(joint), std::move(prov)), inner_(std::move(inner)),
          outer_(std::move(outer)), arb_(std::move(arb)), z_(z) {
        const HatGame& gi = inner_->game();
        const HatGame& go = outer_->game();
        n_inner_ = gi.n();
        hz_ = go.hatness[z_];

        klass_.assign(n_inner_, 0);
        for (Vertex u : arb_.s_set) klass_[u] = 1;
        for (std::size_t i = 0; i < arb_.reduced.size(); ++i) klass_[arb_.reduced[i]] = 2;

        first_div_.assign(n_inner_, 1);
        s_div_.assign(n_inner_, 1);
        a_part_.assign(n_inner_, 0);
        b_part_.assign(n_inner_, 1);
        for (Vertex u : arb_.s_set)
            if (klass_[u] == 1) first_div_[u] = hz_;
        for (std::size_t i = 0; i < arb_.reduced.size(); ++i) {
            Vertex u = arb_.reduced[i];
            int sv = divisors_by_reduced[i];
            s_div_[u] = sv;
            a_part_[u] = gi.guesses[u] / sv;
            b_part_[u] = hz_ / sv;
            first_div_[u] = b_part_[u];
        }

        outer_map_.assign(go.n(), -1);
        joint_to_outer_.assign(game_.n(), -1);
        for (Vertex w = 0; w < go.n(); ++w) {
            if (w == z_) continue;
            Vertex mapped = n_inner_ + (w < z_ ? w : w - 1);
            outer_map_[w] = mapped;
            joint_to_outer_[mapped] = w;
        }
    }

    struct InnerView final : ColorView {
        const ReducedJoinImpl* rj;
        const ColorView* parent;
        InnerView(const ReducedJoinImpl* r, const ColorView& p) : rj(r), parent(&p) {}
        int color(Vertex u) const override { return parent->color(u) / rj->first_div_[u]; }
    };

    struct OuterZView final : ColorView {
        const ReducedJoinImpl* rj;
        const ColorView* parent;
        int z_color;
        OuterZView(const ReducedJoinImpl* r, const ColorView& p, int zc)
            : rj(r), parent(&p), z_color(zc) {}
        int color(Vertex w) const override {
            return w == rj->z_ ? z_color : parent->color(rj->outer_map_[w]);
        }
    };

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override {
        if (v < n_inner_) {
            InnerView iv(this, colors);
            if (klass_[v] == 0) {
                inner_->eval(v, iv, -1, out);
                return;
            }
            GuessSet stage1;
            inner_->eval(v, iv, -1, stage1);
            GuessSet stage2;
            OuterZView ov(this, colors, 0); // z's own evaluator never reads z
            outer_->eval(z_, ov, -1, stage2);
            if (klass_[v] == 1) {
                for (int a : stage1)
                    for (int b : stage2) out.push_back(a * hz_ + b);
            } else {
                const GuessSet padded =
                    pad_guesses(stage1, inner_->game().guesses[v], inner_->game().hatness[v]);
                const int sv = s_div_[v], bv = b_part_[v];
                for (int q = 0; q < a_part_[v]; ++q) {
                    for (int b : stage2) {
                        int m = b / bv, rem = b % bv;
                        out.push_back(padded[q * sv + m] * bv + rem);
                    }
                }
                std::sort(out.begin(), out.end());
            }
            return;
        }
        Vertex w = joint_to_outer_[v];
        if (outer_->game().graph.has_arc(w, z_)) {
            int proxy = arbitrated_proxy(colors);
            OuterZView ov(this, colors, proxy);
            outer_->eval(w, ov, -1, out);
        } else {
            OuterZView ov(this, colors, 0);
            outer_->eval(w, ov, -1, out);
        }
    }

private:
    // Stage-1 winner on S (first coordinates), and the color it hands to the
    // second stage in z's place. All observers of z compute the same value.
    int arbitrated_proxy(const ColorView& colors) const {
        InnerView iv(this, colors);
        Vertex u = arb_.s_set[0];
        GuessSet winner_guesses;
        if (arb_.kind == Arbitrator::Kind::out_closed_simulation) {
            GuessSet tmp;
            bool found = false;
            for (Vertex cand : arb_.s_set) {
                inner_->eval(cand, iv, -1, tmp);
                if (std::binary_search(tmp.begin(), tmp.end(), iv.color(cand))) {
                    u = cand;
                    winner_guesses = tmp;
                    found = true;
                    break;
                }
            }
            if (!found) inner_->eval(u, iv, -1, winner_guesses);
        }
        if (klass_[u] == 1) return colors.color(u) % hz_;
        // reduced winner: rank of the first coordinate inside the padded set
        if (arb_.kind == Arbitrator::Kind::singleton) inner_->eval(u, iv, -1, winner_guesses);
        const GuessSet padded =
            pad_guesses(winner_guesses, inner_->game().guesses[u], inner_->game().hatness[u]);
        const int bv = b_part_[u];
        int cg = colors.color(u) / bv;
        int rem = colors.color(u) % bv;
        auto it = std::lower_bound(padded.begin(), padded.end(), cg);
        int rank = (it != padded.end() && *it == cg) ? int(it - padded.begin()) : 0;
        int m = rank % s_div_[u];
        return m * bv + rem;
    }

    StrategyPtr inner_, outer_;
    Arbitrator arb_;
    Vertex z_;
    int n_inner_, hz_;
    std::vector<std::uint8_t> klass_; // 0 plain, 1 in S\I, 2 in I
    std::vector<int> first_div_, s_div_, a_part_, b_part_;
    std::vector<Vertex> outer_map_, joint_to_outer_;
};

// ---------------------------------------------------------------------------
// half-edge removal and strong vertices

class RemoveHalfEdgeImpl final : public Strategy {
public:
    RemoveHalfEdgeImpl(HatGame game, json prov, StrategyPtr child, Vertex from, Vertex to)
        : Strategy(std::move(game), std::move(prov)), child_(std::move(child)), from_(from),
          to_(to) {}

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override {
        if (v != from_) {
            child_->eval(v, colors, -1, out);
            return;
        }
        GuessSet tmp;
        for (int c = 0; c < child_->game().hatness[to_]; ++c) {
            OverrideView ov(colors, to_, c);
            child_->eval(from_, ov, -1, tmp);
            out.insert(out.end(), tmp.begin(), tmp.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

private:
    StrategyPtr child_;
    Vertex from_, to_;
};

class StrongVertexRemoveImpl final : public Strategy {
public:
    StrongVertexRemoveImpl(HatGame game, json prov, StrategyPtr child, Vertex a)
        : Strategy(std::move(game), std::move(prov)), child_(std::move(child)), a_(a) {}

    struct LiftView final : ColorView {
        const ColorView* parent;
        Vertex a;
        int a_color;
        LiftView(const ColorView& p, Vertex av, int c) : parent(&p), a(av), a_color(c) {}
        int color(Vertex y) const override {
            if (y == a) return a_color;
            return parent->color(y < a ? y : y - 1);
        }
    };

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override {
        Vertex child_vertex = v < a_ ? v : v + 1;
        GuessSet tmp;
        for (int c = 0; c < child_->game().hatness[a_]; ++c) {
            LiftView lv(colors, a_, c);
            child_->eval(child_vertex, lv, -1, tmp);
            out.insert(out.end(), tmp.begin(), tmp.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }

private:
    StrategyPtr child_;
    Vertex a_;
};

// ---------------------------------------------------------------------------
// stars

class StarScrapheapImpl final : public Strategy {
public:
    StarScrapheapImpl(HatGame game, json prov, int s, int H, int n_leaves)
        : Strategy(std::move(game), std::move(prov)), s_(s), big_h_(H), n_leaves_(n_leaves) {
        powers_.resize(s_ + 1);
        powers_[s_] = 1;
        for (int j = s_ - 1; j >= 0; --j) powers_[j] = powers_[j + 1] * u64(big_h_);
    }

    int leaf_guess(int leaf, int center_color) const {
        for (int j = 0; j <= s_; ++j)
            if (int((u64(leaf) / powers_[j]) % u64(big_h_)) == center_color) return j;
        return 0;
    }

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override {
        const Vertex center = n_leaves_;
        if (v < center) {
            out.push_back(leaf_guess(v, colors.color(center)));
            return;
        }
        star_center_guesses(
            game_, colors, [this](int leaf, int c) { return leaf_guess(leaf, c); }, out);
    }

private:
    template <typename LeafGuess>
    static void star_center_guesses(const HatGame& game, const ColorView& colors,
                                    LeafGuess&& leaf_guess, GuessSet& out) {
        const Vertex center = game.n() - 1;
        const int budget = game.guesses[center];
        GuessSet bad;
        for (int c = 0; c < game.hatness[center]; ++c) {
            bool someone_correct = false;
            for (Vertex leaf = 0; leaf < center; ++leaf) {
                if (leaf_guess(leaf, c) == colors.color(leaf)) {
                    someone_correct = true;
                    break;
                }
            }
            if (!someone_correct) bad.push_back(c);
        }
        require(int(bad.size()) <= budget, "star: more uncaught colors than the center budget");
        out = pad_guesses(bad, budget, game.hatness[center]);
    }

    friend class StarPhfImpl;
    int s_, big_h_, n_leaves_;
    std::vector<u64> powers_;
};

class StarPhfImpl final : public Strategy {
public:
    StarPhfImpl(HatGame game, json prov, PhfArray phf)
        : Strategy(std::move(game), std::move(prov)), phf_(std::move(phf)) {}

protected:
    void eval_impl(Vertex v, const ColorView& colors, int, GuessSet& out) const override {
        const Vertex center = phf_.row_count();
        if (v < center) {
            out.push_back(phf_.rows[v][colors.color(center)]);
            return;
        }
        const int budget = game_.guesses[center];
        GuessSet bad;
        for (int c = 0; c < game_.hatness[center]; ++c) {
            bool someone_correct = false;
            for (Vertex leaf = 0; leaf < center; ++leaf) {
                if (phf_.rows[leaf][c] == colors.color(leaf)) {
                    someone_correct = true;
                    break;
                }
            }
            if (!someone_correct) bad.push_back(c);
        }
        require(int(bad.size()) <= budget, "star: more uncaught colors than the center budget");
        out = pad_guesses(bad, budget, game_.hatness[center]);
    }

private:
    PhfArray phf_;
};

// ---------------------------------------------------------------------------
// shared joint-game construction for reduced_join

StrategyPtr make_reduced_join(StrategyPtr inner, const Arbitrator& arb, StrategyPtr outer,
                              Vertex z, const std::vector<int>& divisors, json prov) {
    require_hint_free(inner, "reduced_join inner");
    require_hint_free(outer, "reduced_join outer");
    const HatGame& gi = inner->game();
    const HatGame& go = outer->game();
    require(z >= 0 && z < go.n(), "reduced_join: z out of range");
    require(!arb.s_set.empty() && sorted_unique(arb.s_set), "reduced_join: S must be sorted, unique, nonempty");
    require(arb.s_set.back() < gi.n(), "reduced_join: S outside the inner game");
    require(sorted_unique(arb.reduced) || arb.reduced.empty(), "reduced_join: I must be sorted and unique");
    for (Vertex u : arb.reduced)
        require(std::binary_search(arb.s_set.begin(), arb.s_set.end(), u),
                "reduced_join: I must be a subset of S");
    if (arb.kind == Arbitrator::Kind::singleton) {
        require(arb.s_set.size() == 1, "reduced_join: singleton arbitrator needs |S| = 1");
        require(arb.reduced.empty(), "reduced_join: singleton arbitrator takes I empty");
    } else {
        for (Vertex u : arb.s_set)
            for (Vertex w : gi.graph.out_neighbors(u))
                require(std::binary_search(arb.s_set.begin(), arb.s_set.end(), w),
                        "reduced_join: arbitrator set is not out-closed at vertex " +
                            std::to_string(u));
    }
    require(divisors.size() == arb.reduced.size(), "reduced_join: one divisor per reduced vertex");
    const int hz = go.hatness[z], gz = go.guesses[z];
    for (std::size_t i = 0; i < arb.reduced.size(); ++i) {
        Vertex u = arb.reduced[i];
        int sv = divisors[i];
        require(sv >= 1, "reduced_join: divisor must be positive");
        require(gi.guesses[u] % sv == 0, "reduced_join: divisor does not divide g(" +
                                             std::to_string(u) + ")");
        require(hz % sv == 0, "reduced_join: divisor does not divide h'(z)");
    }

    const int n_inner = gi.n();
    const int n_joint = n_inner + go.n() - 1;
    auto map_outer = [&](Vertex w) { return n_inner + (w < z ? w : w - 1); };

    VisibilityGraph graph(n_joint);
    for (auto [u, v] : gi.graph.arcs()) graph.add_arc(u, v);
    for (auto [u, v] : go.graph.arcs()) {
        if (u == z || v == z) continue;
        graph.add_arc(map_outer(u), map_outer(v));
    }
    for (Vertex u : arb.s_set) {
        for (Vertex w : go.graph.out_neighbors(z)) graph.add_arc(u, map_outer(w));
        for (Vertex w : go.graph.in_neighbors(z)) graph.add_arc(map_outer(w), u);
    }

    std::vector<int> hatness(n_joint), guesses(n_joint);
    std::vector<std::uint8_t> klass(n_inner, 0);
    for (Vertex u : arb.s_set) klass[u] = 1;
    for (Vertex u : arb.reduced) klass[u] = 2;
    std::vector<int> divisor_of(n_inner, 1);
    for (std::size_t i = 0; i < arb.reduced.size(); ++i) divisor_of[arb.reduced[i]] = divisors[i];

    for (Vertex u = 0; u < n_inner; ++u) {
        switch (klass[u]) {
            case 0:
                hatness[u] = gi.hatness[u];
                guesses[u] = gi.guesses[u];
                break;
            case 1:
                hatness[u] = gi.hatness[u] * hz;
                guesses[u] = gi.guesses[u] * gz;
                break;
            default: {
                int sv = divisor_of[u];
                hatness[u] = gi.hatness[u] * (hz / sv);
                guesses[u] = (gi.guesses[u] / sv) * gz;
                break;
            }
        }
    }
    for (Vertex w = 0; w < go.n(); ++w) {
        if (w == z) continue;
        hatness[map_outer(w)] = go.hatness[w];
        guesses[map_outer(w)] = go.guesses[w];
    }

    HatGame joint = make_game(std::move(graph), std::move(hatness), std::move(guesses));
    return std::make_shared<ReducedJoinImpl>(std::move(joint), std::move(prov), std::move(inner),
                                             std::move(outer), arb, z, divisors);
}

json arbitrator_json(const Arbitrator& arb) {
    return json{{"kind", arb.kind == Arbitrator::Kind::singleton ? "singleton" : "out_closed"},
                {"set", arb.s_set},
                {"reduced", arb.reduced}};
}

StrategyPtr make_product(StrategyPtr left, StrategyPtr right, Vertex left_vertex,
                         Vertex right_vertex, json prov) {
    require_hint_free(left, "product");
    require_hint_free(right, "product");
    require(left_vertex >= 0 && left_vertex < left->game().n(),
            "product: shared vertex missing from the left game");
    require(right_vertex >= 0 && right_vertex < right->game().n(),
            "product: shared vertex missing from the right game");
    Arbitrator arb = Arbitrator::singleton(left_vertex);
    return make_reduced_join(std::move(left), arb, std::move(right), right_vertex, {}, std::move(prov));
}

} // namespace

// ---------------------------------------------------------------------------

Arbitrator Arbitrator::singleton(Vertex v) {
    Arbitrator arb;
    arb.kind = Kind::singleton;
    arb.s_set = {v};
    return arb;
}

Arbitrator Arbitrator::out_closed(std::vector<Vertex> s_set, std::vector<Vertex> reduced) {
    Arbitrator arb;
    arb.kind = Kind::out_closed_simulation;
    std::sort(s_set.begin(), s_set.end());
    std::sort(reduced.begin(), reduced.end());
    arb.s_set = std::move(s_set);
    arb.reduced = std::move(reduced);
    return arb;
}

StrategyPtr clique_strategy(const std::vector<int>& hatness, const std::vector<int>& guesses) {
    require(!hatness.empty() && hatness.size() == guesses.size(),
            "clique: hatness and guesses must agree and be nonempty");
    const int n = int(hatness.size());
    Rational sum(0);
    for (int v = 0; v < n; ++v) {
        require(hatness[v] >= 1, "clique: hatness must be positive");
        require(guesses[v] >= 0, "clique: guesses must be nonnegative");
        sum += Rational(std::min(guesses[v], hatness[v]), hatness[v]);
    }
    if (sum < Rational(1))
        throw error("clique: sum of g/h is " + sum.str() + " < 1, the game is losing");

    std::int64_t denom = 1;
    for (int v = 0; v < n; ++v) {
        denom = std::lcm(denom, std::int64_t(hatness[v]));
        require(denom <= std::int64_t(1) << 40, "clique: hatness lcm too large");
    }

    VisibilityGraph graph(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) graph.add_edge(u, v);
    HatGame game = make_game(std::move(graph), hatness, guesses);
    json prov{{"kind", "clique"}, {"h", hatness}, {"g", guesses}};
    return std::make_shared<CliqueStrategyImpl>(std::move(game), std::move(prov), denom);
}

StrategyPtr product_at_vertex(StrategyPtr left, StrategyPtr right, Vertex left_vertex,
                              Vertex right_vertex) {
    json prov{{"kind", "product"},
              {"left_vertex", left_vertex},
              {"right_vertex", right_vertex},
              {"left", left ? left->provenance() : json()},
              {"right", right ? right->provenance() : json()}};
    return make_product(std::move(left), std::move(right), left_vertex, right_vertex,
                        std::move(prov));
}

StrategyPtr reduced_join(StrategyPtr inner, const Arbitrator& arb, StrategyPtr outer, Vertex z,
                         const std::vector<int>& divisors) {
    json prov{{"kind", "reduced_join"},
              {"z", z},
              {"arbitrator", arbitrator_json(arb)},
              {"divisors", divisors},
              {"inner", inner ? inner->provenance() : json()},
              {"outer", outer ? outer->provenance() : json()}};
    return make_reduced_join(std::move(inner), arb, std::move(outer), z, divisors,
                             std::move(prov));
}

StrategyPtr reduced_join(StrategyPtr inner, const Arbitrator& arb, StrategyPtr outer, Vertex z,
                         int uniform_divisor) {
    std::vector<int> divisors(arb.reduced.size(), uniform_divisor);
    return reduced_join(std::move(inner), arb, std::move(outer), z, divisors);
}

StrategyPtr remove_half_edge(StrategyPtr strategy, Vertex from, Vertex to) {
    require_hint_free(strategy, "remove_half_edge");
    const HatGame& g = strategy->game();
    require(g.graph.has_arc(from, to), "remove_half_edge: arc " + std::to_string(from) + "->" +
                                           std::to_string(to) + " absent");
    VisibilityGraph graph(g.n());
    for (auto [u, v] : g.graph.arcs())
        if (!(u == from && v == to)) graph.add_arc(u, v);
    std::vector<int> guesses = g.guesses;
    long long widened = (long long)g.guesses[from] * g.hatness[to];
    guesses[from] = int(std::min<long long>(widened, g.hatness[from]));
    HatGame game = make_game(std::move(graph), g.hatness, std::move(guesses));
    json prov{{"kind", "half_edge_removal"},
              {"from", from},
              {"to", to},
              {"child", strategy->provenance()}};
    return std::make_shared<RemoveHalfEdgeImpl>(std::move(game), std::move(prov),
                                                std::move(strategy), from, to);
}

StrategyPtr strong_vertex_remove(StrategyPtr strategy, Vertex a) {
    require_hint_free(strategy, "strong_vertex_remove");
    const HatGame& g = strategy->game();
    require(a >= 0 && a < g.n(), "strong_vertex_remove: vertex out of range");
    require(g.n() >= 2, "strong_vertex_remove: nothing would remain");
    const int s = g.guesses[a];
    require(g.hatness[a] == s + 1, "strong_vertex_remove: vertex is not strong (h != g+1)");
    for (Vertex u = 0; u < g.n(); ++u) {
        if (u == a) continue;
        require(g.graph.has_arc(a, u) && g.graph.has_arc(u, a),
                "strong_vertex_remove: vertex must be adjacent to all others");
    }
    VisibilityGraph graph(g.n() - 1);
    auto map = [&](Vertex v) { return v < a ? v : v - 1; };
    for (auto [u, v] : g.graph.arcs())
        if (u != a && v != a) graph.add_arc(map(u), map(v));
    std::vector<int> hatness, guesses;
    for (Vertex v = 0; v < g.n(); ++v) {
        if (v == a) continue;
        hatness.push_back(g.hatness[v]);
        guesses.push_back(std::min(g.guesses[v] * (s + 1), g.hatness[v]));
    }
    HatGame game = make_game(std::move(graph), std::move(hatness), std::move(guesses));
    json prov{{"kind", "strong_vertex"},
              {"op", "remove"},
              {"vertex", a},
              {"child", strategy->provenance()}};
    return std::make_shared<StrongVertexRemoveImpl>(std::move(game), std::move(prov),
                                                    std::move(strategy), a);
}

StrategyPtr strong_vertex_attach(StrategyPtr strategy, int s) {
    require_hint_free(strategy, "strong_vertex_attach");
    require(s >= 1, "strong_vertex_attach: s must be positive");
    const HatGame& g = strategy->game();
    for (Vertex v = 0; v < g.n(); ++v)
        require(g.guesses[v] % (s + 1) == 0,
                "strong_vertex_attach: g(" + std::to_string(v) + ") not divisible by s+1");
    json prov{{"kind", "strong_vertex"},
              {"op", "attach"},
              {"s", s},
              {"child", strategy->provenance()}};
    StrategyPtr edge = clique_strategy({s + 1, s + 1}, {s, 1});
    std::vector<Vertex> everyone(g.n());
    for (Vertex v = 0; v < g.n(); ++v) everyone[v] = v;
    Arbitrator arb = Arbitrator::out_closed(everyone, everyone);
    std::vector<int> divisors(everyone.size(), s + 1);
    return make_reduced_join(std::move(strategy), arb, std::move(edge), /*z=*/1, divisors,
                             std::move(prov));
}

int LTable::max_window_empties() const {
    int worst = 0;
    for (int col = 0; col < h_b; ++col) {
        int window = 0;
        for (int r = 0; r < w_a; ++r) window += has_letter(r, col) ? 0 : 1;
        worst = std::max(worst, window);
        for (int start = 1; start < h_a; ++start) {
            window -= has_letter(start - 1, col) ? 0 : 1;
            window += has_letter((start + w_a - 1) % h_a, col) ? 0 : 1;
            worst = std::max(worst, window);
        }
    }
    return worst;
}

LTable build_l_table(int h_a, int h_b, int w_a, int w_b, int g_a) {
    require(h_a >= 1 && h_b >= 1, "l-table: hatnesses must be positive");
    require(w_b >= 1 && w_b <= h_b, "l-table: w_B must lie in [1, h(B)]");
    require(w_a >= 1 && w_a <= h_a, "l-table: w_A must lie in [1, h(A)]");
    require(g_a >= 0, "l-table: g(A) must be nonnegative");
    if ((long long)w_b * h_a % h_b != 0)
        throw error("l-table: condition (ii) fails, h(B)=" + std::to_string(h_b) +
                    " does not divide w_B*h(A)=" + std::to_string((long long)w_b * h_a));
    if ((long long)w_a * w_b < (long long)(w_a - g_a) * h_b)
        throw error("l-table: condition (iii) fails, w_A*w_B=" + std::to_string((long long)w_a * w_b) +
                    " < (w_A-g_A)*h(B)=" + std::to_string((long long)(w_a - g_a) * h_b));
    LTable table{h_a, h_b, w_a, w_b};
    int empties = table.max_window_empties();
    require(empties <= g_a, "l-table: window check found " + std::to_string(empties) +
                                " empty cells, budget " + std::to_string(g_a));
    return table;
}

StrategyPtr hint_window_base(int hatness, int guesses) {
    require(hatness >= 1 && guesses >= 1 && guesses <= hatness,
            "hint base: need 1 <= g <= h");
    HatGame game = make_game(VisibilityGraph(1), {hatness}, {guesses}, Hint{0, guesses});
    json prov{{"kind", "hint_base"}, {"h", hatness}, {"g", guesses}};
    return std::make_shared<HintWindowBaseImpl>(std::move(game), std::move(prov));
}

StrategyPtr hint_extend(StrategyPtr hint_strategy, int h_a, int w_a, int g_a) {
    require(hint_strategy != nullptr, "hint_extend: null strategy");
    const HatGame& g = hint_strategy->game();
    require(g.hint.has_value(), "hint_extend: child game carries no hint");
    const Vertex b = g.hint->vertex;
    LTable table = build_l_table(h_a, g.hatness[b], w_a, g.hint->width, g_a);

    VisibilityGraph graph(g.n() + 1);
    for (auto [u, v] : g.graph.arcs()) graph.add_arc(u, v);
    graph.add_edge(g.n(), b);
    std::vector<int> hatness = g.hatness;
    std::vector<int> guesses = g.guesses;
    hatness.push_back(h_a);
    guesses.push_back(g_a);
    HatGame game = make_game(std::move(graph), std::move(hatness), std::move(guesses),
                             Hint{g.n(), w_a});
    json prov{{"kind", "hint_extend"},
              {"h_a", h_a},
              {"w_a", w_a},
              {"g_a", g_a},
              {"child", hint_strategy->provenance()}};
    return std::make_shared<HintExtendImpl>(std::move(game), std::move(prov),
                                            std::move(hint_strategy), table);
}

StrategyPtr drop_full_hint(StrategyPtr hint_strategy) {
    require(hint_strategy != nullptr, "drop_hint: null strategy");
    const HatGame& g = hint_strategy->game();
    require(g.hint.has_value(), "drop_hint: game carries no hint");
    require(g.hint->width == g.hatness[g.hint->vertex],
            "drop_hint: window narrower than the color range still informs");
    HatGame game = g;
    game.hint.reset();
    json prov{{"kind", "drop_hint"}, {"child", hint_strategy->provenance()}};
    return std::make_shared<DropHintImpl>(std::move(game), std::move(prov),
                                          std::move(hint_strategy));
}

StrategyPtr build_path_hint_chain(int s, int k) {
    require(s >= 1, "path chain: s must be positive");
    require(k >= 1 && k <= s, "path chain: need 1 <= k <= s");
    auto hat_at = [&](int i) { return i + 1 == s ? 2 * s - 1 : 4 * s - 2; };
    StrategyPtr chain = hint_window_base(hat_at(0), s);
    for (int i = 1; i < k; ++i)
        chain = hint_extend(chain, hat_at(i), s + i, s);
    return chain;
}

StrategyPtr build_path(int s) {
    require(s >= 1, "path: s must be positive");
    StrategyPtr left = drop_full_hint(build_path_hint_chain(s, s));
    StrategyPtr right = drop_full_hint(build_path_hint_chain(s, s));
    StrategyPtr edge = clique_strategy({2, 2}, {1, 1});
    StrategyPtr half = product_at_vertex(std::move(left), std::move(edge), s - 1, 0);
    json prov{{"kind", "path"}, {"s", s}};
    StrategyPtr whole = make_product(std::move(half), std::move(right), s, s - 1, prov);
    for (Vertex v = 0; v < whole->game().n(); ++v) {
        require(whole->game().hatness[v] == 4 * s - 2 && whole->game().guesses[v] == s,
                "path: hatness/guess pattern mismatch");
    }
    return whole;
}

namespace {

HatGame star_game(int n_leaves, int leaf_h, int center_h, int center_g) {
    VisibilityGraph graph(n_leaves + 1);
    for (Vertex leaf = 0; leaf < n_leaves; ++leaf) graph.add_edge(leaf, n_leaves);
    std::vector<int> hatness(n_leaves, leaf_h);
    std::vector<int> guesses(n_leaves, 1);
    hatness.push_back(center_h);
    guesses.push_back(std::min(center_g, center_h));
    return make_game(std::move(graph), std::move(hatness), std::move(guesses));
}

} // namespace

StrategyPtr star_scrapheap(int s, int H) {
    require(s >= 1 && H >= 1, "star: s and H must be positive");
    u128 count = 1;
    for (int i = 0; i <= s; ++i) {
        count *= u128(H);
        require(count <= u128(1) << 22, "star: leaf count H^(s+1) exceeds the memory budget");
    }
    const int n_leaves = int(u64(count));
    HatGame game = star_game(n_leaves, s + 1, H, s);
    json prov{{"kind", "star_scrapheap"}, {"s", s}, {"H", H}};
    return std::make_shared<StarScrapheapImpl>(std::move(game), std::move(prov), s, H, n_leaves);
}

StrategyPtr star_from_phf(const PhfArray& phf) {
    require(phf.symbols == phf.t, "star: need a PHF with v = t = s+1");
    require(phf.symbols >= 2, "star: need at least two symbols");
    auto check = verify_phf(phf);
    if (!check.ok) {
        std::string cols;
        for (int c : check.witness_columns) cols += " " + std::to_string(c);
        throw error("star: array is not a PHF, witness columns:" + cols);
    }
    const int s = phf.symbols - 1;
    HatGame game = star_game(phf.row_count(), s + 1, phf.columns, s);
    json prov{{"kind", "star_phf"},
              {"phf", {{"v", phf.symbols}, {"t", phf.t}, {"columns", phf.columns}, {"array", phf.rows}}}};
    return std::make_shared<StarPhfImpl>(std::move(game), std::move(prov), phf);
}

StrategyPtr build_petal(int s, StarBackend backend, const std::optional<PhfArray>& phf) {
    require(s >= 1, "petal: s must be positive");
    const int H = 4 * s * (s + 1) - 2;
    const int inner_s = s * (s + 1);

    StrategyPtr star;
    json star_name;
    if (backend == StarBackend::scrapheap) {
        star = star_scrapheap(s, H);
        star_name = "scrapheap";
    } else {
        PhfArray array;
        if (phf) {
            array = *phf;
            require(array.symbols == s + 1 && array.t == s + 1,
                    "petal: PHF must have v = t = s+1");
            require(array.columns >= H,
                    "petal: PHF needs at least " + std::to_string(H) + " columns");
            if (array.columns > H) {
                for (auto& row : array.rows) row.resize(H);
                array.columns = H;
            }
        } else if (s == 1) {
            array = binary_separating(H);
        } else {
            throw error("petal: supply a PHF(v=t=" + std::to_string(s + 1) + ", k=" +
                        std::to_string(H) + ") array for s >= 2");
        }
        star = star_from_phf(array);
        star_name = "phf";
    }

    StrategyPtr inner = build_path(inner_s);
    const int n_path = inner->game().n();
    std::vector<Vertex> everyone(n_path);
    for (Vertex v = 0; v < n_path; ++v) everyone[v] = v;
    Arbitrator arb = Arbitrator::out_closed(everyone, everyone);

    const int n_leaves = star->game().n() - 1;
    std::vector<Vertex> star_to_cur(star->game().n());
    for (Vertex v = 0; v < star->game().n(); ++v) star_to_cur[v] = v;

    json prov{{"kind", "petal"}, {"s", s}, {"star", star_name}};
    if (backend == StarBackend::phf && phf)
        prov["phf"] = {{"v", phf->symbols}, {"t", phf->t}, {"columns", phf->columns}, {"array", phf->rows}};

    StrategyPtr cur = std::move(star);
    for (int leaf = 0; leaf < n_leaves; ++leaf) {
        Vertex z = star_to_cur[leaf];
        const bool last = leaf + 1 == n_leaves;
        cur = make_reduced_join(inner, arb, std::move(cur), z,
                                std::vector<int>(n_path, s + 1),
                                last ? prov : json{{"kind", "reduced_join_step"}});
        for (Vertex v = 0; v < int(star_to_cur.size()); ++v) {
            Vertex o = star_to_cur[v];
            if (o == z) star_to_cur[v] = -1;
            else if (o >= 0) star_to_cur[v] = n_path + (o < z ? o : o - 1);
        }
    }

    const HatGame& result = cur->game();
    require(result.n() == n_path * n_leaves + 1, "petal: vertex count mismatch");
    for (Vertex v = 0; v < result.n(); ++v)
        require(result.hatness[v] == H && result.guesses[v] == s,
                "petal: target hatness/guess mismatch at vertex " + std::to_string(v));
    return cur;
}

StrategyPtr build_planar22(int k, const PhfArray& phf) {
    require(k >= 5, "planar22: need k >= 5 so the apex hatness 2^k stays at least 22");
    require(k <= 20, "planar22: apex hatness 2^k too large");
    StrategyPtr petal = build_petal(2, StarBackend::phf, phf);
    const int n_petal = petal->game().n();

    std::vector<Vertex> everyone(n_petal);
    for (Vertex v = 0; v < n_petal; ++v) everyone[v] = v;
    Arbitrator arb = Arbitrator::out_closed(everyone, everyone);
    StrategyPtr edge = clique_strategy({2, 2}, {1, 1});
    StrategyPtr copy = make_reduced_join(petal, arb, edge, /*z=*/1,
                                         std::vector<int>(n_petal, 2),
                                         json{{"kind", "petal_plus_apex"}});
    const Vertex apex = n_petal; // the surviving edge endpoint

    json prov{{"kind", "planar22"},
              {"k", k},
              {"phf", {{"v", phf.symbols}, {"t", phf.t}, {"columns", phf.columns}, {"array", phf.rows}}}};

    StrategyPtr cur = copy;
    for (int i = 2; i <= k; ++i) {
        const bool last = i == k;
        cur = make_product(std::move(cur), copy, apex, apex,
                           last ? prov : json{{"kind", "product_step"}});
    }

    const HatGame& result = cur->game();
    require(result.n() == n_petal * k + 1, "planar22: vertex count mismatch");
    for (Vertex v = 0; v < result.n(); ++v) {
        if (v == apex) {
            require(result.hatness[v] == (1 << k), "planar22: apex hatness mismatch");
        } else {
            require(result.hatness[v] == 22 && result.guesses[v] == 1,
                    "planar22: body hatness/guess mismatch");
        }
        if (v != apex)
            require(result.graph.has_arc(apex, v) && result.graph.has_arc(v, apex),
                    "planar22: apex must be adjacent to every petal vertex");
    }
    return cur;
}

} // namespace hats
