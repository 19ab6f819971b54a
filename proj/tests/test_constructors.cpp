#include <doctest.h>

#include <fstream>

#include "hats/constructors.hpp"
#include "hats/io.hpp"
#include "hats/verifier.hpp"

using namespace hats;

namespace {

PhfArray load_phf_9_27() {
    return phf_from_json(load_json_file(std::string(HATS_TEST_DATA_DIR) + "/phf_9_27_3_3.json"));
}

bool winning(const Strategy& s, u64 budget = 20000000000ULL) {
    VerifyOptions opts;
    opts.budget = budget;
    return verify_exhaustive(s, opts).outcome == Outcome::winning_verified;
}

} // namespace

TEST_CASE("clique strategy: K_2 with two colors wins over 4 placements") {
    auto strategy = clique_strategy({2, 2}, {1, 1});
    auto verdict = verify_exhaustive(*strategy);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 4);
}

TEST_CASE("clique strategy: a single sage guessing everything always wins") {
    auto strategy = clique_strategy({4}, {4});
    CHECK(strategy->eval_copy(0, HatPlacement{{2}}) == GuessSet{0, 1, 2, 3});
    CHECK(winning(*strategy));
}

TEST_CASE("clique strategy refuses a deficit and the solver concurs") {
    CHECK_THROWS_WITH_AS(clique_strategy({2, 3}, {1, 1}),
                         "clique: sum of g/h is 5/6 < 1, the game is losing", error);
    VisibilityGraph g(2);
    g.add_edge(0, 1);
    auto solved = brute_force_decide(make_game(std::move(g), {2, 3}, {1, 1}));
    CHECK(solved.status == SolveStatus::losing);
}

TEST_CASE("clique strategy: exact-cover games use every guess slot") {
    // when the criterion sum is exactly 1 the intervals tile [0,1), so each
    // vertex names exactly g(v) colors at every placement
    for (auto [h, g] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
             {{2, 2}, {1, 1}}, {{3, 3, 3}, {1, 1, 1}}, {{2, 4}, {1, 2}}, {{6, 3, 6}, {2, 1, 2}}}) {
        auto strategy = clique_strategy(h, g);
        PlacementSpace space(h);
        std::vector<int> colors(h.size(), 0);
        do {
            SpanView view(colors);
            GuessSet out;
            for (Vertex v = 0; v < int(h.size()); ++v) {
                strategy->eval(v, view, -1, out);
                CHECK(int(out.size()) == g[v]);
            }
        } while (space.next(colors));
        CHECK(winning(*strategy));
    }
}

TEST_CASE("clique strategy stays within budget when the sum overflows 1") {
    auto strategy = clique_strategy({2, 2, 2}, {1, 1, 1}); // sum 3/2
    CHECK(winning(*strategy));
    // budget enforcement is built into eval; also sanity-check the histogram
    auto eval = evaluate_all(*strategy, HatPlacement{{1, 0, 1}});
    for (Vertex v = 0; v < 3; ++v) CHECK(int(eval.guesses[v].size()) <= 1);
}

TEST_CASE("product of two edge games at a shared vertex is a winning P_3") {
    auto edge1 = clique_strategy({2, 2}, {1, 1});
    auto edge2 = clique_strategy({2, 2}, {1, 1});
    auto product = product_at_vertex(edge1, edge2, 1, 0);
    const HatGame& game = product->game();
    CHECK(game.hatness == std::vector<int>{2, 4, 2});
    CHECK(game.guesses == std::vector<int>{1, 1, 1});
    CHECK(game.graph.has_arc(0, 1));
    CHECK(game.graph.has_arc(1, 2));
    CHECK(!game.graph.has_arc(0, 2));
    auto verdict = verify_exhaustive(*product);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 16);
}

TEST_CASE("product with a one-color single vertex changes nothing but the codec") {
    auto edge = clique_strategy({2, 2}, {1, 1});
    auto unit = clique_strategy({1}, {1});
    auto product = product_at_vertex(edge, unit, 1, 0);
    CHECK(product->game().hatness == std::vector<int>{2, 2});
    CHECK(product->game().guesses == std::vector<int>{1, 1});
    for (int c0 = 0; c0 < 2; ++c0)
        for (int c1 = 0; c1 < 2; ++c1) {
            HatPlacement p{{c0, c1}};
            CHECK(product->eval_copy(0, p) == edge->eval_copy(0, p));
            CHECK(product->eval_copy(1, p) == edge->eval_copy(1, p));
        }
    CHECK(winning(*product));
}

TEST_CASE("product rejects out-of-range shared vertices") {
    auto edge = clique_strategy({2, 2}, {1, 1});
    CHECK_THROWS_AS(product_at_vertex(edge, edge, 5, 0), error);
    CHECK_THROWS_AS(product_at_vertex(edge, edge, 0, -1), error);
}

TEST_CASE("substitution with reducing: P_4 into one end of the edge game") {
    // inner P_4 with hatness 6 and two guesses; divisor 2 against h'(z) = 2
    auto inner = build_path(2);
    auto edge = clique_strategy({2, 2}, {1, 1});
    Arbitrator arb = Arbitrator::out_closed({0, 1, 2, 3}, {0, 1, 2, 3});
    auto joined = reduced_join(inner, arb, edge, 1, 2);

    const HatGame& game = joined->game();
    REQUIRE(game.n() == 5);
    CHECK(game.hatness == std::vector<int>{6, 6, 6, 6, 2});
    CHECK(game.guesses == std::vector<int>{1, 1, 1, 1, 1});
    for (Vertex v = 0; v < 4; ++v) {
        CHECK(game.graph.has_arc(4, v));
        CHECK(game.graph.has_arc(v, 4));
    }
    auto verdict = verify_exhaustive(*joined);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 6 * 6 * 6 * 6 * 2); // 2592
    CHECK(mask_check(*joined, 1000, 21).ok);
}

TEST_CASE("out-closed arbitration matches a hand-rolled oracle on every placement") {
    // inner P_4 substituted into the edge game: the apex must behave exactly
    // as if it replayed the inner strategy on first coordinates, picked the
    // lowest-index correct sage, reshaped that sage's padded guesses and
    // played the edge strategy against the recovered hidden color
    auto inner = build_path(2);
    auto edge = clique_strategy({2, 2}, {1, 1});
    Arbitrator arb = Arbitrator::out_closed({0, 1, 2, 3}, {0, 1, 2, 3});
    auto joined = reduced_join(inner, arb, edge, 1, 2);
    const Vertex apex = 4;
    const int b_v = 1; // h'(z) = 2 = s_v * b_v with s_v = 2

    PlacementSpace space(joined->game().hatness);
    std::vector<int> colors(5, 0);
    GuessSet tmp;
    do {
        SpanView view(colors);
        // stage 1 on first coordinates (b_v = 1 keeps colors as they are)
        HatPlacement first{{colors[0], colors[1], colors[2], colors[3]}};
        int winner = 0;
        GuessSet winner_guesses;
        bool someone = false;
        for (Vertex u = 0; u < 4; ++u) {
            tmp = inner->eval_copy(u, first);
            if (std::binary_search(tmp.begin(), tmp.end(), first.colors[u])) {
                winner = u;
                winner_guesses = tmp;
                someone = true;
                break;
            }
        }
        if (!someone) winner_guesses = inner->eval_copy(0, first);
        GuessSet padded = pad_guesses(winner_guesses, 2, 6);
        auto it = std::lower_bound(padded.begin(), padded.end(), colors[winner]);
        int rank = (it != padded.end() && *it == colors[winner]) ? int(it - padded.begin()) : 0;
        int proxy = (rank % 2) * b_v + colors[winner] % b_v;

        HatPlacement edge_view{{0, proxy}};
        GuessSet expected = edge->eval_copy(0, edge_view);
        GuessSet actual;
        joined->eval(apex, view, -1, actual);
        REQUIRE(actual == expected);
        // and when anyone in S is stage-1 correct, the arbitrated sage is too
        if (someone)
            CHECK(std::binary_search(padded.begin(), padded.end(), colors[winner]));
    } while (space.next(colors));
}

TEST_CASE("reduced join with a proper reduced subset mixes both vertex kinds") {
    // inner K_2 at (2/4, 2/4); only vertex 0 reduces against h'(z) = 2
    auto inner = clique_strategy({4, 4}, {2, 2});
    auto edge = clique_strategy({2, 2}, {1, 1});
    Arbitrator arb = Arbitrator::out_closed({0, 1}, {0});
    auto joined = reduced_join(inner, arb, edge, 0, std::vector<int>{2});

    const HatGame& game = joined->game();
    REQUIRE(game.n() == 3);
    CHECK(game.hatness == std::vector<int>{4, 8, 2}); // reduced, full product, spectator
    CHECK(game.guesses == std::vector<int>{1, 2, 1});
    auto verdict = verify_exhaustive(*joined);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 4 * 8 * 2);
    CHECK(mask_check(*joined, 1000, 8).ok);
}

TEST_CASE("reduced join into a directed outer game") {
    // outer: the edge game with the arc 0->1 removed, so only vertex 1 sees
    // vertex 0; substitute an inner K_2 in place of the blinded vertex 0
    auto outer = remove_half_edge(clique_strategy({2, 2}, {1, 1}), 0, 1);
    REQUIRE(outer->game().guesses == std::vector<int>{2, 1});
    auto inner = clique_strategy({2, 2}, {1, 1});
    Arbitrator arb = Arbitrator::out_closed({0, 1}, {0, 1});
    auto joined = reduced_join(inner, arb, outer, 0, 1); // divisor 1: plain product shape

    const HatGame& game = joined->game();
    REQUIRE(game.n() == 3);
    CHECK(game.hatness == std::vector<int>{4, 4, 2});
    CHECK(game.guesses == std::vector<int>{2, 2, 1});
    // the join only adds arcs toward the inner pair: nobody there sees out
    CHECK(game.graph.has_arc(2, 0));
    CHECK(game.graph.has_arc(2, 1));
    CHECK(!game.graph.has_arc(0, 2));
    CHECK(!game.graph.has_arc(1, 2));
    auto verdict = verify_exhaustive(*joined);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 32);
    CHECK(mask_check(*joined, 1000, 15).ok);
}

TEST_CASE("reduced join validates divisors and arbitrators") {
    auto inner = build_path(2);
    auto edge = clique_strategy({2, 2}, {1, 1});
    Arbitrator arb = Arbitrator::out_closed({0, 1, 2, 3}, {0, 1, 2, 3});
    CHECK_THROWS_AS(reduced_join(inner, arb, edge, 1, 4), error); // 4 does not divide g=2

    Arbitrator not_closed = Arbitrator::out_closed({0, 1}, {});
    CHECK_THROWS_AS(reduced_join(inner, not_closed, edge, 1, std::vector<int>{}), error);

    Arbitrator bad_singleton = Arbitrator::singleton(0);
    bad_singleton.reduced = {0};
    CHECK_THROWS_AS(reduced_join(inner, bad_singleton, edge, 1, std::vector<int>{2}), error);
}

TEST_CASE("half-edge removal: the blinded sage unions its guesses and still wins") {
    auto edge = clique_strategy({2, 2}, {1, 1});
    auto removed = remove_half_edge(edge, 0, 1);
    const HatGame& game = removed->game();
    CHECK(!game.graph.has_arc(0, 1));
    CHECK(game.graph.has_arc(1, 0));
    CHECK(game.guesses == std::vector<int>{2, 1}); // min(1*2, 2)
    CHECK(winning(*removed));

    auto bare = remove_half_edge(removed, 1, 0);
    CHECK(bare->game().graph.arc_count() == 0);
    CHECK(bare->game().guesses == std::vector<int>{2, 2});
    CHECK(winning(*bare)); // both sages now guess every color

    CHECK_THROWS_AS(remove_half_edge(bare, 0, 1), error); // arc absent
}

TEST_CASE("strong vertex round trip on K_2 preserves the winning verdict") {
    auto edge = clique_strategy({2, 2}, {1, 1});
    auto removed = strong_vertex_remove(edge, 0);
    CHECK(removed->game().n() == 1);
    CHECK(removed->game().hatness == std::vector<int>{2});
    CHECK(removed->game().guesses == std::vector<int>{2});
    CHECK(winning(*removed));

    auto attached = strong_vertex_attach(removed, 1);
    CHECK(attached->game().n() == 2);
    CHECK(attached->game().hatness == std::vector<int>{2, 2});
    CHECK(attached->game().guesses == std::vector<int>{1, 1});
    CHECK(attached->game().graph.has_arc(0, 1));
    CHECK(winning(*attached));
}

TEST_CASE("strong vertex removal of a star center doubles the leaf guesses") {
    auto star = star_scrapheap(1, 2); // 4 leaves (h 2, g 1), center (h 2, g 1)
    Vertex center = star->game().n() - 1;
    auto removed = strong_vertex_remove(star, center);
    CHECK(removed->game().n() == 4);
    for (Vertex v = 0; v < 4; ++v) {
        CHECK(removed->game().hatness[v] == 2);
        CHECK(removed->game().guesses[v] == 2);
    }
    CHECK(winning(*removed));

    auto not_strong = clique_strategy({3, 3, 3}, {1, 1, 1});
    CHECK_THROWS_AS(strong_vertex_remove(not_strong, 0), error); // h != g+1
}

TEST_CASE("l-table: the 14x14 example with windows of 6 and 5") {
    LTable table = build_l_table(14, 14, 6, 5, 4);
    CHECK(table.max_window_empties() <= 4);
    // row rule: letters exactly at columns i*w_B .. i*w_B + w_B - 1 (mod h_B)
    for (int row = 0; row < 14; ++row) {
        int letters = 0;
        for (int col = 0; col < 14; ++col) letters += table.has_letter(row, col);
        CHECK(letters == 5);
        CHECK(table.has_letter(row, (row * 5) % 14));
        CHECK(!table.has_letter(row, (row * 5 + 5) % 14));
    }
}

TEST_CASE("l-table: full-width rows leave no empty cells") {
    LTable table = build_l_table(5, 4, 3, 4, 0);
    CHECK(table.max_window_empties() == 0);
}

TEST_CASE("l-table refusals name the failing condition") {
    CHECK_THROWS_WITH_AS(build_l_table(6, 6, 3, 2, 1),
                         "l-table: condition (iii) fails, w_A*w_B=6 < (w_A-g_A)*h(B)=12", error);
    CHECK_THROWS_AS(build_l_table(5, 6, 3, 4, 2), error); // (ii): 6 does not divide 20
}

TEST_CASE("l-table window bound sweep at small parameters") {
    for (int h_a = 1; h_a <= 12; ++h_a)
        for (int h_b = 1; h_b <= 12; ++h_b)
            for (int w_a = 1; w_a <= h_a; ++w_a)
                for (int w_b = 1; w_b <= h_b; ++w_b) {
                    if ((w_b * h_a) % h_b != 0) continue;
                    int slack = (w_a * w_b) / h_b; // (iii) holds iff g_a >= w_a - slack
                    int g_min = std::max(0, w_a - slack);
                    LTable table = build_l_table(h_a, h_b, w_a, w_b, g_min);
                    CHECK(table.max_window_empties() <= g_min);
                }
}

TEST_CASE("hinted ladder base: the sage names exactly the hinted window") {
    auto base = hint_window_base(6, 2);
    HatPlacement p{{3}};
    CHECK(base->eval_copy(0, p, 2) == GuessSet{2, 3});
    CHECK(base->eval_copy(0, p, 5) == GuessSet{0, 5}); // wraps and stays sorted
    CHECK(verify_hint_game(*base).outcome == Outcome::winning_verified);
}

TEST_CASE("hinted ladder: every intermediate game of the s=3 chain wins") {
    for (int k = 1; k <= 3; ++k) {
        auto chain = build_path_hint_chain(3, k);
        const HatGame& game = chain->game();
        CHECK(game.n() == k);
        CHECK(game.hint->width == 3 + k - 1);
        auto verdict = verify_hint_game(*chain);
        CHECK(verdict.outcome == Outcome::winning_verified);
    }
}

TEST_CASE("a full-width hint drops into a hint-free winning game") {
    auto chain = build_path_hint_chain(2, 2);
    auto dropped = drop_full_hint(chain);
    CHECK(!dropped->game().hint.has_value());
    CHECK(winning(*dropped));

    CHECK_THROWS_AS(drop_full_hint(build_path_hint_chain(3, 2)), error); // width 4 < h 10
}

TEST_CASE("build_path: P_2 for one guess, P_4 for two") {
    auto p2 = build_path(1);
    CHECK(p2->game().n() == 2);
    CHECK(p2->game().hatness == std::vector<int>{2, 2});
    CHECK(winning(*p2));

    auto p4 = build_path(2);
    CHECK(p4->game().n() == 4);
    CHECK(p4->game().hatness == std::vector<int>{6, 6, 6, 6});
    CHECK(p4->game().guesses == std::vector<int>{2, 2, 2, 2});
    // the graph is the path 0-1-2-3
    CHECK(p4->game().graph.arc_count() == 6);
    CHECK(p4->game().graph.has_arc(0, 1));
    CHECK(p4->game().graph.has_arc(1, 2));
    CHECK(p4->game().graph.has_arc(2, 3));
    CHECK(winning(*p4));
}

TEST_CASE("the hinted ladder constructs for larger guess counts too") {
    // the table side conditions hold along the whole ladder; construction
    // itself re-verifies every window bound exhaustively
    for (int s = 1; s <= 12; ++s) {
        auto chain = build_path_hint_chain(s, s);
        const HatGame& game = chain->game();
        CHECK(game.n() == s);
        CHECK(game.hatness[s - 1] == 2 * s - 1);
        for (Vertex v = 0; v + 1 < s; ++v) CHECK(game.hatness[v] == 4 * s - 2);
        CHECK(game.hint->width == 2 * s - 1); // full window at the end
        CHECK_NOTHROW(drop_full_hint(chain));
    }
}

TEST_CASE("sages with zero guesses are carried through") {
    auto strategy = clique_strategy({2, 2}, {0, 2});
    PlacementSpace space({2, 2});
    std::vector<int> colors{0, 0};
    do {
        SpanView view(colors);
        GuessSet out;
        strategy->eval(0, view, -1, out);
        CHECK(out.empty());
        strategy->eval(1, view, -1, out);
        CHECK(int(out.size()) == 2);
    } while (space.next(colors));
    CHECK(winning(*strategy));

    VisibilityGraph g(2);
    g.add_edge(0, 1);
    HatGame game = make_game(std::move(g), {2, 2}, {0, 2});
    CHECK(brute_force_decide(game).status == SolveStatus::winning);
    game.guesses = {0, 1};
    CHECK(brute_force_decide(game).status == SolveStatus::losing);
}

TEST_CASE("build_path: P_6 with hatness 10 and three guesses") {
    auto p6 = build_path(3);
    CHECK(p6->game().n() == 6);
    for (Vertex v = 0; v < 6; ++v) {
        CHECK(p6->game().hatness[v] == 10);
        CHECK(p6->game().guesses[v] == 3);
    }
    auto verdict = verify_exhaustive(*p6);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 1000000);
}

TEST_CASE("scrap-heap star: 16 leaves for one guess over four center colors") {
    auto star = star_scrapheap(1, 4);
    const HatGame& game = star->game();
    REQUIRE(game.n() == 17);
    for (Vertex leaf = 0; leaf < 16; ++leaf) {
        CHECK(game.hatness[leaf] == 2);
        CHECK(game.guesses[leaf] == 1);
    }
    CHECK(game.hatness[16] == 4);
    CHECK(game.guesses[16] == 1);
    auto verdict = verify_exhaustive(*star);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 262144);
}

TEST_CASE("scrap-heap star: a single center color is trivially caught") {
    auto star = star_scrapheap(1, 1);
    CHECK(star->game().n() == 2);
    CHECK(winning(*star));
}

TEST_CASE("scrap-heap star: 36 leaves for six center colors, sampled only") {
    auto star = star_scrapheap(1, 6);
    CHECK(star->game().n() == 37);
    auto verdict = verify_sampled(*star, 100000, 424242);
    CHECK(verdict.outcome == Outcome::sampled_clean);
    CHECK(mask_check(*star, 500, 17).ok);
}

TEST_CASE("PHF star: the binary separating family gives three leaves for six colors") {
    auto star = star_from_phf(binary_separating(6));
    const HatGame& game = star->game();
    REQUIRE(game.n() == 4);
    CHECK(game.hatness == std::vector<int>{2, 2, 2, 6});
    CHECK(game.guesses == std::vector<int>{1, 1, 1, 1});
    auto verdict = verify_exhaustive(*star);
    CHECK(verdict.outcome == Outcome::winning_verified);
    CHECK(verdict.placements_checked == 48);
}

TEST_CASE("PHF star refuses an array that is not a perfect hash family") {
    PhfArray bad;
    bad.symbols = 2;
    bad.t = 2;
    bad.columns = 3;
    bad.rows = {{0, 1, 0}};
    CHECK_THROWS_WITH_AS(star_from_phf(bad), "star: array is not a PHF, witness columns: 0 2",
                         error);
}

TEST_CASE("petal for one guess: 13 vertices of hatness 6") {
    auto petal = build_petal(1);
    const HatGame& game = petal->game();
    REQUIRE(game.n() == 13);
    for (Vertex v = 0; v < game.n(); ++v) {
        CHECK(game.hatness[v] == 6);
        CHECK(game.guesses[v] == 1);
    }
    // star of three 4-paths: one vertex adjacent to the twelve others
    int centers = 0;
    for (Vertex v = 0; v < game.n(); ++v)
        if (int(game.graph.out_neighbors(v).size()) == 12) ++centers;
    CHECK(centers == 1);
    CHECK(mask_check(*petal, 1000, 3).ok);
    CHECK(verify_sampled(*petal, 200000, 2024).outcome == Outcome::sampled_clean);
}

TEST_CASE("petal with the scrap-heap backend: same hatness, larger graph") {
    auto petal = build_petal(1, StarBackend::scrapheap);
    CHECK(petal->game().n() == 4 * 36 + 1);
    for (Vertex v = 0; v < petal->game().n(); ++v) {
        CHECK(petal->game().hatness[v] == 6);
        CHECK(petal->game().guesses[v] == 1);
    }
}

TEST_CASE("petal for two guesses: 109 vertices of hatness 22") {
    auto petal = build_petal(2, StarBackend::phf, load_phf_9_27());
    const HatGame& game = petal->game();
    REQUIRE(game.n() == 109);
    for (Vertex v = 0; v < game.n(); ++v) {
        CHECK(game.hatness[v] == 22);
        CHECK(game.guesses[v] == 2);
    }
    CHECK(verify_sampled(*petal, 50000, 5).outcome == Outcome::sampled_clean);
}

TEST_CASE("petal for two guesses needs a PHF") {
    CHECK_THROWS_AS(build_petal(2), error);
}

TEST_CASE("petal joined into one end of the edge game: hatness 22 plus a 1/2 apex") {
    auto petal = build_petal(2, StarBackend::phf, load_phf_9_27());
    auto edge = clique_strategy({2, 2}, {1, 1});
    std::vector<Vertex> everyone(petal->game().n());
    for (Vertex v = 0; v < petal->game().n(); ++v) everyone[v] = v;
    Arbitrator arb = Arbitrator::out_closed(everyone, everyone);
    auto copy = reduced_join(petal, arb, edge, 1, 2);

    const HatGame& game = copy->game();
    REQUIRE(game.n() == 110);
    const Vertex apex = 109;
    CHECK(game.hatness[apex] == 2);
    CHECK(game.guesses[apex] == 1);
    for (Vertex v = 0; v < apex; ++v) {
        CHECK(game.hatness[v] == 22);
        CHECK(game.guesses[v] == 1);
        CHECK(game.graph.has_arc(apex, v));
        CHECK(game.graph.has_arc(v, apex));
    }
    CHECK(verify_sampled(*copy, 50000, 4096).outcome == Outcome::sampled_clean);
}

TEST_CASE("planar-22: 546 vertices, hatness 22 everywhere but the apex") {
    auto planar = build_planar22(5, load_phf_9_27());
    const HatGame& game = planar->game();
    REQUIRE(game.n() == 546);
    Vertex apex = -1;
    for (Vertex v = 0; v < game.n(); ++v)
        if (game.hatness[v] == 32) {
            CHECK(apex == -1);
            apex = v;
        }
    REQUIRE(apex >= 0);
    for (Vertex v = 0; v < game.n(); ++v) {
        if (v == apex) continue;
        CHECK(game.hatness[v] == 22);
        CHECK(game.guesses[v] == 1);
        CHECK(game.graph.has_arc(apex, v));
        CHECK(game.graph.has_arc(v, apex));
    }
    CHECK(verify_sampled(*planar, 20000, 77).outcome == Outcome::sampled_clean);
}

TEST_CASE("planar-22 refuses fewer than five copies") {
    CHECK_THROWS_AS(build_planar22(4, load_phf_9_27()), error);
}
