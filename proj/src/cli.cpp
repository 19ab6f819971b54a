#include "hats/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "hats/io.hpp"

namespace hats {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "hats 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitDisproved = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitInputError = 3;

struct Report {
    json j;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    explicit Report(const std::string& command) {
        j["command"] = command;
        j["tool_version"] = kVersion;
        j["inputs"] = json::array();
    }
    void input(const std::string& path) {
        j["inputs"].push_back({{"path", path}, {"digest", file_digest(path)}});
    }
    void finish() {
        j["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

struct CommonFlags {
    int threads = 0;
    u64 budget = 0;
    u64 seed = 1;
    std::string format = "text";
    std::string report_path;
};

void emit(Report& report, const CommonFlags& flags, const std::string& text_summary) {
    report.finish();
    if (!flags.report_path.empty()) save_json_file(flags.report_path, report.j);
    if (flags.format == "json")
        std::cout << report.j.dump(2) << "\n";
    else
        std::cout << text_summary << "\n";
}

std::string hatness_histogram(const HatGame& game) {
    std::map<int, int> histogram;
    for (int h : game.hatness) histogram[h]++;
    std::string text;
    for (auto [h, count] : histogram) {
        if (!text.empty()) text += ", ";
        text += std::to_string(count) + " vertices of hatness " + std::to_string(h);
    }
    return text;
}

int verdict_exit(const Verdict& verdict) {
    switch (verdict.outcome) {
        case Outcome::winning_verified:
        case Outcome::sampled_clean: return kExitOk;
        case Outcome::disproved: return kExitDisproved;
        case Outcome::undecided: return kExitUndecided;
    }
    return kExitInputError;
}

int cmd_build(const std::string& recipe_path, const std::string& out_game,
              const std::string& out_strategy, const CommonFlags& flags) {
    Report report("build");
    report.input(recipe_path);
    json recipe = load_json_file(recipe_path);
    std::string base_dir = std::filesystem::path(recipe_path).parent_path().string();
    if (base_dir.empty()) base_dir = ".";
    StrategyPtr strategy = strategy_from_json(recipe, base_dir);

    if (!out_game.empty()) save_json_file(out_game, game_to_json(strategy->game()));
    if (!out_strategy.empty()) save_json_file(out_strategy, strategy_to_json(*strategy));

    report.j["result"] = {{"vertices", strategy->game().n()},
                          {"arcs", strategy->game().graph.arc_count()},
                          {"hatness_histogram", hatness_histogram(strategy->game())}};
    if (!out_game.empty()) report.j["result"]["game_file"] = out_game;
    if (!out_strategy.empty()) report.j["result"]["strategy_file"] = out_strategy;

    emit(report, flags,
         "built " + std::to_string(strategy->game().n()) + " vertices, " +
             std::to_string(strategy->game().graph.arc_count()) + " arcs; " +
             hatness_histogram(strategy->game()));
    return kExitOk;
}

int cmd_verify(const std::string& game_path, const std::string& strategy_path,
               const std::string& mode, u64 samples, const CommonFlags& flags) {
    Report report("verify");
    report.input(game_path);
    report.input(strategy_path);
    HatGame game = game_from_json(load_json_file(game_path));
    std::string base_dir = std::filesystem::path(strategy_path).parent_path().string();
    if (base_dir.empty()) base_dir = ".";
    StrategyPtr strategy = strategy_from_json(load_json_file(strategy_path), base_dir);
    if (strategy->game() != game)
        throw error("verify: the strategy was built for a different game than " + game_path);

    report.j["params"] = {{"mode", mode},
                          {"threads", flags.threads},
                          {"budget", flags.budget},
                          {"seed", flags.seed},
                          {"samples", samples}};

    Verdict verdict;
    if (mode == "sampled") {
        verdict = verify_sampled(*strategy, samples, flags.seed, flags.threads);
    } else if (mode == "exhaustive") {
        VerifyOptions opts;
        opts.threads = flags.threads;
        if (flags.budget > 0) opts.budget = flags.budget;
        verdict = game.hint ? verify_hint_game(*strategy, opts)
                            : verify_exhaustive(*strategy, opts);
    } else {
        throw error("verify: mode must be 'exhaustive' or 'sampled'");
    }
    report.j["result"] = verdict_to_json(verdict);

    std::string summary = outcome_name(verdict.outcome) + " after " +
                          std::to_string(verdict.placements_checked) + " placements";
    if (verdict.witness) {
        summary += "; witness " + placement_to_json(*verdict.witness).dump();
        if (verdict.witness_hint_start >= 0)
            summary += " window start " + std::to_string(verdict.witness_hint_start);
    }
    if (!verdict.note.empty()) summary += "; " + verdict.note;
    emit(report, flags, summary);
    return verdict_exit(verdict);
}

int cmd_solve(const std::string& game_path, const std::string& out_strategy,
              const CommonFlags& flags) {
    Report report("solve");
    report.input(game_path);
    HatGame game = game_from_json(load_json_file(game_path));
    SolveOptions opts;
    if (flags.budget > 0) opts.budget = flags.budget;
    report.j["params"] = {{"budget", opts.budget}};

    SolveResult result = brute_force_decide(game, opts);
    report.j["result"] = solve_result_to_json(result);
    if (result.strategy && !out_strategy.empty()) {
        save_json_file(out_strategy, strategy_to_json(*result.strategy));
        report.j["result"]["strategy_file"] = out_strategy;
    }

    std::string summary;
    switch (result.status) {
        case SolveStatus::winning: summary = "winning"; break;
        case SolveStatus::losing: summary = "losing"; break;
        case SolveStatus::undecided: summary = "undecided: " + result.note; break;
    }
    summary += " (strategy space " + result.space + ", " +
               std::to_string(result.nodes_explored) + " nodes)";
    emit(report, flags, summary);
    switch (result.status) {
        case SolveStatus::winning: return kExitOk;
        case SolveStatus::losing: return kExitDisproved;
        default: return kExitUndecided;
    }
}

std::vector<PetuniaPetal> petunia_from_json(const json& j) {
    std::vector<PetuniaPetal> petals;
    for (const auto& p : j.at("petals")) {
        PetuniaPetal petal;
        petal.n = p.at("n").get<int>();
        petal.glue_vertex = p.value("glue_vertex", -1);
        petal.to_petal = p.value("to_petal", -1);
        petal.to_vertex = p.value("to_vertex", -1);
        petals.push_back(petal);
    }
    return petals;
}

int cmd_certify(const std::string& cert_path, const std::string& builder, int s_param,
                int n_param, int edges, const std::string& petunia_path,
                const std::string& out_path, const CommonFlags& flags) {
    Report report("certify");
    LosingCertificate cert;
    if (!cert_path.empty()) {
        report.input(cert_path);
        cert = certificate_from_json(load_json_file(cert_path));
    } else if (builder == "path-losing") {
        cert = build_uniform_path_losing_cert(s_param, n_param);
    } else if (builder == "petal-losing") {
        cert = build_petal_losing_cert(s_param, n_param);
    } else if (builder == "royal-petunia") {
        report.input(petunia_path);
        cert = build_royal_petunia_cert(s_param, petunia_from_json(load_json_file(petunia_path)));
    } else if (builder == "alon") {
        cert = build_alon_cert(edges);
    } else {
        throw error("certify: pass --cert FILE or --builder "
                    "{path-losing|petal-losing|royal-petunia|alon}");
    }
    if (!out_path.empty()) save_json_file(out_path, certificate_to_json(cert));

    CertCheckOptions opts;
    if (flags.budget > 0) opts.brute_budget = flags.budget;
    CertCheckResult result = check_certificate(cert, opts);
    report.j["params"] = {{"builder", builder}, {"budget", opts.brute_budget}};
    report.j["result"] = {{"valid", result.valid},
                          {"violation_path", result.violation_path},
                          {"message", result.message},
                          {"trusted_brute_force", result.trusted_brute_force},
                          {"certified_vertices", cert.game.n()}};

    std::string summary = result.valid
                              ? "certificate valid (" + std::to_string(cert.game.n()) + " vertices)"
                              : "certificate INVALID at " + result.violation_path + ": " +
                                    result.message;
    if (result.trusted_brute_force) summary += " [brute-forced leaf trusted, over budget]";
    emit(report, flags, summary);
    return result.valid ? kExitOk : kExitDisproved;
}

int cmd_phf_verify(const std::string& phf_path, const CommonFlags& flags) {
    Report report("phf-verify");
    report.input(phf_path);
    PhfArray array = phf_from_json(load_json_file(phf_path));
    PhfCheck check = verify_phf(array, flags.threads > 0 ? flags.threads : 1);
    report.j["result"] = {{"valid", check.ok}, {"witness_columns", check.witness_columns}};
    std::string summary = check.ok ? "phf valid" : "phf INVALID, witness columns " +
                                                       json(check.witness_columns).dump();
    emit(report, flags, summary);
    return check.ok ? kExitOk : kExitDisproved;
}

int cmd_phf_search(int rows, int cols, int symbols, int subset, const std::string& out_path,
                   const CommonFlags& flags) {
    Report report("phf-search");
    PhfSearchResult result =
        search_phf(rows, cols, symbols, subset, flags.budget > 0 ? flags.budget : 50000000ULL);
    report.j["params"] = {{"rows", rows}, {"columns", cols}, {"symbols", symbols}, {"t", subset}};
    report.j["result"] = {{"nodes", result.nodes}};
    std::string summary;
    int code = kExitInputError;
    switch (result.status) {
        case PhfSearchStatus::found:
            report.j["result"]["status"] = "found";
            if (!out_path.empty()) save_json_file(out_path, phf_to_json(*result.array));
            summary = "found";
            code = kExitOk;
            break;
        case PhfSearchStatus::none_found:
            report.j["result"]["status"] = "none-found";
            summary = "none found (search exhausted)";
            code = kExitDisproved;
            break;
        case PhfSearchStatus::budget_exceeded:
            report.j["result"]["status"] = "budget-exceeded";
            summary = "budget exceeded after " + std::to_string(result.nodes) + " nodes";
            code = kExitUndecided;
            break;
    }
    emit(report, flags, summary);
    return code;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"hat-guessing strategy engine"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CommonFlags flags;
    app.add_option("--threads", flags.threads, "worker threads (0 = hardware)");
    app.add_option("--budget", flags.budget, "placement or search-node budget");
    app.add_option("--seed", flags.seed, "seed for all randomness");
    app.add_option("--format", flags.format, "text|json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--report", flags.report_path, "write a run report to this file");

    auto* build = app.add_subcommand("build", "materialize a recipe into game and strategy files");
    std::string recipe_path, out_game, out_strategy;
    build->add_option("--recipe", recipe_path, "recipe file")->required();
    build->add_option("--out-game", out_game, "game document output");
    build->add_option("--out-strategy", out_strategy, "strategy document output");

    auto* verify = app.add_subcommand("verify", "check a strategy against its game");
    std::string game_path, strategy_path, mode = "exhaustive";
    u64 samples = 1000000;
    verify->add_option("--game", game_path, "game document")->required();
    verify->add_option("--strategy", strategy_path, "strategy document")->required();
    verify->add_option("--mode", mode, "exhaustive|sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    verify->add_option("--samples", samples, "sample count for sampled mode");

    auto* solve = app.add_subcommand("solve", "decide a small game by brute force");
    std::string solve_game, solve_out;
    solve->add_option("--game", solve_game, "game document")->required();
    solve->add_option("--out-strategy", solve_out, "write the winning lookup strategy here");

    auto* certify = app.add_subcommand("certify", "check or build a losing certificate");
    std::string cert_path, builder, petunia_path, cert_out;
    int s_param = 1, n_param = 1, edges = 1;
    certify->add_option("--cert", cert_path, "certificate file to check");
    certify->add_option("--builder", builder,
                        "path-losing|petal-losing|royal-petunia|alon");
    certify->add_option("--s", s_param, "guesses per sage for builders");
    certify->add_option("--n", n_param, "path length for builders");
    certify->add_option("--edges", edges, "horizontal edge count for the alon builder");
    certify->add_option("--petunia", petunia_path, "royal petunia description file");
    certify->add_option("--out", cert_out, "write the built certificate here");

    auto* phf_verify = app.add_subcommand("phf-verify", "check the perfect hash family property");
    std::string phf_path;
    phf_verify->add_option("--phf", phf_path, "phf document")->required();

    auto* phf_search = app.add_subcommand("phf-search", "search for a perfect hash family");
    int rows = 1, cols = 1, symbols = 2, subset = 2;
    std::string phf_out;
    phf_search->add_option("--rows", rows, "N")->required();
    phf_search->add_option("--cols", cols, "k")->required();
    phf_search->add_option("--symbols", symbols, "v")->required();
    phf_search->add_option("--subset", subset, "t")->required();
    phf_search->add_option("--out", phf_out, "write the found array here");

    std::vector<const char*> argv;
    argv.push_back("hats");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (build->parsed()) return cmd_build(recipe_path, out_game, out_strategy, flags);
        if (verify->parsed()) return cmd_verify(game_path, strategy_path, mode, samples, flags);
        if (solve->parsed()) return cmd_solve(solve_game, solve_out, flags);
        if (certify->parsed())
            return cmd_certify(cert_path, builder, s_param, n_param, edges, petunia_path,
                               cert_out, flags);
        if (phf_verify->parsed()) return cmd_phf_verify(phf_path, flags);
        if (phf_search->parsed())
            return cmd_phf_search(rows, cols, symbols, subset, phf_out, flags);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

} // namespace hats
