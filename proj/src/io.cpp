#include "hats/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hats {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const char* what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) known = true;
        if (!known) throw error(std::string(what) + ": unknown key '" + it.key() + "'");
    }
}

std::vector<std::pair<Vertex, Vertex>> pairs_from_json(const json& j, const char* what) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    if (!j.is_array()) throw error(std::string(what) + " must be an array of pairs");
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2)
            throw error(std::string(what) + " entries must be [u, v] pairs");
        pairs.emplace_back(entry[0].get<Vertex>(), entry[1].get<Vertex>());
    }
    return pairs;
}

} // namespace

json game_to_json(const HatGame& game) {
    json j;
    j["vertices"] = game.n();
    if (!game.graph.labels.empty()) j["labels"] = game.graph.labels;
    json arcs = json::array();
    for (auto [u, v] : game.graph.arcs()) arcs.push_back({u, v});
    j["arcs"] = std::move(arcs);
    j["h"] = game.hatness;
    j["g"] = game.guesses;
    if (game.hint)
        j["hint"] = {{"vertex", game.hint->vertex}, {"width", game.hint->width}};
    else
        j["hint"] = nullptr;
    return j;
}

HatGame game_from_json(const json& j) {
    if (!j.is_object()) throw error("game document must be an object");
    reject_unknown_keys(j, {"vertices", "labels", "edges", "arcs", "h", "g", "hint"},
                        "game document");
    if (!j.contains("vertices")) throw error("game document: missing 'vertices'");
    if (!j.contains("h") || !j.contains("g")) throw error("game document: missing 'h' or 'g'");
    int n = j["vertices"].get<int>();
    VisibilityGraph graph(n);
    if (j.contains("edges"))
        for (auto [u, v] : pairs_from_json(j["edges"], "edges")) graph.add_edge(u, v);
    if (j.contains("arcs"))
        for (auto [u, v] : pairs_from_json(j["arcs"], "arcs")) graph.add_arc(u, v);
    if (j.contains("labels") && !j["labels"].is_null()) {
        graph.labels = j["labels"].get<std::vector<std::string>>();
        if (int(graph.labels.size()) != n) throw error("game document: labels size mismatch");
    }
    std::optional<Hint> hint;
    if (j.contains("hint") && !j["hint"].is_null()) {
        reject_unknown_keys(j["hint"], {"vertex", "width"}, "hint");
        hint = Hint{j["hint"]["vertex"].get<Vertex>(), j["hint"]["width"].get<int>()};
    }
    HatGame game{std::move(graph), j["h"].get<std::vector<int>>(),
                 j["g"].get<std::vector<int>>(), hint};
    if (int(game.hatness.size()) != n || int(game.guesses.size()) != n)
        throw error("game document: h/g size mismatch");
    normalize_game(game);
    auto findings = validate_game(game);
    if (!findings.empty()) throw error("game document: " + findings.front());
    return game;
}

json placement_to_json(const HatPlacement& placement) { return json(placement.colors); }

HatPlacement placement_from_json(const json& j) {
    return HatPlacement{j.get<std::vector<int>>()};
}

json verdict_to_json(const Verdict& verdict) {
    json j;
    j["outcome"] = outcome_name(verdict.outcome);
    j["witness"] = verdict.witness ? placement_to_json(*verdict.witness) : json(nullptr);
    j["witness_hint_start"] =
        verdict.witness_hint_start >= 0 ? json(verdict.witness_hint_start) : json(nullptr);
    j["placements_checked"] = verdict.placements_checked;
    j["wall_time_s"] = verdict.wall_time_s;
    j["seed"] = verdict.seed;
    if (!verdict.note.empty()) j["note"] = verdict.note;
    if (!verdict.required.empty()) j["required"] = verdict.required;
    return j;
}

json solve_result_to_json(const SolveResult& result) {
    json j;
    switch (result.status) {
        case SolveStatus::winning: j["status"] = "winning"; break;
        case SolveStatus::losing: j["status"] = "losing"; break;
        case SolveStatus::undecided: j["status"] = "undecided"; break;
    }
    j["nodes_explored"] = result.nodes_explored;
    j["strategy_space"] = result.space;
    j["wall_time_s"] = result.wall_time_s;
    if (!result.note.empty()) j["note"] = result.note;
    return j;
}

json phf_to_json(const PhfArray& array) {
    return json{{"v", array.symbols},
                {"t", array.t},
                {"columns", array.columns},
                {"array", array.rows}};
}

PhfArray phf_from_json(const json& j) {
    reject_unknown_keys(j, {"v", "t", "columns", "array"}, "phf document");
    if (!j.contains("v") || !j.contains("t") || !j.contains("array"))
        throw error("phf document: need 'v', 't' and 'array'");
    PhfArray array;
    array.symbols = j["v"].get<int>();
    array.t = j["t"].get<int>();
    array.rows = j["array"].get<std::vector<std::vector<int>>>();
    if (j.contains("columns"))
        array.columns = j["columns"].get<int>();
    else if (!array.rows.empty())
        array.columns = int(array.rows[0].size());
    else
        throw error("phf document: zero-row array needs an explicit 'columns'");
    return array;
}

json certificate_to_json(const LosingCertificate& cert) {
    json j;
    j["rule"] = cert_rule_name(cert.rule);
    j["game"] = game_to_json(cert.game);
    switch (cert.rule) {
        case CertRule::glue_at_vertex:
            j["s"] = cert.s;
            j["vertex"] = cert.vertex;
            j["left_vertex"] = cert.left_vertex;
            j["right_vertex"] = cert.right_vertex;
            break;
        case CertRule::add_half_edge:
            j["from"] = cert.from;
            j["to"] = cert.to;
            break;
        case CertRule::remove_strong_vertex:
            j["s"] = cert.s;
            j["vertex"] = cert.vertex;
            break;
        case CertRule::path_step:
            j["s"] = cert.s;
            break;
        case CertRule::brute_forced:
            j["budget"] = cert.budget;
            break;
        default:
            break;
    }
    if (!cert.children.empty()) {
        json children = json::array();
        for (const auto& child : cert.children) children.push_back(certificate_to_json(child));
        j["children"] = std::move(children);
    }
    return j;
}

LosingCertificate certificate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rule") || !j.contains("game"))
        throw error("certificate: need 'rule' and 'game'");
    LosingCertificate cert;
    cert.rule = cert_rule_from_name(j["rule"].get<std::string>());
    cert.game = game_from_json(j["game"]);
    cert.s = j.value("s", 0);
    cert.vertex = j.value("vertex", -1);
    cert.left_vertex = j.value("left_vertex", -1);
    cert.right_vertex = j.value("right_vertex", -1);
    cert.from = j.value("from", -1);
    cert.to = j.value("to", -1);
    cert.budget = j.value("budget", u64(0));
    if (j.contains("children"))
        for (const auto& child : j["children"])
            cert.children.push_back(certificate_from_json(child));
    return cert;
}

json strategy_to_json(const Strategy& strategy) {
    json j = strategy.provenance();
    if (j.value("kind", "") == "literal_lookup" && !j.contains("game")) {
        const auto* lookup = dynamic_cast<const LookupStrategy*>(&strategy);
        if (lookup == nullptr) throw error("strategy: literal_lookup without tables");
        j["game"] = game_to_json(lookup->game());
        j["tables"] = lookup->tables();
    }
    return j;
}

StrategyPtr strategy_from_json(const json& j, const std::string& base_dir) {
    if (!j.is_object() || !j.contains("kind")) throw error("strategy node: missing 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    auto child = [&](const char* key) {
        if (!j.contains(key))
            throw error("strategy node '" + kind + "': missing '" + key + "'");
        return strategy_from_json(j[key], base_dir);
    };
    auto phf_of = [&](const json& node) {
        if (node.contains("phf")) return phf_from_json(node["phf"]);
        if (node.contains("phf_file")) {
            std::filesystem::path p = node["phf_file"].get<std::string>();
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            return phf_from_json(load_json_file(p.string()));
        }
        throw error("strategy node '" + kind + "': needs 'phf' or 'phf_file'");
    };

    if (kind == "clique")
        return clique_strategy(j.at("h").get<std::vector<int>>(),
                               j.at("g").get<std::vector<int>>());
    if (kind == "product")
        return product_at_vertex(child("left"), child("right"), j.at("left_vertex").get<int>(),
                                 j.at("right_vertex").get<int>());
    if (kind == "reduced_join") {
        const json& aj = j.at("arbitrator");
        const std::string arb_kind = aj.at("kind").get<std::string>();
        Arbitrator arb;
        if (arb_kind == "singleton") {
            arb = Arbitrator::singleton(aj.at("set").get<std::vector<Vertex>>().at(0));
        } else if (arb_kind == "out_closed") {
            arb = Arbitrator::out_closed(aj.at("set").get<std::vector<Vertex>>(),
                                         aj.value("reduced", std::vector<Vertex>{}));
        } else {
            throw error("reduced_join: unknown arbitrator kind '" + arb_kind + "'");
        }
        return reduced_join(child("inner"), arb, child("outer"), j.at("z").get<int>(),
                            j.at("divisors").get<std::vector<int>>());
    }
    if (kind == "half_edge_removal")
        return remove_half_edge(child("child"), j.at("from").get<int>(), j.at("to").get<int>());
    if (kind == "strong_vertex") {
        const std::string op = j.at("op").get<std::string>();
        if (op == "remove") return strong_vertex_remove(child("child"), j.at("vertex").get<int>());
        if (op == "attach") return strong_vertex_attach(child("child"), j.at("s").get<int>());
        throw error("strong_vertex: unknown op '" + op + "'");
    }
    if (kind == "hint_base")
        return hint_window_base(j.at("h").get<int>(), j.at("g").get<int>());
    if (kind == "hint_extend")
        return hint_extend(child("child"), j.at("h_a").get<int>(), j.at("w_a").get<int>(),
                           j.at("g_a").get<int>());
    if (kind == "drop_hint") return drop_full_hint(child("child"));
    if (kind == "path") return build_path(j.at("s").get<int>());
    if (kind == "star_scrapheap")
        return star_scrapheap(j.at("s").get<int>(), j.at("H").get<int>());
    if (kind == "star_phf") return star_from_phf(phf_of(j));
    if (kind == "petal") {
        const std::string star = j.value("star", "phf");
        StarBackend backend = star == "scrapheap" ? StarBackend::scrapheap : StarBackend::phf;
        std::optional<PhfArray> phf;
        if (j.contains("phf") || j.contains("phf_file")) phf = phf_of(j);
        return build_petal(j.at("s").get<int>(), backend, phf);
    }
    if (kind == "planar22") return build_planar22(j.at("k").get<int>(), phf_of(j));
    if (kind == "literal_lookup")
        return std::make_shared<LookupStrategy>(
            game_from_json(j.at("game")), j.at("tables").get<std::vector<std::vector<GuessSet>>>());
    throw error("strategy node: unknown kind '" + kind + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write " + path);
    out << content;
}

json load_json_file(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw error(path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

std::string file_digest(const std::string& path) {
    std::string bytes = read_text_file(path);
    u64 hash = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)hash);
    return std::string(buf);
}

} // namespace hats
