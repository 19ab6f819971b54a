#ifndef HATS_IO_HPP
#define HATS_IO_HPP

#include <string>

#include <json.hpp>

#include "hats/certificates.hpp"
#include "hats/constructors.hpp"
#include "hats/phf.hpp"
#include "hats/strategy.hpp"
#include "hats/verifier.hpp"

namespace hats {

// Game document: {"vertices": n, "labels": [...], "edges": [[u,v],...],
// "arcs": [[u,v],...], "h": [...], "g": [...], "hint": {...} | null}.
// "edges" expand to arc pairs and union with "arcs"; unknown keys rejected.
nlohmann::json game_to_json(const HatGame& game);
HatGame game_from_json(const nlohmann::json& j);

nlohmann::json placement_to_json(const HatPlacement& placement);
HatPlacement placement_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& verdict);
nlohmann::json solve_result_to_json(const SolveResult& result);

nlohmann::json phf_to_json(const PhfArray& array);
PhfArray phf_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const LosingCertificate& cert);
LosingCertificate certificate_from_json(const nlohmann::json& j);

// A strategy file is its provenance tree; evaluators are rebuilt from it,
// never serialized as code. base_dir resolves any phf_file references.
nlohmann::json strategy_to_json(const Strategy& strategy);
StrategyPtr strategy_from_json(const nlohmann::json& j, const std::string& base_dir = ".");

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

// FNV-1a 64 content digest, hex.
std::string file_digest(const std::string& path);

} // namespace hats

#endif
