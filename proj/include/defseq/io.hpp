#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "defseq/admissibility.hpp"
#include "defseq/core.hpp"
#include "defseq/epseq.hpp"
#include "defseq/geometry.hpp"
#include "defseq/invariants.hpp"

namespace defseq {

using Json = nlohmann::ordered_json;

/// Parses a pattern-system document. Unknown fields are rejected; every
/// error is a DocumentError carrying a path into the document.
PatternSystem parse_system(std::string_view text);
PatternSystem parse_system(const Json& doc);
inline PatternSystem parse_system(const std::string& text) { return parse_system(std::string_view(text)); }
inline PatternSystem parse_system(const char* text) { return parse_system(std::string_view(text)); }
Json to_json(const PatternSystem& system);

StageGraph parse_stage_graph(std::string_view text);
Json to_json(const StageGraph& graph);

NestingRelation parse_nesting_relation(std::string_view text);
Json to_json(const NestingRelation& relation);

/// Either a class document {"representatives": [...], "slice_certificates":
/// [{"system", "provenance"}]} or a single pattern system.
FormalClass parse_class(std::string_view text);
Json to_json(const FormalClass& c);

Json to_json(const Z2Seq& seq);
Json to_json(const CountDescriptor& counts);
Json to_json(const AdmissibilityReport& report);
Json to_json(const BijectionResult& result);
Json to_json(const Verdict& verdict);

/// {"tori": [{"id", "core": [[x, y, z], ...], "radius"}]}
std::vector<TorusPlacement> parse_placements(std::string_view text);
Json to_json(std::span<const TorusPlacement> placements);
Json to_json(const CertificationReport& report);

/// Decimal string for counts that do not fit a 64-bit integer.
Json count_to_json(const Count& c);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

/// I/O failures from read_text_file / write_text_file.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace defseq
