#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "defseq/core.hpp"

namespace defseq {

enum class ConditionStatus { satisfied, violated, assumed, not_checkable };

std::string to_string(ConditionStatus status);

struct ConditionResult {
    ConditionStatus status = ConditionStatus::not_checkable;
    std::string detail;
    std::vector<std::string> trace;
};

/// Status of the four admissibility conditions; conditions[i] is clause i+1.
struct AdmissibilityReport {
    std::array<ConditionResult, 4> conditions;
    std::size_t depth = 0;
    bool overall = false;  // no clause violated and clauses 1, 2 satisfied
};

/// Checks clauses 1 and 2 on the expanded stages 1..depth. Clauses 3 and 4
/// concern the infinite intersection; they are recorded as assumed for
/// chains of unknots and not checkable otherwise.
AdmissibilityReport check_admissible(const PatternSystem& system, std::size_t depth,
                                     const ExpandOptions& options = {});

/// Same checks over every stage, using one instance of each pattern that can
/// occur at each assignment phase instead of the expanded stages. Linking is
/// intra-parent, so this covers the whole infinite sequence.
AdmissibilityReport check_admissible_all_stages(const PatternSystem& system);

// ---------------------------------------------------------------------------
// Component bijection between two normalized stages
// ---------------------------------------------------------------------------

enum class NestingTag { c_in_d, d_in_c };

struct NestingPair {
    std::string c;
    std::string d;
    NestingTag tag = NestingTag::c_in_d;
};

struct NestingRelation {
    std::size_t stage = 0;
    std::vector<NestingPair> pairs;
};

struct BijectionCertificate {
    std::vector<std::pair<std::string, std::string>> matching;  // (c id, d id), sorted by c id
    std::vector<std::string> log;
};

struct BijectionViolation {
    char rule = '?';     // 'a', 'b', 'c', or 'p' for precondition / consistency failures
    std::string clause;  // admissibility clause cited, e.g. "adm(1)"
    std::vector<std::string> trace;
};

using BijectionResult = std::variant<BijectionCertificate, BijectionViolation>;

/**
 * Decides whether the nesting relation between two stages induces a
 * bijection of components.
 *
 * Rules, in order: (a) every node must be related to some node of the other
 * family; (b) the inner node of each related pair must have nonzero
 * winding; (c) a node containing two or more nodes of the other family is
 * refuted by walking the linking chain until some node would be linked to
 * three others; (d) otherwise every node has exactly one partner and the
 * relation is the matching.
 *
 * Throws DocumentError if the relation references unknown nodes.
 */
BijectionResult verify_component_bijection(const StageGraph& c_stage, const StageGraph& d_stage,
                                           const NestingRelation& relation);

}  // namespace defseq
