#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace defseq {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Malformed or inconsistent input document. path points into the document
/// (JSON-pointer style, e.g. "/patterns/chain4/edges/2").
class DocumentError : public std::runtime_error {
public:
    enum class Kind { schema, semantic };

    DocumentError(Kind kind, std::string path, const std::string& message)
        : std::runtime_error((kind == Kind::schema ? "schema violation at " : "semantic violation at ") +
                             (path.empty() ? std::string("/") : path) + ": " + message),
          kind_(kind),
          path_(std::move(path)),
          message_(message) {}

    Kind kind() const noexcept { return kind_; }
    const std::string& path() const noexcept { return path_; }
    const std::string& message() const noexcept { return message_; }

private:
    Kind kind_;
    std::string path_;
    std::string message_;
};

/// Expansion would exceed the configured node cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Patterns and pattern systems
// ---------------------------------------------------------------------------

enum class Arrangement { chain, custom };

struct ChildSlot {
    int winding = 1;
    std::string knot = "unknot";

    friend bool operator==(const ChildSlot&, const ChildSlot&) = default;
};

/// Linking datum between two components. Stored once per unordered pair.
struct LinkEdge {
    std::size_t a = 0;
    std::size_t b = 0;
    long lk = 0;
    bool split = false;

    friend bool operator==(const LinkEdge&, const LinkEdge&) = default;
};

/// Replacement step: the children placed inside one parent torus.
struct Pattern {
    std::vector<ChildSlot> children;
    std::vector<LinkEdge> edges;  // indices into children
    Arrangement arrangement = Arrangement::custom;
    std::optional<std::size_t> spine_child;

    /// Number of children incident to at least one edge with lk != 0.
    std::size_t linked_children() const;

    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Pattern choice for one stage: one pattern for the spine parent, one for
/// every other parent.
struct StageRule {
    std::string spine;
    std::string other;

    friend bool operator==(const StageRule&, const StageRule&) = default;
};

/// Eventually periodic per-stage rules. Rule list index 0 governs stage 1.
struct Assignment {
    std::vector<StageRule> preperiod;
    std::vector<StageRule> period;

    /// Rule applied to parents at stage m-1 to produce stage m (m >= 1).
    const StageRule& rule_for_stage(std::size_t m) const;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct RootSpec {
    std::string id;
    std::string knot = "unknot";
    bool spine = false;
    std::size_t lane = 0;

    friend bool operator==(const RootSpec&, const RootSpec&) = default;
};

/**
 * Finite presentation of an infinite toroidal defining sequence.
 *
 * Roots form stage 0. Every root belongs to a lane; a lane owns one
 * Assignment and exactly one spine root. Lane 0 is the document's
 * "assignment"; further lanes only appear after disjoint unions.
 */
struct PatternSystem {
    std::vector<RootSpec> roots;
    std::vector<LinkEdge> root_edges;  // indices into roots
    std::map<std::string, Pattern> patterns;
    std::vector<Assignment> lanes;

    const Pattern& pattern_for(std::size_t lane, std::size_t stage, bool spine) const;
    std::size_t lane_count() const noexcept { return lanes.size(); }

    friend bool operator==(const PatternSystem&, const PatternSystem&) = default;
};

/// Checks every PatternSystem invariant; throws DocumentError on failure.
void validate(const PatternSystem& system);

/// Checks Pattern invariants; path is used for error reporting.
void validate(const Pattern& pattern, const std::string& path);

// ---------------------------------------------------------------------------
// Expanded stages
// ---------------------------------------------------------------------------

struct TorusNode {
    std::string id;                     // path based: root id, then ".child" per stage
    std::optional<std::string> parent;  // absent for roots
    std::optional<std::size_t> parent_index;
    std::size_t stage = 0;
    int winding = 0;
    std::string knot = "unknot";
    bool spine = false;
    std::size_t lane = 0;
    std::string pattern;  // pattern this node was instantiated from; empty for roots

    friend bool operator==(const TorusNode&, const TorusNode&) = default;
};

struct StageGraph {
    std::size_t stage = 0;
    std::vector<TorusNode> nodes;
    std::vector<LinkEdge> edges;  // indices into nodes

    std::optional<std::size_t> find(const std::string& id) const;

    /// For every node, the nodes sharing an edge with lk != 0 (ascending).
    std::vector<std::vector<std::size_t>> linked_neighbors() const;

    friend bool operator==(const StageGraph&, const StageGraph&) = default;
};

/// Edge list is irreflexive, free of duplicate pairs, and lk != 0 implies
/// not split. Throws DocumentError.
void validate(const StageGraph& graph);

struct ExpandOptions {
    std::size_t node_cap = 1'000'000;
};

/// Node cap from DEFSEQ_NODE_CAP if set, else the default.
ExpandOptions expand_options_from_env();

/// Stages 0..depth. Throws ResourceError when the total node count would
/// exceed options.node_cap.
std::vector<StageGraph> expand(const PatternSystem& system, std::size_t depth,
                               const ExpandOptions& options = {});

StageGraph stage(const PatternSystem& system, std::size_t m, const ExpandOptions& options = {});

/// Node count of each stage 0..depth without building the stages. Saturates
/// at SIZE_MAX.
std::vector<std::size_t> stage_sizes(const PatternSystem& system, std::size_t depth);

std::string to_string(Arrangement arrangement);

}  // namespace defseq
