#include "defseq/core.hpp"

#include <limits>

namespace defseq {

namespace {

constexpr std::size_t saturated = std::numeric_limits<std::size_t>::max();

std::size_t sat_add(std::size_t a, std::size_t b) { return a > saturated - b ? saturated : a + b; }

std::size_t sat_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > saturated / a) return saturated;
    return a * b;
}

StageGraph root_stage(const PatternSystem& s) {
    StageGraph g;
    g.stage = 0;
    g.nodes.reserve(s.roots.size());
    for (const RootSpec& r : s.roots) {
        TorusNode n;
        n.id = r.id;
        n.stage = 0;
        n.winding = 0;
        n.knot = r.knot;
        n.spine = r.spine;
        n.lane = r.lane;
        g.nodes.push_back(std::move(n));
    }
    g.edges = s.root_edges;
    return g;
}

StageGraph next_stage(const PatternSystem& s, const StageGraph& prev) {
    StageGraph g;
    g.stage = prev.stage + 1;
    for (std::size_t p = 0; p < prev.nodes.size(); ++p) {
        const TorusNode& parent = prev.nodes[p];
        const StageRule& rule = s.lanes[parent.lane].rule_for_stage(g.stage);
        const std::string& name = parent.spine ? rule.spine : rule.other;
        const Pattern& pattern = s.patterns.at(name);
        const std::size_t offset = g.nodes.size();
        for (std::size_t c = 0; c < pattern.children.size(); ++c) {
            TorusNode n;
            n.id = parent.id + "." + std::to_string(c);
            n.parent = parent.id;
            n.parent_index = p;
            n.stage = g.stage;
            n.winding = pattern.children[c].winding;
            n.knot = pattern.children[c].knot;
            n.spine = parent.spine && pattern.spine_child == c;
            n.lane = parent.lane;
            n.pattern = name;
            g.nodes.push_back(std::move(n));
        }
        for (const LinkEdge& e : pattern.edges) {
            g.edges.push_back({offset + e.a, offset + e.b, e.lk, e.split});
        }
    }
    return g;
}

void check_cap(const PatternSystem& s, std::size_t depth, const ExpandOptions& options) {
    std::size_t total = 0;
    const auto sizes = stage_sizes(s, depth);
    for (std::size_t m = 0; m < sizes.size(); ++m) {
        total = sat_add(total, sizes[m]);
        if (total > options.node_cap) {
            throw ResourceError("expansion to depth " + std::to_string(depth) + " needs more than " +
                                std::to_string(options.node_cap) + " nodes (exceeded at stage " +
                                std::to_string(m) + ")");
        }
    }
}

}  // namespace

std::vector<std::size_t> stage_sizes(const PatternSystem& s, std::size_t depth) {
    // Per lane: one spine node, the rest use the "other" pattern.
    std::vector<std::size_t> lane_count(s.lanes.size(), 0);
    for (const RootSpec& r : s.roots) ++lane_count[r.lane];
    std::vector<std::size_t> sizes;
    sizes.reserve(depth + 1);
    sizes.push_back(s.roots.size());
    for (std::size_t m = 1; m <= depth; ++m) {
        std::size_t total = 0;
        for (std::size_t lane = 0; lane < s.lanes.size(); ++lane) {
            const StageRule& rule = s.lanes[lane].rule_for_stage(m);
            const std::size_t spine_children = s.patterns.at(rule.spine).children.size();
            const std::size_t other_children = s.patterns.at(rule.other).children.size();
            const std::size_t c = lane_count[lane];
            lane_count[lane] = c == saturated ? saturated : sat_add(spine_children, sat_mul(c - 1, other_children));
            total = sat_add(total, lane_count[lane]);
        }
        sizes.push_back(total);
    }
    return sizes;
}

std::vector<StageGraph> expand(const PatternSystem& s, std::size_t depth, const ExpandOptions& options) {
    check_cap(s, depth, options);
    std::vector<StageGraph> stages;
    stages.reserve(depth + 1);
    stages.push_back(root_stage(s));
    for (std::size_t m = 1; m <= depth; ++m) stages.push_back(next_stage(s, stages.back()));
    return stages;
}

StageGraph stage(const PatternSystem& s, std::size_t m, const ExpandOptions& options) {
    check_cap(s, m, options);
    StageGraph g = root_stage(s);
    for (std::size_t i = 1; i <= m; ++i) g = next_stage(s, g);
    return g;
}

}  // namespace defseq
