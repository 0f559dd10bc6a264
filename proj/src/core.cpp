#include "defseq/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <utility>

namespace defseq {

namespace {

using Kind = DocumentError::Kind;

std::string lane_path(std::size_t lane) {
    return lane == 0 ? std::string("/assignment") : "/extra_assignments/" + std::to_string(lane - 1);
}

void validate_edges(const std::vector<LinkEdge>& edges, std::size_t count, const std::string& path) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const LinkEdge& e = edges[i];
        const std::string here = path + "/" + std::to_string(i);
        if (e.a >= count || e.b >= count) {
            throw DocumentError(Kind::semantic, here, "edge endpoint out of range");
        }
        if (e.a == e.b) throw DocumentError(Kind::semantic, here, "edge is reflexive");
        if (!seen.insert(std::minmax(e.a, e.b)).second) {
            throw DocumentError(Kind::semantic, here, "duplicate edge between the same pair");
        }
        if (e.lk != 0 && e.split) {
            throw DocumentError(Kind::semantic, here, "nonzero linking number on a split pair");
        }
    }
}

// True when the edges form one cycle through all k vertices.
bool is_single_cycle(const std::vector<LinkEdge>& edges, std::size_t k) {
    if (edges.size() != k) return false;
    std::vector<std::vector<std::size_t>> adj(k);
    for (const LinkEdge& e : edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    if (std::ranges::any_of(adj, [](const auto& n) { return n.size() != 2; })) return false;
    std::size_t prev = k, cur = 0, visited = 0;
    do {
        const std::size_t next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
        prev = cur;
        cur = next;
        ++visited;
    } while (cur != 0 && visited <= k);
    return visited == k;
}

}  // namespace

std::size_t Pattern::linked_children() const {
    std::vector<bool> linked(children.size(), false);
    for (const LinkEdge& e : edges) {
        if (e.lk != 0) linked[e.a] = linked[e.b] = true;
    }
    return static_cast<std::size_t>(std::ranges::count(linked, true));
}

const StageRule& Assignment::rule_for_stage(std::size_t m) const {
    if (m == 0) throw std::out_of_range("stage 0 has no assignment rule");
    const std::size_t i = m - 1;
    if (i < preperiod.size()) return preperiod[i];
    return period[(i - preperiod.size()) % period.size()];
}

const Pattern& PatternSystem::pattern_for(std::size_t lane, std::size_t stage, bool spine) const {
    const StageRule& rule = lanes.at(lane).rule_for_stage(stage);
    return patterns.at(spine ? rule.spine : rule.other);
}

void validate(const Pattern& p, const std::string& path) {
    if (p.children.empty()) {
        throw DocumentError(Kind::semantic, path + "/children", "pattern must have at least one child");
    }
    validate_edges(p.edges, p.children.size(), path + "/edges");
    if (p.spine_child && *p.spine_child >= p.children.size()) {
        throw DocumentError(Kind::semantic, path + "/spine_child", "spine child index out of range");
    }
    if (p.arrangement == Arrangement::chain) {
        if (p.children.size() < 3) {
            throw DocumentError(Kind::semantic, path, "chain arrangement needs at least 3 children");
        }
        if (std::ranges::any_of(p.edges, [](const LinkEdge& e) { return e.lk == 0; }) ||
            !is_single_cycle(p.edges, p.children.size())) {
            throw DocumentError(Kind::semantic, path + "/edges",
                                "chain arrangement needs one cycle of nonzero linking edges");
        }
    }
}

void validate(const PatternSystem& s) {
    if (s.roots.empty()) throw DocumentError(Kind::semantic, "/roots", "at least one root is required");
    std::set<std::string> ids;
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
        const RootSpec& r = s.roots[i];
        const std::string here = "/roots/" + std::to_string(i);
        if (r.id.empty() || r.id.find('.') != std::string::npos) {
            throw DocumentError(Kind::semantic, here + "/id", "root id must be nonempty and contain no '.'");
        }
        if (!ids.insert(r.id).second) throw DocumentError(Kind::semantic, here + "/id", "duplicate root id");
        if (r.lane >= s.lanes.size()) throw DocumentError(Kind::semantic, here + "/lane", "lane does not exist");
    }
    validate_edges(s.root_edges, s.roots.size(), "/root_edges");
    for (const auto& [name, pattern] : s.patterns) validate(pattern, "/patterns/" + name);

    if (s.lanes.empty()) throw DocumentError(Kind::semantic, "/assignment", "assignment is required");
    for (std::size_t lane = 0; lane < s.lanes.size(); ++lane) {
        const Assignment& a = s.lanes[lane];
        const std::string base = lane_path(lane);
        if (a.period.empty()) throw DocumentError(Kind::semantic, base + "/period", "period must be nonempty");
        auto check_rules = [&](const std::vector<StageRule>& rules, const std::string& where) {
            for (std::size_t i = 0; i < rules.size(); ++i) {
                const std::string here = where + "/" + std::to_string(i);
                const auto spine = s.patterns.find(rules[i].spine);
                if (spine == s.patterns.end()) {
                    throw DocumentError(Kind::semantic, here + "/spine", "unknown pattern '" + rules[i].spine + "'");
                }
                if (!spine->second.spine_child) {
                    throw DocumentError(Kind::semantic, here + "/spine",
                                        "pattern '" + rules[i].spine + "' used on the spine has no spine_child");
                }
                if (!s.patterns.contains(rules[i].other)) {
                    throw DocumentError(Kind::semantic, here + "/other", "unknown pattern '" + rules[i].other + "'");
                }
            }
        };
        check_rules(a.preperiod, base + "/preperiod");
        check_rules(a.period, base + "/period");

        const auto spines = std::ranges::count_if(s.roots, [&](const RootSpec& r) { return r.lane == lane && r.spine; });
        if (spines != 1) {
            throw DocumentError(Kind::semantic, "/roots",
                                "lane " + std::to_string(lane) + " needs exactly one spine root, found " +
                                    std::to_string(spines));
        }
    }
}

std::optional<std::size_t> StageGraph::find(const std::string& id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == id) return i;
    }
    return std::nullopt;
}

std::vector<std::vector<std::size_t>> StageGraph::linked_neighbors() const {
    std::vector<std::vector<std::size_t>> out(nodes.size());
    for (const LinkEdge& e : edges) {
        if (e.lk == 0) continue;
        out[e.a].push_back(e.b);
        out[e.b].push_back(e.a);
    }
    for (auto& n : out) std::ranges::sort(n);
    return out;
}

void validate(const StageGraph& g) {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (!ids.insert(g.nodes[i].id).second) {
            throw DocumentError(Kind::semantic, "/nodes/" + std::to_string(i) + "/id", "duplicate node id");
        }
    }
    validate_edges(g.edges, g.nodes.size(), "/edges");
}

ExpandOptions expand_options_from_env() {
    ExpandOptions options;
    if (const char* cap = std::getenv("DEFSEQ_NODE_CAP"); cap && *cap) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(cap, &end, 10);
        if (end && *end == '\0' && v > 0) options.node_cap = static_cast<std::size_t>(v);
    }
    return options;
}

std::string to_string(Arrangement arrangement) {
    return arrangement == Arrangement::chain ? "chain" : "custom";
}

}  // namespace defseq
