#include "defseq/admissibility.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace defseq {

namespace {

constexpr std::size_t max_trace = 64;

const char* const chain_assumption =
    "every pattern is a chain of unknots linked like the Hopf link (simple chain type); "
    "clause assumed, not checked";

struct Accumulator {
    std::vector<std::string> clause1, clause2;
    std::size_t clause1_total = 0, clause2_total = 0;
    bool all_chain = true;
    bool all_unknots = true;
    std::set<std::string> custom_patterns;

    void fail1(std::string msg) {
        if (clause1.size() < max_trace) clause1.push_back(std::move(msg));
        ++clause1_total;
    }
    void fail2(std::string msg) {
        if (clause2.size() < max_trace) clause2.push_back(std::move(msg));
        ++clause2_total;
    }
};

std::string name_of(const TorusNode& n) { return n.id; }

// Checks clauses 1 and 2 on one stage m >= 1; nodes are grouped by parent.
void check_stage(const StageGraph& g, const std::map<std::string, Pattern>& patterns, Accumulator& acc) {
    const std::string stage = "stage " + std::to_string(g.stage);

    std::map<std::size_t, std::vector<std::size_t>> by_parent;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) by_parent[g.nodes[i].parent_index.value_or(0)].push_back(i);
    for (const auto& [parent, members] : by_parent) {
        if (members.size() < 4) {
            const std::string parent_id = g.nodes[members.front()].parent.value_or("?");
            acc.fail1("adm(1): " + stage + " parent " + parent_id + " contains " + std::to_string(members.size()) +
                      " components, fewer than four components");
        }
    }

    const auto linked = g.linked_neighbors();
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        if (linked[i].size() == 2) continue;
        std::string list;
        for (std::size_t j : linked[i]) list += (list.empty() ? "" : ", ") + name_of(g.nodes[j]);
        acc.fail1("adm(1): " + stage + " node " + g.nodes[i].id + " has " + std::to_string(linked[i].size()) +
                  " linked neighbors [" + list + "], exactly two required");
    }
    for (const LinkEdge& e : g.edges) {
        if (e.lk == 0 && !e.split) {
            acc.fail1("adm(1): " + stage + " nodes " + g.nodes[e.a].id + " and " + g.nodes[e.b].id +
                      " have linking number 0 but are not split");
        }
    }

    for (const TorusNode& n : g.nodes) {
        if (n.winding == 0) {
            acc.fail2("adm(2): " + stage + " node " + n.id + " has winding 0 in its parent (null-homotopic)");
        }
        if (n.knot != "unknot") acc.all_unknots = false;
        const auto it = patterns.find(n.pattern);
        if (it == patterns.end() || it->second.arrangement != Arrangement::chain) {
            acc.all_chain = false;
            acc.custom_patterns.insert(n.pattern);
        }
    }
}

ConditionResult finish_clause(const std::vector<std::string>& trace, std::size_t total, const std::string& ok) {
    ConditionResult r;
    if (total == 0) {
        r.status = ConditionStatus::satisfied;
        r.detail = ok;
        return r;
    }
    r.status = ConditionStatus::violated;
    r.detail = trace.front();
    r.trace = trace;
    if (total > trace.size()) r.trace.push_back("... " + std::to_string(total - trace.size()) + " more");
    return r;
}

AdmissibilityReport finish(const Accumulator& acc, std::size_t depth, const std::string& scope) {
    AdmissibilityReport rep;
    rep.depth = depth;
    rep.conditions[0] = finish_clause(acc.clause1, acc.clause1_total,
                                      "each parent holds at least four components, each linked to exactly "
                                      "two others; all other pairs split (" + scope + ")");
    if (acc.clause2_total > 0) {
        rep.conditions[1] = finish_clause(acc.clause2, acc.clause2_total, "");
    } else if (acc.all_chain) {
        rep.conditions[1].status = ConditionStatus::satisfied;
        rep.conditions[1].detail = "chain arrangements with nonzero windings (" + scope + ")";
    } else {
        rep.conditions[1].status = ConditionStatus::not_checkable;
        std::string names;
        for (const auto& n : acc.custom_patterns) names += (names.empty() ? "" : ", ") + n;
        rep.conditions[1].detail = "non-chain patterns [" + names + "]; clause 2 has no combinatorial proxy";
    }
    for (std::size_t i = 2; i < 4; ++i) {
        if (acc.all_chain && acc.all_unknots) {
            rep.conditions[i].status = ConditionStatus::assumed;
            rep.conditions[i].detail = chain_assumption;
        } else {
            rep.conditions[i].status = ConditionStatus::not_checkable;
            rep.conditions[i].detail = "concerns the infinite intersection; not checkable for non-chain patterns";
        }
    }
    const bool any_violated = std::ranges::any_of(
        rep.conditions, [](const ConditionResult& c) { return c.status == ConditionStatus::violated; });
    rep.overall = !any_violated && rep.conditions[0].status == ConditionStatus::satisfied &&
                  rep.conditions[1].status == ConditionStatus::satisfied;
    return rep;
}

// One instance of a pattern under a synthetic parent, as a stage graph.
StageGraph instance(const Pattern& p, const std::string& name, const std::string& parent, std::size_t m) {
    StageGraph g;
    g.stage = m;
    for (std::size_t c = 0; c < p.children.size(); ++c) {
        TorusNode n;
        n.id = parent + "." + std::to_string(c);
        n.parent = parent;
        n.parent_index = 0;
        n.stage = m;
        n.winding = p.children[c].winding;
        n.knot = p.children[c].knot;
        n.pattern = name;
        g.nodes.push_back(std::move(n));
    }
    g.edges = p.edges;
    return g;
}

}  // namespace

std::string to_string(ConditionStatus status) {
    switch (status) {
        case ConditionStatus::satisfied: return "Satisfied";
        case ConditionStatus::violated: return "Violated";
        case ConditionStatus::assumed: return "Assumed";
        case ConditionStatus::not_checkable: return "NotCheckable";
    }
    return "NotCheckable";
}

AdmissibilityReport check_admissible(const PatternSystem& s, std::size_t depth, const ExpandOptions& options) {
    if (depth == 0) throw std::invalid_argument("admissibility check needs depth >= 1");
    Accumulator acc;
    for (const RootSpec& r : s.roots) {
        if (r.knot != "unknot") acc.all_unknots = false;
    }
    const auto stages = expand(s, depth, options);
    for (std::size_t m = 1; m < stages.size(); ++m) check_stage(stages[m], s.patterns, acc);
    return finish(acc, depth, "stages 1.." + std::to_string(depth));
}

AdmissibilityReport check_admissible_all_stages(const PatternSystem& s) {
    Accumulator acc;
    for (const RootSpec& r : s.roots) {
        if (r.knot != "unknot") acc.all_unknots = false;
    }
    for (std::size_t lane = 0; lane < s.lanes.size(); ++lane) {
        const Assignment& a = s.lanes[lane];
        const auto roots = std::ranges::count_if(s.roots, [&](const RootSpec& r) { return r.lane == lane; });
        // Whether stage m-1 has parents off the spine; saturates once true.
        bool has_others = roots > 1;
        std::set<std::pair<std::size_t, bool>> seen;
        for (std::size_t m = 1;; ++m) {
            if (m - 1 >= a.preperiod.size()) {
                const std::size_t phase = (m - 1 - a.preperiod.size()) % a.period.size();
                if (!seen.emplace(phase, has_others).second) break;
            }
            const StageRule& rule = a.rule_for_stage(m);
            const std::string prefix = "lane " + std::to_string(lane) + " stage " + std::to_string(m - 1);
            check_stage(instance(s.patterns.at(rule.spine), rule.spine, prefix + " spine parent", m), s.patterns, acc);
            if (has_others) {
                check_stage(instance(s.patterns.at(rule.other), rule.other, prefix + " other parent", m), s.patterns,
                            acc);
            }
            const Pattern& spine = s.patterns.at(rule.spine);
            const Pattern& other = s.patterns.at(rule.other);
            has_others = spine.children.size() > 1 || (has_others && !other.children.empty());
        }
    }
    return finish(acc, 0, "all stages");
}

}  // namespace defseq
