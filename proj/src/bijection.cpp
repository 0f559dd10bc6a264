#include "defseq/admissibility.hpp"

#include <algorithm>

namespace defseq {

namespace {

// Nodes of both families in one index space: c nodes first, then d nodes.
struct Joint {
    const StageGraph& c;
    const StageGraph& d;
    std::vector<std::vector<std::size_t>> contains;   // joint index -> joint indices inside it
    std::vector<std::vector<std::size_t>> contained;  // joint index -> joint indices containing it
    std::vector<std::vector<std::size_t>> linked;     // same-family lk != 0 neighbors (joint indices)

    std::size_t size() const { return c.nodes.size() + d.nodes.size(); }
    bool is_c(std::size_t j) const { return j < c.nodes.size(); }
    const TorusNode& node(std::size_t j) const { return is_c(j) ? c.nodes[j] : d.nodes[j - c.nodes.size()]; }
    std::string label(std::size_t j) const { return (is_c(j) ? "c:" : "d:") + node(j).id; }

    std::vector<std::size_t> partners(std::size_t j) const {
        std::vector<std::size_t> out = contains[j];
        out.insert(out.end(), contained[j].begin(), contained[j].end());
        return out;
    }
};

BijectionViolation violation(char rule, std::string clause, std::vector<std::string> trace) {
    return {rule, std::move(clause), std::move(trace)};
}

// Chain walk of rule (c) starting at a node t that contains t1 and t2.
BijectionViolation chain_walk(const Joint& J, std::size_t t, std::size_t t1, std::size_t t2) {
    std::vector<std::string> log;
    log.push_back("rule (c): " + J.label(t) + " contains both " + J.label(t1) + " and " + J.label(t2));

    const auto& t_links = J.linked[t];
    if (t_links.empty()) {
        log.push_back(J.label(t) + " has no linked neighbor");
        return violation('c', "adm(1)", std::move(log));
    }
    const std::size_t tp = t_links.front();
    log.push_back(J.label(t) + " is linked with " + J.label(tp) + " (lk != 0, adm(1))");

    const auto tp_partners = J.partners(tp);
    const std::size_t t3 = tp_partners.front();
    const bool t3_inside = std::ranges::find(J.contains[tp], t3) != J.contains[tp].end();
    log.push_back(J.label(t3) + (t3_inside ? " lies inside " : " contains ") + J.label(tp) + "; hence " +
                  J.label(t1) + " and " + J.label(t2) + " are linked with " + J.label(t3));

    std::size_t tpp = tp;
    for (std::size_t n : J.linked[tp]) {
        if (n != t) {
            tpp = n;
            break;
        }
    }
    if (tpp == tp) {
        log.push_back(J.label(tp) + " has no second linked neighbor");
        return violation('c', "adm(1)", std::move(log));
    }
    log.push_back(J.label(tp) + " is linked with " + J.label(tpp) + " (lk != 0, adm(1))");

    const auto tpp_partners = J.partners(tpp);
    if (std::ranges::find(tpp_partners, t3) != tpp_partners.end()) {
        log.push_back(J.label(tp) + " and " + J.label(tpp) + " both lie inside " + J.label(t3) +
                      ": both are linked with " + J.label(t) + " and with each other, contradicting adm(1)");
        return violation('c', "adm(1)", std::move(log));
    }
    const std::size_t t4 = tpp_partners.front();
    const bool t4_inside = std::ranges::find(J.contains[tpp], t4) != J.contains[tpp].end();
    log.push_back(J.label(t4) + (t4_inside ? " lies inside " : " contains ") + J.label(tpp) + "; hence " +
                  J.label(t3) + " is linked with " + J.label(t4));
    log.push_back(J.label(t3) + " is linked with three components " + J.label(t1) + ", " + J.label(t2) + ", " +
                  J.label(t4) + ", contradicting adm(1)");
    return violation('c', "adm(1)", std::move(log));
}

}  // namespace

BijectionResult verify_component_bijection(const StageGraph& c_stage, const StageGraph& d_stage,
                                           const NestingRelation& rel) {
    Joint J{c_stage, d_stage, {}, {}, {}};
    const std::size_t n = J.size();
    const std::size_t nc = c_stage.nodes.size();
    J.contains.resize(n);
    J.contained.resize(n);
    J.linked.resize(n);

    for (std::size_t i = 0; i < rel.pairs.size(); ++i) {
        const NestingPair& p = rel.pairs[i];
        const std::string here = "/pairs/" + std::to_string(i);
        const auto ci = c_stage.find(p.c);
        if (!ci) throw DocumentError(DocumentError::Kind::semantic, here + "/0", "unknown c node '" + p.c + "'");
        const auto di = d_stage.find(p.d);
        if (!di) throw DocumentError(DocumentError::Kind::semantic, here + "/1", "unknown d node '" + p.d + "'");
        const std::size_t cj = *ci, dj = nc + *di;
        const auto [outer, inner] = p.tag == NestingTag::c_in_d ? std::pair{dj, cj} : std::pair{cj, dj};
        if (std::ranges::find(J.contains[outer], inner) != J.contains[outer].end()) continue;
        J.contains[outer].push_back(inner);
        J.contained[inner].push_back(outer);
    }
    for (auto& v : J.contains) std::ranges::sort(v);
    for (auto& v : J.contained) std::ranges::sort(v);
    for (const auto& [g, offset] : {std::pair{&c_stage, std::size_t{0}}, std::pair{&d_stage, nc}}) {
        const auto links = g->linked_neighbors();
        for (std::size_t i = 0; i < links.size(); ++i) {
            for (std::size_t j : links[i]) J.linked[offset + i].push_back(offset + j);
        }
    }

    // Preconditions: clause (1) locally on both stages, and a geometrically
    // possible nesting (components of one stage are pairwise disjoint).
    for (std::size_t j = 0; j < n; ++j) {
        if (J.linked[j].size() != 2) {
            return violation('p', "adm(1)",
                             {"precondition: " + J.label(j) + " is linked with " +
                              std::to_string(J.linked[j].size()) + " components, exactly two required"});
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (J.contained[j].size() > 1) {
            return violation('p', "nesting", {"inconsistent relation: " + J.label(j) + " lies inside both " +
                                                  J.label(J.contained[j][0]) + " and " + J.label(J.contained[j][1]) +
                                                  ", which are disjoint"});
        }
        if (!J.contained[j].empty() && !J.contains[j].empty()) {
            return violation('p', "nesting", {"inconsistent relation: " + J.label(j) + " lies inside " +
                                                  J.label(J.contained[j][0]) + " and contains " +
                                                  J.label(J.contains[j][0]) + ", nesting two disjoint components"});
        }
    }

    std::vector<std::string> log;

    // (a) every component meets the other family.
    for (std::size_t j = 0; j < n; ++j) {
        if (J.partners(j).empty()) {
            return violation('a', "defseq(2)",
                             {"rule (a): " + J.label(j) + " is disjoint from every component of the other stage",
                              "every component of a stage meets the intersection, so it must meet the other stage"});
        }
    }
    log.push_back("rule (a): every component is related to a component of the other stage");

    // (b) no inner component is null-homotopic in its container.
    for (std::size_t outer = 0; outer < n; ++outer) {
        for (std::size_t inner : J.contains[outer]) {
            if (J.node(inner).winding == 0) {
                return violation('b', "adm(2)",
                                 {"rule (b): " + J.label(inner) + " inside " + J.label(outer) + " has winding 0",
                                  "a null-homotopic component forces all siblings into one component, so no part "
                                  "of the intersection lies in the other components, contradicting adm(1)"});
            }
        }
    }
    log.push_back("rule (b): every inner component has nonzero winding");

    // (c) no component contains two components of the other family. d first,
    // then c, each in index order.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = (k + nc) % n;
        if (J.contains[j].size() >= 2) return chain_walk(J, j, J.contains[j][0], J.contains[j][1]);
    }
    log.push_back("rule (c): no component contains two components of the other stage");

    // (d) every node has exactly one partner.
    BijectionCertificate cert;
    for (std::size_t ci = 0; ci < nc; ++ci) {
        const auto p = J.partners(ci);
        if (p.size() != 1) {
            return violation('d', "adm(1)", {"rule (d): " + J.label(ci) + " has " + std::to_string(p.size()) +
                                                 " partners"});
        }
        cert.matching.emplace_back(c_stage.nodes[ci].id, J.node(p.front()).id);
        log.push_back("rule (d): " + J.label(ci) + " <-> " + J.label(p.front()));
    }
    if (c_stage.nodes.size() != d_stage.nodes.size()) {
        return violation('d', "adm(1)", {"rule (d): stage sizes differ (" + std::to_string(c_stage.nodes.size()) +
                                             " vs " + std::to_string(d_stage.nodes.size()) + ")"});
    }
    std::ranges::sort(cert.matching);
    cert.log = std::move(log);
    return cert;
}

}  // namespace defseq
