#pragma once

// Helpers shared by the unit tests and the acceptance binary: random
// instance generators and brute-force oracles that do not reuse library
// algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "defseq/admissibility.hpp"
#include "defseq/core.hpp"
#include "defseq/epseq.hpp"
#include "defseq/generators.hpp"
#include "defseq/geometry.hpp"

namespace testsupport {

using namespace defseq;

/// Random eventually periodic target with l_0 = 0, preperiod <= 4, period <= 6.
inline Z2Seq random_target(std::mt19937& rng) {
    std::uniform_int_distribution<int> bit(0, 1), pre_len(0, 4), per_len(1, 6);
    std::vector<std::uint8_t> pre(static_cast<std::size_t>(pre_len(rng))), per(static_cast<std::size_t>(per_len(rng)));
    for (auto& b : pre) b = static_cast<std::uint8_t>(bit(rng));
    for (auto& b : per) b = static_cast<std::uint8_t>(bit(rng));
    (pre.empty() ? per : pre)[0] = 0;
    return make_z2(pre, per);
}

/// Random system from the generators: from-target, Antoine chains, Bing, Whitehead.
inline PatternSystem random_system(std::mt19937& rng) {
    switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: return antoine_chain(std::uniform_int_distribution<std::size_t>(4, 7)(rng)).system;
        case 1: return bing_system();
        case 2: return whitehead_system();
        default: return antoine_from_target(random_target(rng));
    }
}

/// Stage-by-stage node count by walking every node's rule directly.
inline std::vector<std::size_t> enumerate_sizes(const PatternSystem& s, std::size_t depth) {
    struct Item {
        std::size_t lane;
        bool spine;
    };
    std::vector<Item> current;
    for (const RootSpec& r : s.roots) current.push_back({r.lane, r.spine});
    std::vector<std::size_t> sizes{current.size()};
    for (std::size_t m = 1; m <= depth; ++m) {
        std::vector<Item> next;
        for (const Item& it : current) {
            const Assignment& a = s.lanes[it.lane];
            const std::size_t i = m - 1;
            const StageRule& rule = i < a.preperiod.size() ? a.preperiod[i]
                                                           : a.period[(i - a.preperiod.size()) % a.period.size()];
            const Pattern& p = s.patterns.at(it.spine ? rule.spine : rule.other);
            for (std::size_t c = 0; c < p.children.size(); ++c) {
                next.push_back({it.lane, it.spine && p.spine_child == c});
            }
        }
        sizes.push_back(next.size());
        current = std::move(next);
    }
    return sizes;
}

/// Parity of the number of nodes with an lk != 0 edge, read off an expanded stage.
inline std::uint8_t linked_parity(const StageGraph& g) {
    std::set<std::size_t> linked;
    for (const LinkEdge& e : g.edges) {
        if (e.lk != 0) {
            linked.insert(e.a);
            linked.insert(e.b);
        }
    }
    return static_cast<std::uint8_t>(linked.size() % 2);
}

/// Chain stage: one parent "p" holding a cyclic chain of n children.
inline StageGraph chain_stage(const std::string& prefix, std::size_t n, const std::vector<int>& windings = {}) {
    StageGraph g;
    g.stage = 1;
    for (std::size_t i = 0; i < n; ++i) {
        TorusNode t;
        t.id = prefix + "." + std::to_string(i);
        t.parent = prefix;
        t.parent_index = 0;
        t.stage = 1;
        t.winding = windings.empty() ? 1 : windings[i];
        g.nodes.push_back(t);
        g.edges.push_back({i, (i + 1) % n, i % 2 == 0 ? 1L : -1L, false});
    }
    return g;
}

struct MatchingOracle {
    std::size_t count = 0;                                      // perfect matchings consistent with rel
    std::vector<std::pair<std::string, std::string>> unique;    // the matching when count == 1
};

/**
 * Tries every bijection f from the c nodes to the d nodes. f is consistent
 * with the relation when the relation holds exactly the pairs (c, f(c)), each
 * listed once and in one direction only, and every inner component of a
 * pair has nonzero winding.
 */
inline MatchingOracle brute_force_matchings(const StageGraph& c, const StageGraph& d, const NestingRelation& rel) {
    MatchingOracle out;
    if (c.nodes.size() != d.nodes.size()) return out;
    std::map<std::pair<std::string, std::string>, std::set<NestingTag>> related;
    for (const NestingPair& p : rel.pairs) related[{p.c, p.d}].insert(p.tag);
    auto winding = [](const StageGraph& g, const std::string& id) { return g.nodes[*g.find(id)].winding; };
    for (const auto& [pair, tags] : related) {
        if (tags.size() != 1) return out;
        const int w = *tags.begin() == NestingTag::c_in_d ? winding(c, pair.first) : winding(d, pair.second);
        if (w == 0) return out;
    }
    std::vector<std::size_t> perm(d.nodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::set<std::pair<std::string, std::string>> matching;
        for (std::size_t i = 0; i < perm.size(); ++i) matching.insert({c.nodes[i].id, d.nodes[perm[i]].id});
        bool same = matching.size() == related.size();
        for (const auto& [pair, tags] : related) same = same && matching.count(pair) == 1;
        if (same) {
            ++out.count;
            out.unique.assign(matching.begin(), matching.end());
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (out.count != 1) out.unique.clear();
    return out;
}

struct BijectionInstance {
    StageGraph c, d;
    NestingRelation rel;
};

/// Random admissible pair with at most 6 nodes per side: a random matching,
/// sometimes perturbed (extra pair, missing pair, size mismatch, zero winding).
inline BijectionInstance random_bijection_instance(std::mt19937& rng) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    const std::size_t nc = pick(4, 6);
    const int mutation = static_cast<int>(pick(0, 5));
    const std::size_t nd = mutation == 3 ? (nc == 6 ? 5 : nc + 1) : nc;
    std::vector<int> wc(nc, 1), wd(nd, 1);
    for (auto& w : wc) w = pick(0, 1) ? 1 : -1;
    for (auto& w : wd) w = pick(0, 1) ? 1 : 2;
    BijectionInstance inst{chain_stage("c", nc, wc), chain_stage("d", nd, wd), {1, {}}};

    std::vector<std::size_t> perm(nd);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < std::min(nc, nd); ++i) {
        inst.rel.pairs.push_back({inst.c.nodes[i].id, inst.d.nodes[perm[i]].id,
                                  pick(0, 1) ? NestingTag::c_in_d : NestingTag::d_in_c});
    }
    switch (mutation) {
        case 1: {  // extra pair
            inst.rel.pairs.push_back({inst.c.nodes[pick(0, nc - 1)].id, inst.d.nodes[pick(0, nd - 1)].id,
                                      pick(0, 1) ? NestingTag::c_in_d : NestingTag::d_in_c});
            break;
        }
        case 2:  // missing pair
            inst.rel.pairs.erase(inst.rel.pairs.begin() + static_cast<long>(pick(0, inst.rel.pairs.size() - 1)));
            break;
        case 4: {  // inner component of some pair has winding 0
            const NestingPair& p = inst.rel.pairs[pick(0, inst.rel.pairs.size() - 1)];
            if (p.tag == NestingTag::c_in_d) {
                inst.c.nodes[*inst.c.find(p.c)].winding = 0;
            } else {
                inst.d.nodes[*inst.d.find(p.d)].winding = 0;
            }
            break;
        }
        default: break;
    }
    std::shuffle(inst.rel.pairs.begin(), inst.rel.pairs.end(), rng);
    return inst;
}

/// Midpoint-rule Gauss double sum over n samples per curve.
template <typename F, typename G>
double midpoint_gauss(F&& a, G&& b, std::size_t n) {
    using V = Vec3<double>;
    double total = 0;
    const double h = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = (static_cast<double>(i) + 0.5) * h;
        const V pa = a(s), da = (a(s + h / 2) - a(s - h / 2));
        for (std::size_t j = 0; j < n; ++j) {
            const double t = (static_cast<double>(j) + 0.5) * h;
            const V pb = b(t), db = (b(t + h / 2) - b(t - h / 2));
            const V r = pa - pb;
            total += da.cross(db).dot(r) / std::pow(r.norm(), 3);
        }
    }
    return total / (4 * std::numbers::pi);
}

inline Polyline<double> circle(const Vec3<double>& center, const Vec3<double>& u, const Vec3<double>& v, double r,
                               std::size_t n) {
    Polyline<double> out;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        out.push_back(center + r * (std::cos(a) * u + std::sin(a) * v));
    }
    out.push_back(out.front());
    return out;
}

/// Unique scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    static std::mt19937_64 rng{std::random_device{}()};
    auto dir = std::filesystem::temp_directory_path() / ("defseq_" + name + "_" + std::to_string(rng()));
    std::filesystem::create_directories(dir);
    return dir;
}

/// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace testsupport
