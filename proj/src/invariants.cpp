#include "defseq/invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace defseq {

namespace {

std::vector<LaneRecurrence> lane_recurrences(const PatternSystem& s) {
    std::vector<LaneRecurrence> out(s.lanes.size());
    for (const RootSpec& r : s.roots) ++out[r.lane].initial;
    auto step = [&](const StageRule& rule) {
        const auto spine = static_cast<std::int64_t>(s.patterns.at(rule.spine).children.size());
        const auto other = static_cast<std::int64_t>(s.patterns.at(rule.other).children.size());
        return AffineStep{static_cast<std::uint64_t>(other), spine - other};
    };
    for (std::size_t lane = 0; lane < s.lanes.size(); ++lane) {
        for (const StageRule& r : s.lanes[lane].preperiod) out[lane].preperiod.push_back(step(r));
        for (const StageRule& r : s.lanes[lane].period) out[lane].period.push_back(step(r));
    }
    return out;
}

std::size_t recurrence_start(const PatternSystem& s) {
    std::size_t pre = 0;
    for (const Assignment& a : s.lanes) pre = std::max(pre, a.preperiod.size());
    return pre + 1;
}

std::size_t period_lcm(const PatternSystem& s) {
    std::size_t per = 1;
    for (const Assignment& a : s.lanes) per = std::lcm(per, a.period.size());
    return per;
}

// Linking parity of one lane at stages m >= 1; index 0 of the result is 0.
Z2Seq lane_linking(const PatternSystem& s, std::size_t lane) {
    const Assignment& a = s.lanes[lane];
    const std::size_t roots = static_cast<std::size_t>(
        std::ranges::count_if(s.roots, [&](const RootSpec& r) { return r.lane == lane; }));
    auto parity = [](std::size_t v) { return static_cast<std::uint8_t>(v & 1U); };

    std::vector<std::uint8_t> values{0};  // stage 0 is accounted for separately
    std::map<std::pair<std::size_t, std::uint8_t>, std::size_t> seen;
    std::uint8_t count_parity = parity(roots);
    for (std::size_t m = 1;; ++m) {
        if (m - 1 >= a.preperiod.size()) {
            const std::size_t phase = (m - 1 - a.preperiod.size()) % a.period.size();
            const auto [it, fresh] = seen.emplace(std::pair{phase, count_parity}, m);
            if (!fresh) {
                const std::size_t start = it->second;
                std::vector<std::uint8_t> pre(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(start));
                std::vector<std::uint8_t> per(values.begin() + static_cast<std::ptrdiff_t>(start), values.end());
                return Z2Seq(std::move(pre), std::move(per)).canonical();
            }
        }
        const StageRule& rule = a.rule_for_stage(m);
        const Pattern& spine = s.patterns.at(rule.spine);
        const Pattern& other = s.patterns.at(rule.other);
        // (count - 1) non-spine parents; parity of count - 1 is count_parity ^ 1.
        const std::uint8_t others = count_parity ^ 1U;
        values.push_back(parity(spine.linked_children()) ^ (others & parity(other.linked_children())));
        count_parity = parity(spine.children.size()) ^ (others & parity(other.children.size()));
    }
}

std::string unique_name(const std::string& base, auto&& taken) {
    for (std::size_t n = 2;; ++n) {
        std::string candidate = base + "_" + std::to_string(n);
        if (!taken(candidate)) return candidate;
    }
}

}  // namespace

const AffineStep& LaneRecurrence::step_for_stage(std::size_t m) const {
    const std::size_t i = m - 1;
    if (i < preperiod.size()) return preperiod[i];
    return period[(i - preperiod.size()) % period.size()];
}

Count CountDescriptor::at(std::size_t m) const {
    if (m < prefix.size()) return prefix[m];
    Count total = 0;
    for (const LaneRecurrence& lane : lanes) {
        Count c = lane.initial;
        for (std::size_t i = 1; i <= m; ++i) {
            const AffineStep& st = lane.step_for_stage(i);
            c = c * st.multiplier + st.additive;
        }
        total += c;
    }
    return total;
}

std::vector<Count> CountDescriptor::terms(std::size_t n) const {
    std::vector<Count> out(n, Count(0));
    for (const LaneRecurrence& lane : lanes) {
        Count c = lane.initial;
        for (std::size_t m = 0; m < n; ++m) {
            if (m > 0) {
                const AffineStep& st = lane.step_for_stage(m);
                c = c * st.multiplier + st.additive;
            }
            out[m] += c;
        }
    }
    return out;
}

CountDescriptor component_counts(const PatternSystem& s, std::size_t prefix_length) {
    CountDescriptor d;
    d.lanes = lane_recurrences(s);
    d.recurrence_from = recurrence_start(s);
    const std::size_t per = period_lcm(s);

    std::vector<std::uint64_t> mult(per);
    std::vector<std::int64_t> add(per, 0);
    bool uniform = true;
    for (std::size_t j = 0; j < per && uniform; ++j) {
        const std::size_t m = d.recurrence_from + j;
        mult[j] = d.lanes.front().step_for_stage(m).multiplier;
        for (const LaneRecurrence& lane : d.lanes) {
            const AffineStep& st = lane.step_for_stage(m);
            uniform = uniform && st.multiplier == mult[j];
            add[j] += st.additive;
        }
    }
    if (uniform) {
        d.multipliers = std::move(mult);
        d.additive_terms = std::move(add);
    }
    d.prefix = d.terms(std::max({prefix_length, std::size_t{12}, d.recurrence_from}));
    return d;
}

Z2Seq mod2_linking_sequence(const PatternSystem& s) {
    std::vector<bool> linked(s.roots.size(), false);
    for (const LinkEdge& e : s.root_edges) {
        if (e.lk != 0) linked[e.a] = linked[e.b] = true;
    }
    const auto root_parity = static_cast<std::uint8_t>(std::ranges::count(linked, true) & 1);
    Z2Seq result({root_parity}, {0});
    for (std::size_t lane = 0; lane < s.lanes.size(); ++lane) result = result ^ lane_linking(s, lane);
    return result.canonical();
}

Z2Seq nu(const FormalClass& c) {
    Z2Seq result = zero_z2();
    for (const PatternSystem& s : c.representatives) result = result ^ mod2_linking_sequence(s);
    return result;
}

std::vector<std::string> slice_warnings(const FormalClass& c) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < c.slice_certificates.size(); ++i) {
        const SliceCertificate& cert = c.slice_certificates[i];
        const Z2Seq l = mod2_linking_sequence(cert.system);
        if (const auto at = l.first_difference(zero_z2())) {
            out.push_back("slice certificate " + std::to_string(i) + " (" + cert.provenance +
                          ") has nonzero linking sequence at stage " + std::to_string(*at) +
                          "; the certificate is refuted");
        }
    }
    return out;
}

std::vector<Count> class_counts(const FormalClass& c, std::size_t n) {
    std::vector<Count> out(n, Count(0));
    for (const PatternSystem& s : c.representatives) {
        const auto t = component_counts(s, 0).terms(n);
        for (std::size_t i = 0; i < n; ++i) out[i] += t[i];
    }
    return out;
}

PatternSystem disjoint_union(const PatternSystem& a, const PatternSystem& b) {
    PatternSystem out = a;

    std::map<std::string, std::string> renamed;
    for (const auto& [name, pattern] : b.patterns) {
        const auto existing = out.patterns.find(name);
        if (existing == out.patterns.end()) {
            out.patterns.emplace(name, pattern);
            renamed[name] = name;
        } else if (existing->second == pattern) {
            renamed[name] = name;
        } else {
            const std::string fresh = unique_name(name, [&](const std::string& n) {
                return out.patterns.contains(n) || b.patterns.contains(n);
            });
            out.patterns.emplace(fresh, pattern);
            renamed[name] = fresh;
        }
    }

    const std::size_t lane_offset = out.lanes.size();
    for (const Assignment& lane : b.lanes) {
        Assignment copy = lane;
        for (auto* rules : {&copy.preperiod, &copy.period}) {
            for (StageRule& r : *rules) {
                r.spine = renamed.at(r.spine);
                r.other = renamed.at(r.other);
            }
        }
        out.lanes.push_back(std::move(copy));
    }

    const std::size_t root_offset = out.roots.size();
    for (const RootSpec& r : b.roots) {
        RootSpec copy = r;
        copy.lane += lane_offset;
        auto taken = [&](const std::string& id) {
            return std::ranges::any_of(out.roots, [&](const RootSpec& x) { return x.id == id; }) ||
                   std::ranges::any_of(b.roots, [&](const RootSpec& x) { return x.id == id; });
        };
        if (std::ranges::any_of(out.roots, [&](const RootSpec& x) { return x.id == r.id; })) {
            copy.id = unique_name(r.id, taken);
        }
        out.roots.push_back(std::move(copy));
    }
    for (const LinkEdge& e : b.root_edges) {
        out.root_edges.push_back({e.a + root_offset, e.b + root_offset, e.lk, e.split});
    }
    return out;
}

std::string to_string(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::distinct_by_nu: return "DistinctByNu";
        case Verdict::Kind::distinct_by_counts: return "DistinctByCounts";
        case Verdict::Kind::unknown: return "Unknown";
    }
    return "Unknown";
}

Verdict distinguish(const FormalClass& a, const FormalClass& b) {
    if (const auto at = nu(a).first_difference(nu(b))) return {Verdict::Kind::distinct_by_nu, at};

    std::size_t start = 1, per = 1;
    for (const FormalClass* c : {&a, &b}) {
        for (const PatternSystem& s : c->representatives) {
            start = std::max(start, recurrence_start(s));
            per = std::lcm(per, period_lcm(s));
        }
    }
    const std::size_t window = std::max<std::size_t>(12, start + per);
    const auto ca = class_counts(a, window);
    const auto cb = class_counts(b, window);
    for (std::size_t i = 0; i < window; ++i) {
        if (ca[i] != cb[i]) return {Verdict::Kind::distinct_by_counts, i};
    }
    return {Verdict::Kind::unknown, std::nullopt};
}

}  // namespace defseq
