#include "defseq/generators.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>

namespace defseq {

namespace {

constexpr const char* root_id = "r";

PatternSystem single_root_system(std::map<std::string, Pattern> patterns, Assignment assignment) {
    PatternSystem s;
    s.roots.push_back({root_id, "unknot", true, 0});
    s.patterns = std::move(patterns);
    s.lanes.push_back(std::move(assignment));
    validate(s);
    return s;
}

std::vector<std::uint8_t> parse_bits(std::string_view text, std::string_view what) {
    std::vector<std::uint8_t> out;
    if (text.empty()) return out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        const std::string_view item = text.substr(start, comma - start);
        if (item == "0") {
            out.push_back(0);
        } else if (item == "1") {
            out.push_back(1);
        } else {
            throw std::invalid_argument("bad " + std::string(what) + " entry '" + std::string(item) +
                                        "' (expected 0 or 1)");
        }
        start = comma + 1;
    }
    return out;
}

}  // namespace

Pattern chain_pattern(std::size_t k, std::optional<std::size_t> spine_child) {
    Pattern p;
    p.children.assign(k, ChildSlot{1, "unknot"});
    for (std::size_t i = 0; i < k; ++i) {
        p.edges.push_back({i, (i + 1) % k, i % 2 == 0 ? 1L : -1L, false});
    }
    p.arrangement = Arrangement::chain;
    p.spine_child = spine_child;
    return p;
}

GeneratedSystem antoine_chain(std::size_t k) {
    if (k < 3) throw std::invalid_argument("an Antoine chain needs at least 3 components");
    const std::string name = "chain" + std::to_string(k);
    GeneratedSystem out{single_root_system({{name, chain_pattern(k)}}, Assignment{{}, {{name, name}}}),
                        std::nullopt};
    if (k < 4) out.warning = "chain of " + std::to_string(k) + " components is not admissible (fewer than four)";
    return out;
}

PatternSystem antoine_from_target(const Z2Seq& target) {
    const Z2Seq l = target.canonical();
    if (l[0] != 0) throw std::invalid_argument("target must start with 0 (a single unlinked root)");

    // Rules govern stages 1, 2, ...: drop index 0 of the target.
    std::vector<std::uint8_t> pre = l.preperiod();
    std::vector<std::uint8_t> per = l.period();
    if (!pre.empty()) {
        pre.erase(pre.begin());
    } else {
        std::rotate(per.begin(), per.begin() + 1, per.end());
    }

    auto rule = [](std::uint8_t bit) { return StageRule{bit ? "chain5" : "chain4", "chain4"}; };
    Assignment a;
    std::ranges::transform(pre, std::back_inserter(a.preperiod), rule);
    std::ranges::transform(per, std::back_inserter(a.period), rule);

    std::map<std::string, Pattern> patterns{{"chain4", chain_pattern(4)}};
    const auto one = [](std::uint8_t b) { return b == 1; };
    if (std::ranges::any_of(pre, one) || std::ranges::any_of(per, one)) patterns.emplace("chain5", chain_pattern(5));
    return single_root_system(std::move(patterns), std::move(a));
}

PatternSystem bing_system() {
    Pattern p;
    p.children.assign(2, ChildSlot{0, "unknot"});
    p.edges.push_back({0, 1, 0, false});
    p.arrangement = Arrangement::custom;
    p.spine_child = 0;
    return single_root_system({{"bing", p}}, Assignment{{}, {{"bing", "bing"}}});
}

PatternSystem whitehead_system() {
    Pattern p;
    p.children.assign(1, ChildSlot{0, "unknot"});
    p.arrangement = Arrangement::custom;
    p.spine_child = 0;
    return single_root_system({{"whitehead", p}}, Assignment{{}, {{"whitehead", "whitehead"}}});
}

SliceCertificate bing_certificate() {
    return {bing_system(), "Bing decomposition: slice, since the Bing double of the unknot is slice"};
}

SliceCertificate whitehead_certificate() {
    return {whitehead_system(), "Whitehead decomposition: slice (Freedman)"};
}

Z2Seq parse_target_spec(std::string_view spec) {
    std::vector<std::uint8_t> pre, per;
    bool have_period = false;
    std::size_t start = 0;
    while (start < spec.size()) {
        const std::size_t semi = std::min(spec.find(';', start), spec.size());
        const std::string_view part = spec.substr(start, semi - start);
        if (part.starts_with("pre:")) {
            pre = parse_bits(part.substr(4), "preperiod");
        } else if (part.starts_with("per:")) {
            per = parse_bits(part.substr(4), "period");
            have_period = true;
        } else if (!part.empty()) {
            throw std::invalid_argument("unrecognized sequence part '" + std::string(part) +
                                        "' (expected pre:... or per:...)");
        }
        start = semi + 1;
    }
    if (!have_period || per.empty()) throw std::invalid_argument("sequence spec needs a nonempty per: part");
    return make_z2(std::move(pre), std::move(per));
}

}  // namespace defseq
