#include <doctest.h>

#include "defseq/admissibility.hpp"
#include "defseq/io.hpp"
#include "support.hpp"

using namespace defseq;
using testsupport::chain_stage;

namespace {

NestingRelation identity(const StageGraph& c, const StageGraph& d) {
    NestingRelation rel{1, {}};
    for (std::size_t i = 0; i < c.nodes.size(); ++i) rel.pairs.push_back({c.nodes[i].id, d.nodes[i].id, NestingTag::c_in_d});
    return rel;
}

}  // namespace

TEST_CASE("identical chain-4 stages give the identity matching") {
    const StageGraph c = chain_stage("c", 4), d = chain_stage("d", 4);
    const BijectionResult r = verify_component_bijection(c, d, identity(c, d));
    REQUIRE(std::holds_alternative<BijectionCertificate>(r));
    const auto& cert = std::get<BijectionCertificate>(r);
    CHECK(cert.matching == std::vector<std::pair<std::string, std::string>>{
                               {"c.0", "d.0"}, {"c.1", "d.1"}, {"c.2", "d.2"}, {"c.3", "d.3"}});
    CHECK_FALSE(cert.log.empty());
}

TEST_CASE("a d-node containing two c-nodes is refuted by the chain walk") {
    const StageGraph c = chain_stage("c", 4), d = chain_stage("d", 4);
    // c.0 and c.1 inside d.0; d.1 and d.2 inside c.2; c.3 inside d.3
    const NestingRelation rel{1,
                              {{"c.0", "d.0", NestingTag::c_in_d},
                               {"c.1", "d.0", NestingTag::c_in_d},
                               {"c.2", "d.1", NestingTag::d_in_c},
                               {"c.2", "d.2", NestingTag::d_in_c},
                               {"c.3", "d.3", NestingTag::c_in_d}}};
    const BijectionResult r = verify_component_bijection(c, d, rel);
    REQUIRE(std::holds_alternative<BijectionViolation>(r));
    const auto& v = std::get<BijectionViolation>(r);
    CHECK(v.rule == 'c');
    CHECK(v.clause == "adm(1)");
    CHECK(v.trace.size() >= 3);
    CHECK(v.trace.front().find("d:d.0 contains both c:c.0 and c:c.1") != std::string::npos);
}

TEST_CASE("unrelated node triggers rule (a)") {
    const StageGraph c = chain_stage("c", 4), d = chain_stage("d", 4);
    NestingRelation rel = identity(c, d);
    rel.pairs.pop_back();
    const auto r = verify_component_bijection(c, d, rel);
    REQUIRE(std::holds_alternative<BijectionViolation>(r));
    CHECK(std::get<BijectionViolation>(r).rule == 'a');
}

TEST_CASE("null-homotopic inner node triggers rule (b)") {
    const StageGraph c = chain_stage("c", 4, {1, 0, 1, 1}), d = chain_stage("d", 4);
    const auto r = verify_component_bijection(c, d, identity(c, d));
    REQUIRE(std::holds_alternative<BijectionViolation>(r));
    CHECK(std::get<BijectionViolation>(r).rule == 'b');
    CHECK(std::get<BijectionViolation>(r).clause == "adm(2)");
}

TEST_CASE("stages violating clause 1 fail the precondition") {
    StageGraph c = chain_stage("c", 4);
    c.edges.push_back({0, 2, 1, false});
    const StageGraph d = chain_stage("d", 4);
    const auto r = verify_component_bijection(c, d, identity(c, d));
    REQUIRE(std::holds_alternative<BijectionViolation>(r));
    CHECK(std::get<BijectionViolation>(r).rule == 'p');
}

TEST_CASE("dangling references are document errors") {
    const StageGraph c = chain_stage("c", 4), d = chain_stage("d", 4);
    NestingRelation rel = identity(c, d);
    rel.pairs[2].d = "d.9";
    try {
        verify_component_bijection(c, d, rel);
        FAIL("expected DocumentError");
    } catch (const DocumentError& e) {
        CHECK(e.path() == "/pairs/2/1");
    }
}

TEST_CASE("unequal stage sizes never certify") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = testsupport::random_bijection_instance(rng);
        if (inst.c.nodes.size() != inst.d.nodes.size()) {
            CHECK(std::holds_alternative<BijectionViolation>(verify_component_bijection(inst.c, inst.d, inst.rel)));
        }
    }
}

TEST_CASE("agrees with the brute-force matching oracle") {
    std::mt19937 rng(23);
    std::size_t certified = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = testsupport::random_bijection_instance(rng);
        const auto oracle = testsupport::brute_force_matchings(inst.c, inst.d, inst.rel);
        const auto r = verify_component_bijection(inst.c, inst.d, inst.rel);
        const auto* cert = std::get_if<BijectionCertificate>(&r);
        CHECK((cert != nullptr) == (oracle.count > 0));
        if (cert && oracle.count == 1) {
            CHECK(cert->matching == oracle.unique);
            ++certified;
        }
    }
    CHECK(certified > 50);
}

TEST_CASE("nesting relation JSON") {
    const char* text = R"({"stage": 2, "pairs": [["c.0", "d.1", "c_in_d"], ["c.1", "d.0", "d_in_c"]]})";
    const NestingRelation rel = parse_nesting_relation(text);
    CHECK(rel.stage == 2);
    REQUIRE(rel.pairs.size() == 2);
    CHECK(rel.pairs[1].tag == NestingTag::d_in_c);
    CHECK(to_json(rel).dump() == Json::parse(text).dump());
    CHECK_THROWS_AS(parse_nesting_relation(R"({"stage": 2, "pairs": [["c.0", "d.1", "inside"]]})"), DocumentError);
}
