#include <doctest.h>

#include <cstdlib>

#include "defseq/io.hpp"
#include "support.hpp"

using namespace defseq;

namespace {

std::string fixture(const std::string& name) { return read_text_file(std::string(DEFSEQ_FIXTURES) + "/" + name); }

const char* minimal = R"({
  "roots": [{"id": "r", "knot": "unknot", "spine": true}],
  "root_edges": [],
  "patterns": {"p": {"children": [{"winding": 1, "knot": "unknot"}], "edges": [], "arrangement": "custom",
                     "spine_child": 0}},
  "assignment": {"preperiod": [], "period": [{"spine": "p", "other": "p"}]}
})";

DocumentError parse_error(const std::string& text) {
    try {
        parse_system(text);
    } catch (const DocumentError& e) {
        return e;
    }
    FAIL("expected a DocumentError");
    return DocumentError(DocumentError::Kind::schema, "", "");
}

std::string edit(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("chain-4 stage sizes match direct enumeration") {
    const PatternSystem s = antoine_chain(4).system;
    const auto stages = expand(s, 3);
    const auto oracle = testsupport::enumerate_sizes(s, 3);
    REQUIRE(stages.size() == 4);
    for (std::size_t m = 0; m <= 3; ++m) CHECK(stages[m].nodes.size() == oracle[m]);
    CHECK(oracle == std::vector<std::size_t>{1, 4, 16, 64});
    CHECK(stage_sizes(s, 3) == oracle);
}

TEST_CASE("mixed systems: stage sizes and ids") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const PatternSystem s = disjoint_union(testsupport::random_system(rng), testsupport::random_system(rng));
        const auto stages = expand(s, 4);
        const auto oracle = testsupport::enumerate_sizes(s, 4);
        for (std::size_t m = 0; m <= 4; ++m) {
            REQUIRE(stages[m].nodes.size() == oracle[m]);
            std::set<std::string> ids;
            for (const TorusNode& n : stages[m].nodes) {
                ids.insert(n.id);
                CHECK(static_cast<std::size_t>(std::count(n.id.begin(), n.id.end(), '.')) == m);
                if (m > 0) CHECK(n.id.rfind(*n.parent + ".", 0) == 0);
            }
            CHECK(ids.size() == oracle[m]);
        }
    }
}

TEST_CASE("expansion links only siblings and marks one spine per lane") {
    const auto stages = expand(antoine_chain(5).system, 3);
    for (const StageGraph& g : stages) {
        for (const LinkEdge& e : g.edges) CHECK(g.nodes[e.a].parent == g.nodes[e.b].parent);
        CHECK(std::count_if(g.nodes.begin(), g.nodes.end(), [](const TorusNode& n) { return n.spine; }) == 1);
    }
    CHECK(stages[2].find("r.0.0"));
    CHECK(stages[2].nodes[*stages[2].find("r.0.0")].spine);
    CHECK_FALSE(stages[2].nodes[*stages[2].find("r.1.0")].spine);
}

TEST_CASE("expansion is deterministic") {
    const PatternSystem s = antoine_from_target(parse_target_spec("pre:0,1;per:1,0,0"));
    CHECK(expand(s, 4) == expand(s, 4));
    CHECK(to_json(stage(s, 3)).dump() == to_json(stage(s, 3)).dump());
}

TEST_CASE("node cap") {
    const PatternSystem s = antoine_chain(4).system;
    CHECK_THROWS_AS(expand(s, 10, {1000}), ResourceError);
    CHECK_NOTHROW(expand(s, 4, {341}));
    CHECK_THROWS_AS(expand(s, 4, {340}), ResourceError);
    ::setenv("DEFSEQ_NODE_CAP", "50", 1);
    CHECK(expand_options_from_env().node_cap == 50);
    ::unsetenv("DEFSEQ_NODE_CAP");
    CHECK(expand_options_from_env().node_cap == 1'000'000);
}

TEST_CASE("system JSON round trip") {
    for (const PatternSystem& s : {antoine_chain(4).system, bing_system(), whitehead_system(),
                                   antoine_from_target(parse_target_spec("pre:0;per:1"))}) {
        CHECK(parse_system(to_json(s).dump()) == s);
    }
    const PatternSystem u = disjoint_union(antoine_chain(4).system, bing_system());
    CHECK(parse_system(to_json(u).dump()) == u);
}

TEST_CASE("fixtures match the generators") {
    CHECK(parse_system(fixture("antoine_4.json")) == antoine_chain(4).system);
    CHECK(parse_system(fixture("bing.json")) == bing_system());
    CHECK(parse_system(fixture("whitehead.json")) == whitehead_system());
}

TEST_CASE("schema errors carry a path") {
    CHECK(parse_system(minimal).roots.size() == 1);
    CHECK(parse_error("{").kind() == DocumentError::Kind::schema);
    CHECK(parse_error(edit(minimal, R"("root_edges": [],)", R"("root_edges": [], "colour": 1,)")).path() == "/colour");
    CHECK(parse_error(edit(minimal, R"("winding": 1)", R"("winding": "one")")).path() ==
          "/patterns/p/children/0/winding");
    CHECK(parse_error(edit(minimal, R"("root_edges": [],)", "")).path() == "/root_edges");
}

TEST_CASE("semantic errors") {
    const auto unknown = parse_error(edit(minimal, R"("other": "p")", R"("other": "q")"));
    CHECK(unknown.kind() == DocumentError::Kind::semantic);
    CHECK(unknown.path() == "/assignment/period/0/other");
    CHECK(parse_error(edit(minimal, R"("spine": true)", R"("spine": false)")).path() == "/roots");
    CHECK(parse_error(edit(minimal, R"("id": "r")", R"("id": "r.x")")).path() == "/roots/0/id");
    CHECK(parse_error(edit(minimal, R"("period": [{"spine": "p", "other": "p"}])", R"("period": [])")).path() ==
          "/assignment/period");
    // chain arrangement with too few children
    const auto chain = parse_error(edit(minimal, R"("arrangement": "custom")", R"("arrangement": "chain")"));
    CHECK(chain.path() == "/patterns/p");
}

TEST_CASE("split pairs cannot carry linking") {
    Pattern p = chain_pattern(4);
    p.edges[0].split = true;
    CHECK_THROWS_AS(validate(p, "/patterns/x"), DocumentError);
}

TEST_CASE("stage graph JSON round trip") {
    const StageGraph g = stage(antoine_chain(4).system, 2);
    const StageGraph back = parse_stage_graph(to_json(g).dump());
    CHECK(back.nodes.size() == g.nodes.size());
    CHECK(back.edges == g.edges);
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        CHECK(back.nodes[i].id == g.nodes[i].id);
        CHECK(back.nodes[i].parent == g.nodes[i].parent);
        CHECK(back.nodes[i].winding == g.nodes[i].winding);
    }
}
