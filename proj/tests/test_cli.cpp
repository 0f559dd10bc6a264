#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "defseq/io.hpp"
#include "support.hpp"

using namespace defseq;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("generate and check") {
    const auto dir = testsupport::scratch_dir("cli");
    const std::string a = (dir / "a.json").string();
    REQUIRE(run({"generate", "antoine", "--k", "4", "-o", a}).code == 0);
    const Run chk = run({"check", a, "--depth", "4"});
    CHECK(chk.code == 0);
    CHECK(chk.json()["overall"] == true);
    CHECK(chk.json()["conditions"]["1"]["status"] == "Satisfied");

    const std::string three = (dir / "three.json").string();
    const Run gen3 = run({"generate", "antoine", "--k", "3", "-o", three});
    CHECK(gen3.code == 0);
    CHECK_FALSE(gen3.json()["warning"].is_null());
    CHECK(run({"check", three}).code == 1);
}

TEST_CASE("compare") {
    const auto dir = testsupport::scratch_dir("cli");
    const std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    run({"generate", "from-target", "--l", "pre:0,1;per:0", "-o", a});
    run({"generate", "from-target", "--l", "pre:0,0,1;per:0", "-o", b});
    const Run same = run({"compare", a, a});
    CHECK(same.code == 0);
    CHECK(same.json()["verdict"] == "Unknown");
    const Run diff = run({"compare", a, b});
    CHECK(diff.code == 3);
    CHECK(diff.json()["verdict"] == "DistinctByNu");
    CHECK(diff.json()["witness"] == 1);
}

TEST_CASE("invariants of a generated target") {
    const auto dir = testsupport::scratch_dir("cli");
    const std::string t = (dir / "t.json").string();
    REQUIRE(run({"generate", "from-target", "--l", "pre:0;per:1,0", "-o", t}).code == 0);
    const Run inv = run({"invariants", t, "--terms", "12"});
    REQUIRE(inv.code == 0);
    const Json j = inv.json();
    CHECK(j["nu_terms"] == Json::array({0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}));
    CHECK(j["L_status"] == "admissible");
    CHECK(j["counts"]["terms"][2] == 20);

    const std::string w = (dir / "w.json").string();
    run({"generate", "whitehead", "-o", w});
    CHECK(run({"invariants", w}).json()["L_status"] == "raw L, invariance not asserted");
}

TEST_CASE("bijection") {
    const auto dir = testsupport::scratch_dir("cli");
    const std::string a = (dir / "a.json").string();
    run({"generate", "antoine", "--k", "4", "-o", a});
    const std::string stage1 = (dir / "s1.json").string();
    const Run st = run({"stage", a, "--m", "1"});
    REQUIRE(st.code == 0);
    write_text_file(stage1, st.out);
    const std::string rel = (dir / "rel.json").string();
    write_text_file(rel, R"({"stage": 1, "pairs": [["r.0", "r.0", "c_in_d"], ["r.1", "r.1", "c_in_d"],
                                                 ["r.2", "r.2", "d_in_c"], ["r.3", "r.3", "c_in_d"]]})");
    const Run ok = run({"bijection", stage1, stage1, rel});
    CHECK(ok.code == 0);
    CHECK(ok.json()["result"] == "certificate");
    write_text_file(rel, R"({"stage": 1, "pairs": [["r.0", "r.0", "c_in_d"], ["r.1", "r.0", "c_in_d"],
                                                 ["r.2", "r.1", "d_in_c"], ["r.2", "r.2", "d_in_c"],
                                                 ["r.3", "r.3", "c_in_d"]]})");
    const Run bad = run({"bijection", stage1, stage1, rel});
    CHECK(bad.code == 1);
    CHECK(bad.json()["rule"] == "c");
}

TEST_CASE("geom") {
    const auto dir = testsupport::scratch_dir("cli");
    const std::string a = (dir / "a.json").string(), obj = (dir / "a.obj").string(),
                      pl = (dir / "p.json").string();
    run({"generate", "antoine", "--k", "4", "-o", a});
    const Run g = run({"geom", a, "--depth", "2", "--certify", "--obj", obj, "--placements", pl});
    CHECK(g.code == 0);
    CHECK(g.json()["tori"] == 21);
    CHECK(g.json()["certification"]["passed"] == true);
    CHECK(run({"certify", pl}).code == 0);
    const Run overlap = run({"geom", a, "--depth", "2", "--shrink", "0.9"});
    CHECK(overlap.code == 1);
    CHECK(overlap.json()["offending_pair"] == Json::array({"r.0", "r.1"}));
}

TEST_CASE("union") {
    const auto dir = testsupport::scratch_dir("cli");
    const std::string a = (dir / "a.json").string(), u = (dir / "u.json").string();
    run({"generate", "antoine", "--k", "4", "-o", a});
    REQUIRE(run({"union", a, a, "-o", u}).code == 0);
    CHECK(run({"invariants", u, "--terms", "3"}).json()["counts"]["terms"] == Json::array({2, 8, 32}));
}

TEST_CASE("error classes map to exit codes") {
    const auto dir = testsupport::scratch_dir("cli");
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"check"}).code == 2);
    CHECK(run({"generate", "antoine", "--k", "2", "-o", (dir / "x.json").string()}).code == 2);
    CHECK(run({"generate", "from-target", "--l", "pre:1;per:0", "-o", (dir / "x.json").string()}).code == 2);
    CHECK(run({"check", (dir / "missing.json").string()}).code == 5);
    const std::string broken = (dir / "broken.json").string();
    write_text_file(broken, "{\"roots\": 3}");
    const Run bad = run({"check", broken});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("schema violation at /root") != std::string::npos);
    const std::string a = (dir / "a.json").string();
    run({"generate", "antoine", "--k", "4", "-o", a});
    ::setenv("DEFSEQ_NODE_CAP", "100", 1);
    CHECK(run({"check", a, "--depth", "4"}).code == 4);
    ::unsetenv("DEFSEQ_NODE_CAP");
    CHECK(run({"generate", "bing", "-o", (dir / "nodir" / "b.json").string()}).code == 5);
}
