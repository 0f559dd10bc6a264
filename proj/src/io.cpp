#include "defseq/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace defseq {

namespace {

using Kind = DocumentError::Kind;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
    throw DocumentError(Kind::schema, path, msg);
}

Json parse_text(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        schema_error("", std::string("not valid JSON: ") + e.what());
    }
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) schema_error(path, "expected an object");
    for (const char* key : required) {
        if (!j.contains(key)) schema_error(path + "/" + key, "required field missing");
    }
    for (const auto& item : j.items()) {
        const bool known = std::ranges::any_of(required, [&](const char* k) { return item.key() == k; }) ||
                           std::ranges::any_of(optional, [&](const char* k) { return item.key() == k; });
        if (!known) schema_error(path + "/" + item.key(), "unknown field");
    }
}

const Json& expect_array(const Json& j, const std::string& path) {
    if (!j.is_array()) schema_error(path, "expected an array");
    return j;
}

std::string get_string(const Json& j, const std::string& path) {
    if (!j.is_string()) schema_error(path, "expected a string");
    return j.get<std::string>();
}

bool get_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) schema_error(path, "expected a boolean");
    return j.get<bool>();
}

long get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) schema_error(path, "expected an integer");
    return j.get<long>();
}

std::size_t get_index(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) schema_error(path, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

// [a, b, lk, split] with a, b resolved by `resolve`.
template <typename Resolve>
LinkEdge parse_edge(const Json& j, const std::string& path, Resolve&& resolve) {
    if (!j.is_array() || j.size() != 4) schema_error(path, "edge must be [a, b, lk, split]");
    return {resolve(j[0], at(path, 0)), resolve(j[1], at(path, 1)), get_int(j[2], at(path, 2)),
            get_bool(j[3], at(path, 3))};
}

StageRule parse_rule(const Json& j, const std::string& path) {
    expect_object(j, path, {"spine", "other"});
    return {get_string(j["spine"], path + "/spine"), get_string(j["other"], path + "/other")};
}

Assignment parse_assignment(const Json& j, const std::string& path) {
    expect_object(j, path, {"preperiod", "period"});
    Assignment a;
    const Json& pre = expect_array(j["preperiod"], path + "/preperiod");
    for (std::size_t i = 0; i < pre.size(); ++i) a.preperiod.push_back(parse_rule(pre[i], at(path + "/preperiod", i)));
    const Json& per = expect_array(j["period"], path + "/period");
    for (std::size_t i = 0; i < per.size(); ++i) a.period.push_back(parse_rule(per[i], at(path + "/period", i)));
    return a;
}

Pattern parse_pattern(const Json& j, const std::string& path) {
    expect_object(j, path, {"children", "edges", "arrangement", "spine_child"});
    Pattern p;
    const Json& children = expect_array(j["children"], path + "/children");
    for (std::size_t i = 0; i < children.size(); ++i) {
        const std::string here = at(path + "/children", i);
        expect_object(children[i], here, {"winding", "knot"});
        p.children.push_back({static_cast<int>(get_int(children[i]["winding"], here + "/winding")),
                              get_string(children[i]["knot"], here + "/knot")});
    }
    const Json& edges = expect_array(j["edges"], path + "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        p.edges.push_back(parse_edge(edges[i], at(path + "/edges", i), get_index));
    }
    const std::string arrangement = get_string(j["arrangement"], path + "/arrangement");
    if (arrangement == "chain") {
        p.arrangement = Arrangement::chain;
    } else if (arrangement == "custom") {
        p.arrangement = Arrangement::custom;
    } else {
        schema_error(path + "/arrangement", "expected \"chain\" or \"custom\"");
    }
    if (!j["spine_child"].is_null()) p.spine_child = get_index(j["spine_child"], path + "/spine_child");
    return p;
}

Json edge_json(const LinkEdge& e, const auto& name) { return Json::array({name(e.a), name(e.b), e.lk, e.split}); }

Json rule_json(const StageRule& r) { return Json{{"spine", r.spine}, {"other", r.other}}; }

Json assignment_json(const Assignment& a) {
    Json pre = Json::array(), per = Json::array();
    for (const StageRule& r : a.preperiod) pre.push_back(rule_json(r));
    for (const StageRule& r : a.period) per.push_back(rule_json(r));
    return Json{{"preperiod", pre}, {"period", per}};
}

SliceCertificate parse_certificate(const Json& j, const std::string& path) {
    expect_object(j, path, {"system", "provenance"});
    SliceCertificate cert;
    try {
        cert.system = parse_system(j["system"]);
    } catch (const DocumentError& e) {
        throw DocumentError(e.kind(), path + "/system" + e.path(), e.message());
    }
    cert.provenance = get_string(j["provenance"], path + "/provenance");
    if (cert.provenance.empty()) schema_error(path + "/provenance", "provenance must be nonempty");
    return cert;
}

}  // namespace

PatternSystem parse_system(std::string_view text) { return parse_system(parse_text(text)); }

PatternSystem parse_system(const Json& doc) {
    expect_object(doc, "", {"roots", "root_edges", "patterns", "assignment"}, {"extra_assignments"});
    PatternSystem s;

    const Json& roots = expect_array(doc["roots"], "/roots");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const std::string here = at("/roots", i);
        expect_object(roots[i], here, {"id", "knot", "spine"}, {"lane"});
        RootSpec r;
        r.id = get_string(roots[i]["id"], here + "/id");
        r.knot = get_string(roots[i]["knot"], here + "/knot");
        r.spine = get_bool(roots[i]["spine"], here + "/spine");
        if (roots[i].contains("lane")) r.lane = get_index(roots[i]["lane"], here + "/lane");
        s.roots.push_back(std::move(r));
    }

    auto root_index = [&](const Json& j, const std::string& path) -> std::size_t {
        const std::string id = get_string(j, path);
        for (std::size_t i = 0; i < s.roots.size(); ++i) {
            if (s.roots[i].id == id) return i;
        }
        throw DocumentError(Kind::semantic, path, "unknown root id '" + id + "'");
    };
    const Json& root_edges = expect_array(doc["root_edges"], "/root_edges");
    for (std::size_t i = 0; i < root_edges.size(); ++i) {
        s.root_edges.push_back(parse_edge(root_edges[i], at("/root_edges", i), root_index));
    }

    const Json& patterns = doc["patterns"];
    if (!patterns.is_object()) schema_error("/patterns", "expected an object");
    for (const auto& item : patterns.items()) {
        s.patterns.emplace(item.key(), parse_pattern(item.value(), "/patterns/" + item.key()));
    }

    s.lanes.push_back(parse_assignment(doc["assignment"], "/assignment"));
    if (doc.contains("extra_assignments")) {
        const Json& extra = expect_array(doc["extra_assignments"], "/extra_assignments");
        for (std::size_t i = 0; i < extra.size(); ++i) {
            s.lanes.push_back(parse_assignment(extra[i], at("/extra_assignments", i)));
        }
    }

    validate(s);
    return s;
}

Json to_json(const PatternSystem& s) {
    const bool lanes = s.lanes.size() > 1;
    Json roots = Json::array();
    for (const RootSpec& r : s.roots) {
        Json j{{"id", r.id}, {"knot", r.knot}, {"spine", r.spine}};
        if (lanes) j["lane"] = r.lane;
        roots.push_back(std::move(j));
    }
    Json root_edges = Json::array();
    for (const LinkEdge& e : s.root_edges) {
        root_edges.push_back(edge_json(e, [&](std::size_t i) { return s.roots[i].id; }));
    }
    Json patterns = Json::object();
    for (const auto& [name, p] : s.patterns) {
        Json children = Json::array();
        for (const ChildSlot& c : p.children) children.push_back(Json{{"winding", c.winding}, {"knot", c.knot}});
        Json edges = Json::array();
        for (const LinkEdge& e : p.edges) edges.push_back(edge_json(e, [](std::size_t i) { return i; }));
        patterns[name] = Json{{"children", children},
                              {"edges", edges},
                              {"arrangement", to_string(p.arrangement)},
                              {"spine_child", p.spine_child ? Json(*p.spine_child) : Json(nullptr)}};
    }
    Json out{{"roots", roots}, {"root_edges", root_edges}, {"patterns", patterns},
             {"assignment", assignment_json(s.lanes.front())}};
    if (lanes) {
        Json extra = Json::array();
        for (std::size_t i = 1; i < s.lanes.size(); ++i) extra.push_back(assignment_json(s.lanes[i]));
        out["extra_assignments"] = extra;
    }
    return out;
}

StageGraph parse_stage_graph(std::string_view text) {
    const Json doc = parse_text(text);
    expect_object(doc, "", {"stage", "nodes", "edges"});
    StageGraph g;
    g.stage = get_index(doc["stage"], "/stage");
    const Json& nodes = expect_array(doc["nodes"], "/nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string here = at("/nodes", i);
        expect_object(nodes[i], here, {"id", "winding"}, {"parent", "knot", "spine", "lane", "pattern"});
        TorusNode n;
        n.id = get_string(nodes[i]["id"], here + "/id");
        n.stage = g.stage;
        n.winding = static_cast<int>(get_int(nodes[i]["winding"], here + "/winding"));
        if (nodes[i].contains("parent") && !nodes[i]["parent"].is_null()) {
            n.parent = get_string(nodes[i]["parent"], here + "/parent");
        }
        if (nodes[i].contains("knot")) n.knot = get_string(nodes[i]["knot"], here + "/knot");
        if (nodes[i].contains("spine")) n.spine = get_bool(nodes[i]["spine"], here + "/spine");
        if (nodes[i].contains("lane")) n.lane = get_index(nodes[i]["lane"], here + "/lane");
        if (nodes[i].contains("pattern")) n.pattern = get_string(nodes[i]["pattern"], here + "/pattern");
        g.nodes.push_back(std::move(n));
    }
    auto node_index = [&](const Json& j, const std::string& path) -> std::size_t {
        const std::string id = get_string(j, path);
        if (const auto i = g.find(id)) return *i;
        throw DocumentError(Kind::semantic, path, "unknown node id '" + id + "'");
    };
    const Json& edges = expect_array(doc["edges"], "/edges");
    for (std::size_t i = 0; i < edges.size(); ++i) g.edges.push_back(parse_edge(edges[i], at("/edges", i), node_index));
    // Recover parent grouping from parent ids.
    std::map<std::string, std::size_t> parent_slots;
    for (TorusNode& n : g.nodes) {
        if (n.parent) n.parent_index = parent_slots.emplace(*n.parent, parent_slots.size()).first->second;
    }
    validate(g);
    return g;
}

Json to_json(const StageGraph& g) {
    Json nodes = Json::array();
    for (const TorusNode& n : g.nodes) {
        nodes.push_back(Json{{"id", n.id},
                             {"parent", n.parent ? Json(*n.parent) : Json(nullptr)},
                             {"winding", n.winding},
                             {"knot", n.knot},
                             {"spine", n.spine},
                             {"lane", n.lane},
                             {"pattern", n.pattern}});
    }
    Json edges = Json::array();
    for (const LinkEdge& e : g.edges) edges.push_back(edge_json(e, [&](std::size_t i) { return g.nodes[i].id; }));
    return Json{{"stage", g.stage}, {"nodes", nodes}, {"edges", edges}};
}

NestingRelation parse_nesting_relation(std::string_view text) {
    const Json doc = parse_text(text);
    expect_object(doc, "", {"stage", "pairs"});
    NestingRelation rel;
    rel.stage = get_index(doc["stage"], "/stage");
    const Json& pairs = expect_array(doc["pairs"], "/pairs");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string here = at("/pairs", i);
        if (!pairs[i].is_array() || pairs[i].size() != 3) schema_error(here, "pair must be [cId, dId, tag]");
        NestingPair p;
        p.c = get_string(pairs[i][0], at(here, 0));
        p.d = get_string(pairs[i][1], at(here, 1));
        const std::string tag = get_string(pairs[i][2], at(here, 2));
        if (tag == "c_in_d") {
            p.tag = NestingTag::c_in_d;
        } else if (tag == "d_in_c") {
            p.tag = NestingTag::d_in_c;
        } else {
            schema_error(at(here, 2), "expected \"c_in_d\" or \"d_in_c\"");
        }
        rel.pairs.push_back(std::move(p));
    }
    return rel;
}

Json to_json(const NestingRelation& rel) {
    Json pairs = Json::array();
    for (const NestingPair& p : rel.pairs) {
        pairs.push_back(Json::array({p.c, p.d, p.tag == NestingTag::c_in_d ? "c_in_d" : "d_in_c"}));
    }
    return Json{{"stage", rel.stage}, {"pairs", pairs}};
}

FormalClass parse_class(std::string_view text) {
    const Json doc = parse_text(text);
    if (!doc.is_object() || !doc.contains("representatives")) return FormalClass::of(parse_system(doc));
    expect_object(doc, "", {"representatives"}, {"slice_certificates"});
    FormalClass c;
    const Json& reps = expect_array(doc["representatives"], "/representatives");
    for (std::size_t i = 0; i < reps.size(); ++i) {
        try {
            c.representatives.push_back(parse_system(reps[i]));
        } catch (const DocumentError& e) {
            throw DocumentError(e.kind(), at("/representatives", i) + e.path(), e.message());
        }
    }
    if (doc.contains("slice_certificates")) {
        const Json& certs = expect_array(doc["slice_certificates"], "/slice_certificates");
        for (std::size_t i = 0; i < certs.size(); ++i) {
            c.slice_certificates.push_back(parse_certificate(certs[i], at("/slice_certificates", i)));
        }
    }
    return c;
}

Json to_json(const FormalClass& c) {
    Json reps = Json::array();
    for (const PatternSystem& s : c.representatives) reps.push_back(to_json(s));
    Json certs = Json::array();
    for (const SliceCertificate& cert : c.slice_certificates) {
        certs.push_back(Json{{"system", to_json(cert.system)}, {"provenance", cert.provenance}});
    }
    return Json{{"representatives", reps}, {"slice_certificates", certs}};
}

Json to_json(const Z2Seq& seq) {
    Json pre = Json::array(), per = Json::array();
    for (auto v : seq.preperiod()) pre.push_back(static_cast<int>(v));
    for (auto v : seq.period()) per.push_back(static_cast<int>(v));
    return Json{{"preperiod", pre}, {"period", per}};
}

Json count_to_json(const Count& c) {
    if (c >= 0 && c <= Count(std::numeric_limits<std::uint64_t>::max())) return Json(c.convert_to<std::uint64_t>());
    return Json(c.str());
}

Json to_json(const CountDescriptor& d) {
    Json prefix = Json::array();
    for (const Count& c : d.prefix) prefix.push_back(count_to_json(c));
    Json out{{"prefix", prefix},
             {"recurrence_from", d.recurrence_from},
             {"multipliers_per_period_stage", d.multipliers ? Json(*d.multipliers) : Json(nullptr)},
             {"additive_terms", d.additive_terms ? Json(*d.additive_terms) : Json(nullptr)}};
    if (d.lanes.size() > 1 || !d.multipliers) {
        Json lanes = Json::array();
        for (const LaneRecurrence& lane : d.lanes) {
            auto steps = [](const std::vector<AffineStep>& v) {
                Json a = Json::array();
                for (const AffineStep& s : v) a.push_back(Json::array({s.multiplier, s.additive}));
                return a;
            };
            lanes.push_back(Json{{"initial", lane.initial},
                                 {"preperiod", steps(lane.preperiod)},
                                 {"period", steps(lane.period)}});
        }
        out["lanes"] = lanes;
    }
    return out;
}

Json to_json(const AdmissibilityReport& r) {
    Json conditions = Json::object();
    for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        const ConditionResult& c = r.conditions[i];
        conditions[std::to_string(i + 1)] =
            Json{{"status", to_string(c.status)}, {"detail", c.detail}, {"trace", c.trace}};
    }
    return Json{{"depth", r.depth == 0 ? Json("all") : Json(r.depth)},
                {"conditions", conditions},
                {"overall", r.overall}};
}

Json to_json(const BijectionResult& result) {
    if (const auto* cert = std::get_if<BijectionCertificate>(&result)) {
        Json matching = Json::array();
        for (const auto& [c, d] : cert->matching) matching.push_back(Json::array({c, d}));
        return Json{{"result", "certificate"}, {"matching", matching}, {"log", cert->log}};
    }
    const auto& v = std::get<BijectionViolation>(result);
    return Json{{"result", "violation"},
                {"rule", std::string(1, v.rule)},
                {"clause", v.clause},
                {"trace", v.trace}};
}

Json to_json(const Verdict& v) {
    return Json{{"verdict", to_string(v.kind)}, {"witness", v.witness ? Json(*v.witness) : Json(nullptr)}};
}

std::vector<TorusPlacement> parse_placements(std::string_view text) {
    const Json doc = parse_text(text);
    expect_object(doc, "", {"tori"});
    const Json& tori = expect_array(doc["tori"], "/tori");
    std::vector<TorusPlacement> out;
    for (std::size_t i = 0; i < tori.size(); ++i) {
        const std::string here = at("/tori", i);
        expect_object(tori[i], here, {"id", "core", "radius"});
        TorusPlacement t;
        t.id = get_string(tori[i]["id"], here + "/id");
        if (!tori[i]["radius"].is_number()) schema_error(here + "/radius", "expected a number");
        t.radius = tori[i]["radius"].get<double>();
        const Json& core = expect_array(tori[i]["core"], here + "/core");
        for (std::size_t v = 0; v < core.size(); ++v) {
            const std::string vp = at(here + "/core", v);
            const Json& xyz = expect_array(core[v], vp);
            if (xyz.size() != 3 || !std::ranges::all_of(xyz, [](const Json& x) { return x.is_number(); })) {
                schema_error(vp, "expected [x, y, z]");
            }
            t.core.emplace_back(xyz[0].get<double>(), xyz[1].get<double>(), xyz[2].get<double>());
        }
        out.push_back(std::move(t));
    }
    return out;
}

Json to_json(std::span<const TorusPlacement> placements) {
    Json tori = Json::array();
    for (const TorusPlacement& t : placements) {
        Json core = Json::array();
        for (const auto& v : t.core) core.push_back(Json::array({v.x(), v.y(), v.z()}));
        tori.push_back(Json{{"id", t.id}, {"core", std::move(core)}, {"radius", t.radius}});
    }
    return Json{{"tori", std::move(tori)}};
}

Json to_json(const CertificationReport& r) {
    auto check = [](const CheckResult& c, const char* worst_name) {
        return Json{{"passed", c.passed}, {"checked", c.checked}, {worst_name, c.worst}, {"failures", c.failures}};
    };
    Json links = Json::array();
    for (const LinkingEntry& e : r.links) {
        links.push_back(
            Json{{"a", e.a}, {"b", e.b}, {"neighbors", e.neighbors}, {"lk", e.lk}, {"passed", e.passed}});
    }
    return Json{{"passed", r.passed()},
                {"cores", check(r.cores, "worst")},
                {"disjointness", check(r.disjointness, "min_margin")},
                {"containment", check(r.containment, "min_slack")},
                {"linking", check(r.linking, "max_error")},
                {"links", std::move(links)},
                {"out_of_scope", Json::array({"adm(3)", "adm(4)"})}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace defseq
