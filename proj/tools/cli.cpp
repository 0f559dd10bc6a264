#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "defseq/admissibility.hpp"
#include "defseq/generators.hpp"
#include "defseq/geometry.hpp"
#include "defseq/invariants.hpp"
#include "defseq/io.hpp"

namespace defseq::cli {

namespace {

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

void save(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

PatternSystem load_system(const std::string& path) { return parse_system(read_text_file(path)); }

Json terms_json(const std::vector<Count>& terms) {
    Json a = Json::array();
    for (const Count& c : terms) a.push_back(count_to_json(c));
    return a;
}

Json bits_json(const Z2Seq& s, std::size_t n) {
    Json a = Json::array();
    for (std::uint8_t b : s.prefix(n)) a.push_back(b);
    return a;
}

// Admissible systems get an invariant L; others only a raw one.
std::string l_status(const std::vector<PatternSystem>& systems) {
    const bool all = std::ranges::all_of(systems, [](const PatternSystem& s) {
        return check_admissible_all_stages(s).overall;
    });
    return all ? "admissible" : "raw L, invariance not asserted";
}

int generate(const std::string& kind, std::size_t k, const std::string& target, const std::string& path,
             std::ostream& out, std::ostream& err) {
    std::optional<std::string> warning;
    PatternSystem s;
    if (kind == "antoine") {
        GeneratedSystem g = antoine_chain(k);
        s = std::move(g.system);
        warning = std::move(g.warning);
    } else if (kind == "from-target") {
        s = antoine_from_target(parse_target_spec(target));
    } else if (kind == "bing") {
        s = bing_system();
    } else {
        s = whitehead_system();
    }
    save(path, to_json(s));
    if (warning) err << "warning: " << *warning << "\n";
    emit(out, Json{{"generated", kind},
                   {"output", path},
                   {"roots", s.roots.size()},
                   {"patterns", s.patterns.size()},
                   {"warning", warning ? Json(*warning) : Json(nullptr)}});
    return ok;
}

int invariants(const std::string& path, std::size_t terms, std::ostream& out, std::ostream& err) {
    const FormalClass c = parse_class(read_text_file(path));
    Json doc;
    if (c.representatives.size() == 1 && c.slice_certificates.empty()) {
        const PatternSystem& s = c.representatives.front();
        const CountDescriptor d = component_counts(s, terms);
        Json counts = to_json(d);
        counts["terms"] = terms_json(d.terms(terms));
        doc["counts"] = std::move(counts);
        doc["L"] = to_json(mod2_linking_sequence(s));
    } else {
        doc["counts"] = Json{{"terms", terms_json(class_counts(c, terms))}};
    }
    const Z2Seq v = nu(c);
    doc["nu"] = to_json(v);
    doc["nu_terms"] = bits_json(v, terms);
    doc["L_status"] = l_status(c.representatives);
    const std::vector<std::string> warnings = slice_warnings(c);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    doc["warnings"] = warnings;
    emit(out, doc);
    return ok;
}

int check(const std::string& path, std::size_t depth, std::ostream& out, std::ostream& err) {
    const AdmissibilityReport r = check_admissible(load_system(path), depth, expand_options_from_env());
    err << (r.overall ? "admissible" : "not admissible") << " through stage " << depth << "\n";
    emit(out, to_json(r));
    return r.overall ? ok : negative;
}

int compare(const std::string& a_path, const std::string& b_path, std::ostream& out, std::ostream& err) {
    const FormalClass a = parse_class(read_text_file(a_path));
    const FormalClass b = parse_class(read_text_file(b_path));
    for (const FormalClass* c : {&a, &b}) {
        for (const std::string& w : slice_warnings(*c)) err << "warning: " << w << "\n";
    }
    const Verdict v = distinguish(a, b);
    err << to_string(v.kind) << "\n";
    emit(out, to_json(v));
    return v.kind == Verdict::Kind::unknown ? ok : distinct;
}

int bijection(const std::string& c_path, const std::string& d_path, const std::string& rel_path,
              std::ostream& out, std::ostream& err) {
    const StageGraph c = parse_stage_graph(read_text_file(c_path));
    const StageGraph d = parse_stage_graph(read_text_file(d_path));
    const NestingRelation rel = parse_nesting_relation(read_text_file(rel_path));
    const BijectionResult r = verify_component_bijection(c, d, rel);
    const bool certified = std::holds_alternative<BijectionCertificate>(r);
    err << (certified ? "bijection certified" : "no bijection") << "\n";
    emit(out, to_json(r));
    return certified ? ok : negative;
}

struct GeomArgs {
    std::string file;
    std::size_t depth = 0;
    EmbedParams params;
    bool certify = false;
    std::string obj;
    std::string placements;
};

int geom(const GeomArgs& g, std::ostream& out, std::ostream& err) {
    const PatternSystem s = load_system(g.file);
    Json doc{{"depth", g.depth}, {"shrink", g.params.shrink}, {"tube", g.params.tube_ratio}};
    std::vector<TorusPlacement> placed;
    try {
        placed = embed_antoine(s, g.depth, g.params, expand_options_from_env());
    } catch (const GeometryError& e) {
        err << "geometry: " << e.what() << "\n";
        doc["error"] = e.what();
        if (const auto& p = e.offending_pair()) {
            doc["offending_pair"] = Json::array({p->first, p->second});
        } else {
            doc["offending_pair"] = nullptr;
        }
        emit(out, doc);
        return negative;
    }
    doc["tori"] = placed.size();
    int code = ok;
    if (g.certify) {
        const CertificationReport r = certify_geometry(placed);
        err << "certification " << (r.passed() ? "passed" : "failed") << " for " << placed.size() << " tori\n";
        doc["certification"] = to_json(r);
        if (!r.passed()) code = negative;
    }
    if (!g.obj.empty()) {
        export_obj(placed, g.obj);
        doc["obj"] = g.obj;
    }
    if (!g.placements.empty()) {
        save(g.placements, to_json(std::span<const TorusPlacement>(placed)));
        doc["placements"] = g.placements;
    }
    emit(out, doc);
    return code;
}

int certify(const std::string& path, std::ostream& out, std::ostream& err) {
    const std::vector<TorusPlacement> placed = parse_placements(read_text_file(path));
    const CertificationReport r = certify_geometry(placed);
    err << "certification " << (r.passed() ? "passed" : "failed") << " for " << placed.size() << " tori\n";
    emit(out, to_json(r));
    return r.passed() ? ok : negative;
}

int union_cmd(const std::string& a, const std::string& b, const std::string& path, std::ostream& out) {
    const PatternSystem u = disjoint_union(load_system(a), load_system(b));
    save(path, to_json(u));
    emit(out, Json{{"output", path}, {"roots", u.roots.size()}, {"lanes", u.lane_count()}});
    return ok;
}

int stage_cmd(const std::string& path, std::size_t m, std::ostream& out) {
    emit(out, to_json(stage(load_system(path), m, expand_options_from_env())));
    return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Toroidal defining sequences: generation, invariants, admissibility and geometry", "defseq"};
    app.require_subcommand(1);

    std::function<int()> action;

    // generate
    auto* gen = app.add_subcommand("generate", "write a pattern system to a file");
    gen->require_subcommand(1);
    std::string gen_out, target;
    std::size_t k = 4;
    auto add_generator = [&](const std::string& name, const std::string& help) {
        auto* sub = gen->add_subcommand(name, help);
        sub->add_option("-o,--output", gen_out, "output file")->required();
        sub->callback([&, name] { action = [&, name] { return generate(name, k, target, gen_out, out, err); }; });
        return sub;
    };
    add_generator("antoine", "chain of k unknots at every stage")
        ->add_option("--k", k, "components per chain")
        ->required();
    add_generator("from-target", "Antoine-type system realizing a mod-2 linking sequence")
        ->add_option("--l", target, "target sequence, e.g. pre:0,1;per:1,0")
        ->required();
    add_generator("bing", "Bing doubling");
    add_generator("whitehead", "Whitehead doubling");

    // invariants
    auto* inv = app.add_subcommand("invariants", "component counts, L and nu");
    std::string file, file2, file3;
    std::size_t terms = 12;
    inv->add_option("file", file, "system or class document")->required();
    inv->add_option("--terms", terms, "number of explicit terms")->check(CLI::Range(1, 100000));
    inv->callback([&] { action = [&] { return invariants(file, terms, out, err); }; });

    // check
    auto* chk = app.add_subcommand("check", "admissibility report");
    std::size_t depth = 4;
    chk->add_option("file", file, "system document")->required();
    chk->add_option("--depth", depth, "stages to expand")->check(CLI::Range(1, 64));
    chk->callback([&] { action = [&] { return check(file, depth, out, err); }; });

    // compare
    auto* cmp = app.add_subcommand("compare", "try to distinguish two classes");
    cmp->add_option("a", file, "first system or class")->required();
    cmp->add_option("b", file2, "second system or class")->required();
    cmp->callback([&] { action = [&] { return compare(file, file2, out, err); }; });

    // bijection
    auto* bij = app.add_subcommand("bijection", "verify a component bijection between two stages");
    bij->add_option("c", file, "first stage graph")->required();
    bij->add_option("d", file2, "second stage graph")->required();
    bij->add_option("relation", file3, "nesting relation")->required();
    bij->callback([&] { action = [&] { return bijection(file, file2, file3, out, err); }; });

    // geom
    auto* geo = app.add_subcommand("geom", "embed stages as solid tori in R^3");
    GeomArgs g;
    geo->add_option("file", g.file, "system document")->required();
    geo->add_option("--depth", g.depth, "last stage to place")->required()->check(CLI::Range(0, 16));
    geo->add_option("--shrink", g.params.shrink, "child tube radius / parent tube radius")
        ->capture_default_str();
    geo->add_option("--tube", g.params.tube_ratio, "root tube radius")->capture_default_str();
    geo->add_flag("--certify", g.certify, "run the geometric certification");
    geo->add_option("--obj", g.obj, "write a Wavefront OBJ mesh");
    geo->add_option("--placements", g.placements, "write placements JSON");
    geo->callback([&] { action = [&] { return geom(g, out, err); }; });

    // certify
    auto* cert = app.add_subcommand("certify", "certify a placements JSON file");
    cert->add_option("placements", file, "placements document")->required();
    cert->callback([&] { action = [&] { return certify(file, out, err); }; });

    // union
    auto* uni = app.add_subcommand("union", "disjoint union of two systems");
    std::string union_out;
    uni->add_option("a", file, "first system")->required();
    uni->add_option("b", file2, "second system")->required();
    uni->add_option("-o,--output", union_out, "output file")->required();
    uni->callback([&] { action = [&] { return union_cmd(file, file2, union_out, out); }; });

    // stage
    auto* stg = app.add_subcommand("stage", "print one expanded stage");
    std::size_t m = 0;
    stg->add_option("file", file, "system document")->required();
    stg->add_option("--m", m, "stage index")->required();
    stg->callback([&] { action = [&] { return stage_cmd(file, m, out); }; });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? ok : usage;
    }

    try {
        return action();
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return io;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return resource;
    } catch (const DocumentError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const GeometryError& e) {
        err << "error: " << e.what() << "\n";
        return negative;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return negative;
    }
}

}  // namespace defseq::cli
