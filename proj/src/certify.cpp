#include "defseq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <tuple>

namespace defseq {

namespace {

using V = Vec3<double>;

struct Node {
    std::size_t index;
    std::size_t stage;
    std::string parent;  // empty for roots
    long sibling = -1;   // last id component for non-roots
};

Node describe(const TorusPlacement& t, std::size_t index) {
    Node n{index, static_cast<std::size_t>(std::ranges::count(t.id, '.')), "", -1};
    if (const auto dot = t.id.rfind('.'); dot != std::string::npos) {
        n.parent = t.id.substr(0, dot);
        try {
            n.sibling = std::stol(t.id.substr(dot + 1));
        } catch (const std::exception&) {
            n.sibling = -1;
        }
    }
    return n;
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << std::scientific << v;
    return ss.str();
}

struct Box {
    V lo, hi;
};

Box bounds(const Polyline<double>& p) {
    Box b{p.front(), p.front()};
    for (const V& x : p) {
        b.lo = b.lo.cwiseMin(x);
        b.hi = b.hi.cwiseMax(x);
    }
    return b;
}

double box_gap(const Box& a, const Box& b) {
    const V gap = (a.lo - b.hi).cwiseMax(b.lo - a.hi).cwiseMax(V::Zero());
    return gap.norm();
}

void fail(CheckResult& c, std::string msg) {
    c.passed = false;
    c.failures.push_back(std::move(msg));
}

void check_core(const TorusPlacement& t, const CertifyTolerances& tol, CheckResult& c) {
    ++c.checked;
    if (t.core.size() < tol.min_core_vertices + 1 || t.core.front() != t.core.back()) {
        fail(c, t.id + ": core must be closed with at least " + std::to_string(tol.min_core_vertices) + " vertices");
        return;
    }
    if (!(t.radius > 0)) {
        fail(c, t.id + ": tube radius must be positive");
        return;
    }
    // Segments farther apart than 2r along the curve must stay r/4 apart.
    const std::size_t n = t.core.size() - 1;
    std::vector<double> arc(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) arc[i + 1] = arc[i] + (t.core[i + 1] - t.core[i]).norm();
    const double total = arc[n];
    const double resolution = t.radius / 4;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double along = arc[j] - arc[i + 1];
            const double around = total - (arc[j + 1] - arc[i]);
            if (std::min(along, around) <= 2 * t.radius) continue;
            const double d = segment_distance<double>(t.core[i], t.core[i + 1], t.core[j], t.core[j + 1]);
            if (d <= resolution) {
                fail(c, t.id + ": core comes within " + fmt(d) + " of itself (segments " + std::to_string(i) +
                            ", " + std::to_string(j) + ")");
                return;
            }
        }
    }
}

// Points on the tube surface at evenly spaced arc positions of the core.
std::vector<V> tube_samples(const TorusPlacement& t, std::size_t count) {
    const std::size_t around = 25;
    const std::size_t along = std::max<std::size_t>(1, count / around);
    const Polyline<double> ring = resample_closed(t.core, along);
    std::vector<V> out;
    out.reserve(along * around);
    for (std::size_t i = 0; i < along; ++i) {
        const V tangent = (ring[(i + 1) % along] - ring[(i + along - 1) % along]).normalized();
        const V helper = std::abs(tangent.x()) < 0.9 ? V::UnitX() : V::UnitY();
        const V n1 = tangent.cross(helper).normalized();
        const V n2 = tangent.cross(n1);
        for (std::size_t j = 0; j < around; ++j) {
            const double a = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(around);
            out.push_back(ring[i] + t.radius * (std::cos(a) * n1 + std::sin(a) * n2));
        }
    }
    return out;
}

}  // namespace

CertificationReport certify_geometry(std::span<const TorusPlacement> placements, const CertifyTolerances& tol) {
    CertificationReport rep;
    rep.disjointness.worst = std::numeric_limits<double>::infinity();
    rep.containment.worst = std::numeric_limits<double>::infinity();

    // Canonical order by id.
    std::vector<std::size_t> order(placements.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return placements[a].id < placements[b].id; });

    std::map<std::string, std::size_t> by_id;
    std::vector<Node> nodes;
    for (std::size_t i : order) {
        nodes.push_back(describe(placements[i], i));
        if (!by_id.emplace(placements[i].id, i).second) fail(rep.cores, placements[i].id + ": duplicate id");
    }
    for (std::size_t i : order) check_core(placements[i], tol, rep.cores);
    if (!rep.cores.passed) return rep;

    std::vector<Box> boxes;
    for (const TorusPlacement& t : placements) boxes.push_back(bounds(t.core));

    // (a) same-stage disjointness
    for (std::size_t x = 0; x < nodes.size(); ++x) {
        for (std::size_t y = x + 1; y < nodes.size(); ++y) {
            if (nodes[x].stage != nodes[y].stage) continue;
            const TorusPlacement& a = placements[nodes[x].index];
            const TorusPlacement& b = placements[nodes[y].index];
            const double needed = a.radius + b.radius + tol.margin;
            ++rep.disjointness.checked;
            if (box_gap(boxes[nodes[x].index], boxes[nodes[y].index]) > needed) continue;
            const double margin = polyline_distance(a.core, b.core) - a.radius - b.radius;
            rep.disjointness.worst = std::min(rep.disjointness.worst, margin);
            if (margin <= tol.margin) fail(rep.disjointness, a.id + " | " + b.id + ": margin " + fmt(margin));
        }
    }

    // (b) containment of each child tube in its parent tube
    for (const Node& n : nodes) {
        if (n.parent.empty()) continue;
        const TorusPlacement& child = placements[n.index];
        ++rep.containment.checked;
        const auto parent = by_id.find(n.parent);
        if (parent == by_id.end()) {
            fail(rep.containment, child.id + ": parent " + n.parent + " is missing");
            continue;
        }
        const TorusPlacement& outer = placements[parent->second];
        double slack = std::numeric_limits<double>::infinity();
        for (const V& x : tube_samples(child, tol.containment_samples)) {
            slack = std::min(slack, outer.radius - tol.margin - point_polyline_distance(x, outer.core));
        }
        rep.containment.worst = std::min(rep.containment.worst, slack);
        if (slack <= 0) fail(rep.containment, child.id + " leaves " + outer.id + " (slack " + fmt(slack) + ")");
    }

    // (c) linking among siblings
    std::map<std::string, std::vector<const Node*>> families;
    for (const Node& n : nodes) {
        if (!n.parent.empty()) families[n.parent].push_back(&n);
    }
    for (const auto& [parent, members] : families) {
        const long k = static_cast<long>(members.size());
        for (std::size_t x = 0; x < members.size(); ++x) {
            for (std::size_t y = x + 1; y < members.size(); ++y) {
                const TorusPlacement& a = placements[members[x]->index];
                const TorusPlacement& b = placements[members[y]->index];
                const long diff = std::abs(members[x]->sibling - members[y]->sibling);
                LinkingEntry e;
                e.a = a.id;
                e.b = b.id;
                e.neighbors = diff == 1 || diff == k - 1;
                e.lk = gauss_linking_number(a.core, b.core);
                const double err = e.neighbors ? std::abs(std::abs(e.lk) - 1.0) : std::abs(e.lk);
                e.passed = err <= tol.linking;
                ++rep.linking.checked;
                rep.linking.worst = std::max(rep.linking.worst, err);
                if (!e.passed) {
                    fail(rep.linking, a.id + " | " + b.id + ": lk " + fmt(e.lk) +
                                          (e.neighbors ? ", expected +-1" : ", expected 0"));
                }
                rep.links.push_back(std::move(e));
            }
        }
    }
    std::ranges::sort(rep.links, [](const LinkingEntry& l, const LinkingEntry& r) {
        return std::tie(l.a, l.b) < std::tie(r.a, r.b);
    });
    if (rep.disjointness.checked == 0) rep.disjointness.worst = 0;
    if (rep.containment.checked == 0) rep.containment.worst = 0;
    return rep;
}

}  // namespace defseq
