#include "defseq/geometry.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace defseq {

namespace {

using V = Vec3<double>;
constexpr double pi = std::numbers::pi;

struct Frame {
    V tangent, n1, n2;
};

// Closed analytic curve on the parameter circle [0, 1).
class Curve {
public:
    virtual ~Curve() = default;
    virtual V position(double s) const = 0;
    virtual Frame frame(double s) const = 0;
    // Length of the local parameter domain used to lay out children.
    virtual double nominal_length() const = 0;
};

double wrap(double s) { return s - std::floor(s); }

class RootCircle final : public Curve {
public:
    explicit RootCircle(V center) : center_(std::move(center)) {}

    V position(double s) const override {
        const double a = 2 * pi * wrap(s);
        return center_ + V(std::cos(a), std::sin(a), 0);
    }

    Frame frame(double s) const override {
        const double a = 2 * pi * wrap(s);
        return {V(-std::sin(a), std::cos(a), 0), V(std::cos(a), std::sin(a), 0), V(0, 0, 1)};
    }

    double nominal_length() const override { return 2 * pi; }

private:
    V center_;
};

// Stadium loop on the ribbon {parent(u) + w * D(u)}, D = cos(phi) n1 + sin(phi) n2.
class StadiumChild final : public Curve {
public:
    StadiumChild(std::shared_ptr<const Curve> parent, double u_center, double half_straight, double half_width,
                 double phi)
        : parent_(std::move(parent)), u_center_(u_center), ell_(half_straight), beta_(half_width), phi_(phi) {}

    V position(double s) const override {
        const auto [u, w] = local(s);
        const double t = u / parent_->nominal_length();
        const Frame f = parent_->frame(t);
        return parent_->position(t) + w * (std::cos(phi_) * f.n1 + std::sin(phi_) * f.n2);
    }

    Frame frame(double s) const override {
        constexpr double h = 1e-6;
        const V tangent = (position(s + h) - position(s - h)).normalized();
        const auto [u, w] = local(s);
        const Frame f = parent_->frame(u / parent_->nominal_length());
        const V ribbon_normal = -std::sin(phi_) * f.n1 + std::cos(phi_) * f.n2;
        const V n1 = (ribbon_normal - ribbon_normal.dot(tangent) * tangent).normalized();
        return {tangent, n1, tangent.cross(n1)};
    }

    double nominal_length() const override { return 4 * ell_ + 2 * pi * beta_; }

private:
    // (u, w) on the ribbon at arc-length fraction s of the stadium.
    std::pair<double, double> local(double s) const {
        double sigma = wrap(s) * nominal_length();
        const double straight = 2 * ell_, cap = pi * beta_;
        if (sigma < straight) return {u_center_ - ell_ + sigma, -beta_};
        sigma -= straight;
        if (sigma < cap) {
            const double psi = -pi / 2 + sigma / beta_;
            return {u_center_ + ell_ + beta_ * std::cos(psi), beta_ * std::sin(psi)};
        }
        sigma -= cap;
        if (sigma < straight) return {u_center_ + ell_ - sigma, beta_};
        sigma -= straight;
        const double psi = pi / 2 + sigma / beta_;
        return {u_center_ - ell_ + beta_ * std::cos(psi), beta_ * std::sin(psi)};
    }

    std::shared_ptr<const Curve> parent_;
    double u_center_, ell_, beta_, phi_;
};

Polyline<double> sample(const Curve& c, std::size_t n) {
    Polyline<double> out;
    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) out.push_back(c.position(static_cast<double>(i) / static_cast<double>(n)));
    out.push_back(out.front());
    return out;
}

double ribbon_turn(std::size_t k) {
    return k % 2 == 0 ? pi / 2 : pi * static_cast<double>(k - 1) / (2.0 * static_cast<double>(k));
}

void require_supported(const PatternSystem& s) {
    for (const LinkEdge& e : s.root_edges) {
        if (e.lk != 0) throw GeometryError("linked roots are not supported by the embedding");
    }
    for (const RootSpec& r : s.roots) {
        if (r.knot != "unknot") throw GeometryError("root " + r.id + " is knotted; only unknots can be placed");
    }
    for (const auto& [name, p] : s.patterns) {
        if (p.arrangement != Arrangement::chain) {
            throw GeometryError("pattern '" + name + "' is not a chain; only chain patterns can be placed");
        }
        for (const ChildSlot& c : p.children) {
            if (c.knot != "unknot") throw GeometryError("pattern '" + name + "' has knotted children");
        }
    }
}

}  // namespace

std::vector<TorusPlacement> embed_antoine(const PatternSystem& s, std::size_t depth, const EmbedParams& params,
                                          const ExpandOptions& options) {
    if (!(params.shrink > 0 && params.shrink < 1)) throw std::invalid_argument("shrink must lie in (0, 1)");
    if (!(params.tube_ratio > 0 && params.tube_ratio < 1)) throw std::invalid_argument("tube ratio must lie in (0, 1)");
    if (params.core_vertices < 64) throw std::invalid_argument("cores need at least 64 vertices");
    require_supported(s);

    const auto stages = expand(s, depth, options);
    std::vector<std::shared_ptr<const Curve>> curves, next_curves;
    std::vector<double> radii, next_radii;
    std::vector<TorusPlacement> out;

    for (std::size_t i = 0; i < stages[0].nodes.size(); ++i) {
        curves.push_back(std::make_shared<RootCircle>(V(3.0 * static_cast<double>(i), 0, 0)));
        radii.push_back(params.tube_ratio);
        out.push_back({stages[0].nodes[i].id, sample(*curves.back(), params.core_vertices), params.tube_ratio});
    }

    for (std::size_t m = 1; m <= depth; ++m) {
        const StageGraph& g = stages[m];
        next_curves.clear();
        next_radii.clear();
        std::size_t first = 0;
        while (first < g.nodes.size()) {
            const std::size_t p = *g.nodes[first].parent_index;
            std::size_t last = first;
            while (last < g.nodes.size() && g.nodes[last].parent_index == p) ++last;
            const std::size_t k = last - first;

            const double r_parent = radii[p];
            const double r_child = params.shrink * r_parent;
            const double spacing = curves[p]->nominal_length() / static_cast<double>(k);
            const double half_span = 0.75 * spacing;
            const double half_width = 0.75 * (r_parent - r_child);
            const double half_straight = half_span - half_width;
            if (half_straight <= 0) {
                throw GeometryError("children of " + g.nodes[first].parent.value_or("?") +
                                    " are too short for their width");
            }

            const std::size_t base = out.size();
            for (std::size_t c = 0; c < k; ++c) {
                auto curve = std::make_shared<StadiumChild>(curves[p], static_cast<double>(c) * spacing,
                                                            half_straight, half_width,
                                                            static_cast<double>(c) * ribbon_turn(k));
                out.push_back({g.nodes[first + c].id, sample(*curve, params.core_vertices), r_child});
                next_curves.push_back(std::move(curve));
                next_radii.push_back(r_child);
            }
            for (std::size_t a = 0; a < k; ++a) {
                for (std::size_t b = a + 1; b < k; ++b) {
                    const TorusPlacement& ta = out[base + a];
                    const TorusPlacement& tb = out[base + b];
                    const double gap = polyline_distance(ta.core, tb.core) - ta.radius - tb.radius;
                    if (gap <= 1e-6) {
                        throw GeometryError("tubes " + ta.id + " and " + tb.id + " overlap (gap " +
                                                std::to_string(gap) + ")",
                                            std::pair{ta.id, tb.id});
                    }
                }
            }
            // Stadium caps have curvature radius half_width; the tube must fit inside it.
            if (half_width <= r_child) {
                throw GeometryError("tube of " + out[base].id + " overlaps itself at its ends",
                                    std::pair{out[base].id, out[base].id});
            }
            first = last;
        }
        curves.swap(next_curves);
        radii.swap(next_radii);
    }
    return out;
}

}  // namespace defseq
