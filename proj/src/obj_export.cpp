#include "defseq/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

#include "defseq/io.hpp"

namespace defseq {

namespace {

using V = Vec3<double>;

constexpr std::size_t rings = 32;
constexpr std::size_t ring_vertices = 16;

V any_normal(const V& t) {
    const V helper = std::abs(t.x()) < 0.9 ? V::UnitX() : V::UnitY();
    return t.cross(helper).normalized();
}

}  // namespace

Polyline<double> resample_closed(const Polyline<double>& core, std::size_t n) {
    const std::size_t segments = closed_segment_count(core);
    if (segments == 0 || n == 0) return {};
    std::vector<double> arc(segments + 1, 0.0);
    for (std::size_t i = 0; i < segments; ++i) arc[i + 1] = arc[i] + (segment_end(core, i) - core[i]).norm();
    const double total = arc[segments];
    Polyline<double> out;
    out.reserve(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = total * static_cast<double>(i) / static_cast<double>(n);
        while (seg + 1 < segments && arc[seg + 1] <= target) ++seg;
        const double len = arc[seg + 1] - arc[seg];
        const double f = len > 0 ? (target - arc[seg]) / len : 0.0;
        out.push_back(core[seg] + f * (segment_end(core, seg) - core[seg]));
    }
    return out;
}

std::vector<std::pair<V, V>> closed_curve_frames(const Polyline<double>& points) {
    const std::size_t n = points.size();
    std::vector<std::pair<V, V>> frames;
    if (n < 3) return frames;
    std::vector<V> tangents(n);
    for (std::size_t i = 0; i < n; ++i) tangents[i] = (points[(i + 1) % n] - points[(i + n - 1) % n]).normalized();

    // Double reflection (Wang et al.) around the loop, then once more to
    // measure how far the transported normal has drifted.
    auto transport = [&](std::size_t i, const V& r) {
        const std::size_t j = (i + 1) % n;
        const V v1 = points[j] - points[i];
        const double c1 = v1.squaredNorm();
        if (c1 == 0) return r;
        const V r_l = r - (2 / c1) * v1.dot(r) * v1;
        const V t_l = tangents[i] - (2 / c1) * v1.dot(tangents[i]) * v1;
        const V v2 = tangents[j] - t_l;
        const double c2 = v2.squaredNorm();
        if (c2 == 0) return r_l;
        return V(r_l - (2 / c2) * v2.dot(r_l) * v2);
    };

    std::vector<V> normals(n);
    normals[0] = any_normal(tangents[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) normals[i + 1] = transport(i, normals[i]);
    V closing = transport(n - 1, normals[n - 1]);
    closing = (closing - closing.dot(tangents[0]) * tangents[0]).normalized();
    const double twist = std::atan2(tangents[0].dot(normals[0].cross(closing)), normals[0].dot(closing));

    frames.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const V& t = tangents[i];
        V u = (normals[i] - normals[i].dot(t) * t).normalized();
        const double a = -twist * static_cast<double>(i) / static_cast<double>(n);
        const V w = t.cross(u);
        u = std::cos(a) * u + std::sin(a) * w;
        frames.emplace_back(u, t.cross(u));
    }
    return frames;
}

void write_obj(std::span<const TorusPlacement> placements, std::ostream& out) {
    out << "# defseq torus export\n# tori: " << placements.size() << "\n";
    char buf[128];
    std::size_t base = 1;
    for (const TorusPlacement& t : placements) {
        out << "o " << t.id << "\n";
        const Polyline<double> ring = resample_closed(t.core, rings);
        const auto frames = closed_curve_frames(ring);
        for (std::size_t i = 0; i < rings; ++i) {
            for (std::size_t j = 0; j < ring_vertices; ++j) {
                const double a = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(ring_vertices);
                const V p = ring[i] + t.radius * (std::cos(a) * frames[i].first + std::sin(a) * frames[i].second);
                std::snprintf(buf, sizeof buf, "v %.6f %.6f %.6f\n", p.x(), p.y(), p.z());
                out << buf;
            }
        }
        for (std::size_t i = 0; i < rings; ++i) {
            for (std::size_t j = 0; j < ring_vertices; ++j) {
                const std::size_t i2 = (i + 1) % rings, j2 = (j + 1) % ring_vertices;
                out << "f " << base + i * ring_vertices + j << ' ' << base + i2 * ring_vertices + j << ' '
                    << base + i2 * ring_vertices + j2 << ' ' << base + i * ring_vertices + j2 << "\n";
            }
        }
        base += rings * ring_vertices;
    }
}

void export_obj(std::span<const TorusPlacement> placements, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    write_obj(placements, f);
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace defseq
