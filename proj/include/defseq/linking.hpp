#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace defseq {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// Closed polygonal curve. The closing segment from the last vertex back to
/// the first is implied unless the last vertex repeats the first.
template <typename Scalar>
using Polyline = std::vector<Vec3<Scalar>>;

/// Number of segments of a closed polyline.
template <typename Scalar>
std::size_t closed_segment_count(const Polyline<Scalar>& p) {
    if (p.size() < 2) return 0;
    return p.front() == p.back() ? p.size() - 1 : p.size();
}

template <typename Scalar>
const Vec3<Scalar>& segment_end(const Polyline<Scalar>& p, std::size_t i) {
    return p[(i + 1) % p.size()];
}

/**
 * Gauss linking integral restricted to one pair of straight segments
 * p1->p2 and p3->p4, evaluated exactly as the signed solid angle of the
 * quadrilateral they span, divided by 4 pi.
 */
template <typename Scalar>
Scalar segment_pair_linking(const Vec3<Scalar>& p1, const Vec3<Scalar>& p2, const Vec3<Scalar>& p3,
                            const Vec3<Scalar>& p4) {
    const Vec3<Scalar> r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
    Vec3<Scalar> n[4] = {r13.cross(r14), r14.cross(r24), r24.cross(r23), r23.cross(r13)};
    for (auto& v : n) {
        const Scalar len = v.norm();
        if (len <= std::numeric_limits<Scalar>::min()) return Scalar(0);
        v /= len;
    }
    auto asin_clamped = [](Scalar x) { return std::asin(std::clamp(x, Scalar(-1), Scalar(1))); };
    const Scalar omega = asin_clamped(n[0].dot(n[1])) + asin_clamped(n[1].dot(n[2])) +
                         asin_clamped(n[2].dot(n[3])) + asin_clamped(n[3].dot(n[0]));
    const Scalar orient = (p4 - p3).cross(p2 - p1).dot(r13);
    if (orient == Scalar(0)) return Scalar(0);
    return (orient > 0 ? omega : -omega) / (Scalar(4) * std::numbers::pi_v<Scalar>);
}

/// Linking number of two disjoint closed polylines: double sum of the exact
/// segment-pair Gauss integrals.
template <typename Scalar>
Scalar gauss_linking_number(const Polyline<Scalar>& a, const Polyline<Scalar>& b) {
    const std::size_t na = closed_segment_count(a), nb = closed_segment_count(b);
    Scalar total = 0;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            total += segment_pair_linking<Scalar>(a[i], segment_end(a, i), b[j], segment_end(b, j));
        }
    }
    return total;
}

template <typename Scalar>
Scalar point_segment_distance(const Vec3<Scalar>& x, const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
    const Vec3<Scalar> ab = b - a;
    const Scalar len2 = ab.squaredNorm();
    const Scalar t = len2 > 0 ? std::clamp((x - a).dot(ab) / len2, Scalar(0), Scalar(1)) : Scalar(0);
    return (a + t * ab - x).norm();
}

/// Distance between segments p1-q1 and p2-q2 (closest points by clamped
/// parameters).
template <typename Scalar>
Scalar segment_distance(const Vec3<Scalar>& p1, const Vec3<Scalar>& q1, const Vec3<Scalar>& p2,
                        const Vec3<Scalar>& q2) {
    const Vec3<Scalar> d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    const Scalar a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
    Scalar s = 0, t = 0;
    if (a <= eps && e <= eps) return r.norm();
    if (a <= eps) {
        t = std::clamp(f / e, Scalar(0), Scalar(1));
    } else {
        const Scalar c = d1.dot(r);
        if (e <= eps) {
            s = std::clamp(-c / a, Scalar(0), Scalar(1));
        } else {
            const Scalar b = d1.dot(d2), denom = a * e - b * b;
            s = denom > 0 ? std::clamp((b * f - c * e) / denom, Scalar(0), Scalar(1)) : Scalar(0);
            t = (b * s + f) / e;
            if (t < 0) {
                t = 0;
                s = std::clamp(-c / a, Scalar(0), Scalar(1));
            } else if (t > 1) {
                t = 1;
                s = std::clamp((b - c) / a, Scalar(0), Scalar(1));
            }
        }
    }
    return ((p1 + d1 * s) - (p2 + d2 * t)).norm();
}

template <typename Scalar>
Scalar point_polyline_distance(const Vec3<Scalar>& x, const Polyline<Scalar>& p) {
    Scalar best = std::numeric_limits<Scalar>::infinity();
    const std::size_t n = closed_segment_count(p);
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, point_segment_distance<Scalar>(x, p[i], segment_end(p, i)));
    return best;
}

template <typename Scalar>
Scalar polyline_distance(const Polyline<Scalar>& a, const Polyline<Scalar>& b) {
    Scalar best = std::numeric_limits<Scalar>::infinity();
    const std::size_t na = closed_segment_count(a), nb = closed_segment_count(b);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            best = std::min(best, segment_distance<Scalar>(a[i], segment_end(a, i), b[j], segment_end(b, j)));
        }
    }
    return best;
}

}  // namespace defseq
