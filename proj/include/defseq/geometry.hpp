#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "defseq/core.hpp"
#include "defseq/linking.hpp"

namespace defseq {

/// Solid torus in R^3: closed core polyline (first vertex repeated last)
/// and tube radius.
struct TorusPlacement {
    std::string id;
    Polyline<double> core;
    double radius = 0;
};

struct EmbedParams {
    double shrink = 0.22;      // child tube radius / parent tube radius
    double tube_ratio = 0.35;  // root tube radius; root core is the unit circle
    std::size_t core_vertices = 256;
};

/// Embedding impossible for the given system or parameters. When the cause
/// is a pair of overlapping tubes, offending_pair names them.
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& message,
                           std::optional<std::pair<std::string, std::string>> pair = std::nullopt)
        : std::runtime_error(message), pair_(std::move(pair)) {}

    const std::optional<std::pair<std::string, std::string>>& offending_pair() const noexcept { return pair_; }

private:
    std::optional<std::pair<std::string, std::string>> pair_;
};

/**
 * Places stages 0..depth of a chain system in R^3.
 *
 * Roots are unit circles in the xy-plane (spaced 3 apart along x when there
 * are several). The k children of a parent are stadium-shaped loops lying on
 * ribbons along the parent core, centered at k equally spaced core points and
 * each covering 3/2 of the spacing, so consecutive loops interleave and form
 * Hopf links. The ribbon direction turns by a quarter turn (even k) or by
 * (k-1)/(2k) of a half turn (odd k) from one child to the next.
 *
 * Order: stage by stage, nodes in expansion order. Throws GeometryError on
 * unsupported systems or overlapping siblings.
 */
std::vector<TorusPlacement> embed_antoine(const PatternSystem& system, std::size_t depth,
                                          const EmbedParams& params = {}, const ExpandOptions& options = {});

struct CertifyTolerances {
    double margin = 1e-6;
    double linking = 1e-3;
    std::size_t containment_samples = 1000;
    std::size_t min_core_vertices = 64;
};

struct CheckResult {
    bool passed = true;
    std::size_t checked = 0;
    double worst = 0;  // smallest margin seen (disjointness, containment) or largest error (linking)
    std::vector<std::string> failures;
};

struct LinkingEntry {
    std::string a;
    std::string b;
    bool neighbors = false;
    double lk = 0;
    bool passed = false;
};

struct CertificationReport {
    CheckResult cores;         // closed, enough vertices, positive radius, no self-intersection
    CheckResult disjointness;  // same-stage tubes apart by more than the radii sum
    CheckResult containment;   // sampled child tube points inside the parent tube
    CheckResult linking;       // siblings: neighbors link +-1, others 0
    std::vector<LinkingEntry> links;  // sorted by (a, b)

    bool passed() const {
        return cores.passed && disjointness.passed && containment.passed && linking.passed;
    }
};

/// Hierarchy is read from the path-based ids ("r.0.3" is child 3 of "r.0").
CertificationReport certify_geometry(std::span<const TorusPlacement> placements,
                                     const CertifyTolerances& tolerances = {});

/// Orthonormal normal pair at each vertex of a closed polygon (no repeated
/// last vertex), rotation minimizing with the closure twist spread evenly.
std::vector<std::pair<Vec3<double>, Vec3<double>>> closed_curve_frames(const Polyline<double>& points);

/// Resamples a closed polyline at n points equally spaced in arc length,
/// starting at the first vertex.
Polyline<double> resample_closed(const Polyline<double>& core, std::size_t n);

/// Wavefront OBJ: one object per torus, 32 rings of 16 vertices, quads.
void write_obj(std::span<const TorusPlacement> placements, std::ostream& out);
void export_obj(std::span<const TorusPlacement> placements, const std::string& path);

}  // namespace defseq
