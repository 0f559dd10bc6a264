#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "defseq/core.hpp"
#include "defseq/epseq.hpp"

namespace defseq {

using Count = boost::multiprecision::cpp_int;

/// count(m) = multiplier * count(m-1) + additive for one stage.
struct AffineStep {
    std::uint64_t multiplier = 0;
    std::int64_t additive = 0;

    friend bool operator==(const AffineStep&, const AffineStep&) = default;
};

/// Exact component counts of one lane.
struct LaneRecurrence {
    std::uint64_t initial = 0;  // roots in the lane
    std::vector<AffineStep> preperiod;
    std::vector<AffineStep> period;

    const AffineStep& step_for_stage(std::size_t m) const;
};

/**
 * Component-count sequence n_0, n_1, ... of a pattern system.
 *
 * Counts grow without bound, so the sequence is carried as an explicit
 * prefix plus a recurrence. When every lane multiplies by the same factor at
 * every stage the totals obey a single affine recurrence
 *
 *   n_m = multipliers[j] * n_{m-1} + additive_terms[j],
 *   j = (m - recurrence_from) mod |multipliers|,  m >= recurrence_from,
 *
 * and `multipliers` / `additive_terms` are set. The per-lane recurrences are
 * always available and are exact in every case.
 */
struct CountDescriptor {
    std::vector<Count> prefix;
    std::size_t recurrence_from = 1;
    std::optional<std::vector<std::uint64_t>> multipliers;
    std::optional<std::vector<std::int64_t>> additive_terms;
    std::vector<LaneRecurrence> lanes;

    Count at(std::size_t m) const;
    std::vector<Count> terms(std::size_t n) const;
};

/// prefix_length is raised to at least 12 and to recurrence_from.
CountDescriptor component_counts(const PatternSystem& system, std::size_t prefix_length = 12);

/// Per stage, the parity of the number of components having nonzero
/// algebraic linking with another component of the same stage.
Z2Seq mod2_linking_sequence(const PatternSystem& system);

struct SliceCertificate {
    PatternSystem system;
    std::string provenance;
};

/// Bookkeeping token for a concordance class: a sum of representatives plus
/// declared-slice summands.
struct FormalClass {
    std::vector<PatternSystem> representatives;
    std::vector<SliceCertificate> slice_certificates;

    static FormalClass of(PatternSystem system) { return {{std::move(system)}, {}}; }
};

/// XOR of the linking sequences of the representatives; slice certificates
/// contribute zero.
Z2Seq nu(const FormalClass& c);

/// One message per slice certificate whose linking sequence is nonzero, i.e.
/// whose certificate is refuted.
std::vector<std::string> slice_warnings(const FormalClass& c);

/// Componentwise sum of representative counts, first n terms.
std::vector<Count> class_counts(const FormalClass& c, std::size_t n);

/// Roots concatenated (colliding ids renamed), patterns merged (colliding
/// names with different content renamed), lanes of b appended after a's.
PatternSystem disjoint_union(const PatternSystem& a, const PatternSystem& b);

struct Verdict {
    enum class Kind { distinct_by_nu, distinct_by_counts, unknown };

    Kind kind = Kind::unknown;
    std::optional<std::size_t> witness;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

std::string to_string(Verdict::Kind kind);

/// Unknown means the implemented invariants agree; it never claims the
/// classes are equal.
Verdict distinguish(const FormalClass& a, const FormalClass& b);

}  // namespace defseq
