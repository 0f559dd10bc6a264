#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "defseq/core.hpp"
#include "defseq/epseq.hpp"
#include "defseq/invariants.hpp"

namespace defseq {

/// Cyclic chain of k unknots; consecutive children have lk = +1, -1, +1, ...
/// and every child has winding 1.
Pattern chain_pattern(std::size_t k, std::optional<std::size_t> spine_child = 0);

struct GeneratedSystem {
    PatternSystem system;
    std::optional<std::string> warning;
};

/// Antoine necklace with k-component chains at every stage. k = 3 is
/// produced with a warning (fewer than four components per parent);
/// k < 3 throws std::invalid_argument.
GeneratedSystem antoine_chain(std::size_t k);

/**
 * Antoine-type system whose mod-2 linking sequence equals the target.
 *
 * The spine parent at stage m-1 receives a 5-chain when target[m] = 1 and a
 * 4-chain otherwise; every other parent receives a 4-chain. Then
 * count(m) = 4 count(m-1) + target[m], every component is chain-linked, and
 * the parity of count(m) is target[m]. Requires target[0] = 0.
 */
PatternSystem antoine_from_target(const Z2Seq& target);

/// Bing doubling: two children with algebraically zero, non-split linking.
PatternSystem bing_system();

/// Whitehead doubling: one child of winding 0.
PatternSystem whitehead_system();

SliceCertificate bing_certificate();
SliceCertificate whitehead_certificate();

/// Parses "pre:0,1;per:1,0" (either part may be empty or omitted, the period
/// must be nonempty). Throws std::invalid_argument.
Z2Seq parse_target_spec(std::string_view spec);

}  // namespace defseq
