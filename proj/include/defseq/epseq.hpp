#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace defseq {

/**
 * Eventually periodic infinite sequence: a finite preperiod followed by a
 * nonempty period repeated forever.
 *
 * Equality is sequence equality, independent of how the sequence is
 * presented; canonical() gives the unique presentation with a primitive
 * period and a minimal preperiod.
 */
template <typename T>
class EPSeq {
public:
    EPSeq() : period_{T{}} {}

    EPSeq(std::vector<T> preperiod, std::vector<T> period)
        : preperiod_(std::move(preperiod)), period_(std::move(period)) {
        if (period_.empty()) {
            throw std::invalid_argument("eventually periodic sequence needs a nonempty period");
        }
    }

    static EPSeq constant(T value) { return EPSeq({}, {value}); }

    const std::vector<T>& preperiod() const noexcept { return preperiod_; }
    const std::vector<T>& period() const noexcept { return period_; }

    T operator[](std::size_t i) const {
        if (i < preperiod_.size()) return preperiod_[i];
        return period_[(i - preperiod_.size()) % period_.size()];
    }

    std::vector<T> prefix(std::size_t n) const {
        std::vector<T> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back((*this)[i]);
        return out;
    }

    EPSeq canonical() const {
        std::vector<T> per = period_;
        const std::size_t n = per.size();
        for (std::size_t d = 1; d <= n; ++d) {
            if (n % d != 0) continue;
            bool repeats = true;
            for (std::size_t i = d; i < n && repeats; ++i) repeats = per[i] == per[i % d];
            if (repeats) {
                per.resize(d);
                break;
            }
        }
        std::vector<T> pre = preperiod_;
        while (!pre.empty() && pre.back() == per.back()) {
            std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
            pre.pop_back();
        }
        return EPSeq(std::move(pre), std::move(per));
    }

    bool is_canonical() const {
        const EPSeq c = canonical();
        return c.preperiod_ == preperiod_ && c.period_ == period_;
    }

    // Comparing this many leading terms decides equality of the whole sequences.
    std::size_t equality_window(const EPSeq& other) const {
        return std::max(preperiod_.size(), other.preperiod_.size()) +
               std::lcm(period_.size(), other.period_.size());
    }

    std::optional<std::size_t> first_difference(const EPSeq& other) const {
        const std::size_t window = equality_window(other);
        for (std::size_t i = 0; i < window; ++i) {
            if ((*this)[i] != other[i]) return i;
        }
        return std::nullopt;
    }

    friend bool operator==(const EPSeq& a, const EPSeq& b) { return !a.first_difference(b); }

    template <typename F>
    static EPSeq zip(const EPSeq& a, const EPSeq& b, F&& op) {
        const std::size_t pre = std::max(a.preperiod_.size(), b.preperiod_.size());
        const std::size_t per = std::lcm(a.period_.size(), b.period_.size());
        std::vector<T> head, cycle;
        head.reserve(pre);
        cycle.reserve(per);
        for (std::size_t i = 0; i < pre; ++i) head.push_back(op(a[i], b[i]));
        for (std::size_t i = pre; i < pre + per; ++i) cycle.push_back(op(a[i], b[i]));
        return EPSeq(std::move(head), std::move(cycle)).canonical();
    }

private:
    std::vector<T> preperiod_;
    std::vector<T> period_;
};

/// Sequence over Z/2; every stored value is 0 or 1.
using Z2Seq = EPSeq<std::uint8_t>;

inline Z2Seq make_z2(std::vector<std::uint8_t> preperiod, std::vector<std::uint8_t> period) {
    auto bad = [](std::uint8_t v) { return v > 1; };
    if (std::ranges::any_of(preperiod, bad) || std::ranges::any_of(period, bad)) {
        throw std::invalid_argument("Z2 sequence values must be 0 or 1");
    }
    return Z2Seq(std::move(preperiod), std::move(period)).canonical();
}

inline Z2Seq operator^(const Z2Seq& a, const Z2Seq& b) {
    return Z2Seq::zip(a, b, [](std::uint8_t x, std::uint8_t y) {
        return static_cast<std::uint8_t>(x ^ y);
    });
}

inline Z2Seq zero_z2() { return Z2Seq::constant(0); }

}  // namespace defseq
