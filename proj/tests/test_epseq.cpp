#include <doctest.h>

#include "defseq/epseq.hpp"

using defseq::make_z2;
using defseq::Z2Seq;

TEST_CASE("canonical form has primitive period and minimal preperiod") {
    const Z2Seq s({1, 1, 0}, {1, 0, 1, 0});
    const Z2Seq c = s.canonical();
    CHECK(c.preperiod() == std::vector<std::uint8_t>{1});
    CHECK(c.period() == std::vector<std::uint8_t>{1, 0});
    CHECK(c == s);
    CHECK(c.is_canonical());
    CHECK_FALSE(s.is_canonical());
}

TEST_CASE("canonical form preserves every term") {
    const Z2Seq s({1, 1, 0, 1}, {1, 0, 1, 1, 0, 1});
    const Z2Seq c = s.canonical();
    CHECK(c.prefix(40) == s.prefix(40));
    CHECK(c.period().size() == 3);
}

TEST_CASE("constant and zero sequences") {
    CHECK(make_z2({0, 0}, {0, 0}).period() == std::vector<std::uint8_t>{0});
    CHECK(make_z2({0, 0}, {0, 0}).preperiod().empty());
    CHECK(defseq::zero_z2() == Z2Seq::constant(0));
}

TEST_CASE("xor against termwise oracle") {
    const Z2Seq a = make_z2({1}, {0, 1});
    const Z2Seq b = make_z2({0, 0, 1}, {1, 1, 0});
    const Z2Seq x = a ^ b;
    for (std::size_t i = 0; i < 50; ++i) CHECK(x[i] == (a[i] ^ b[i]));
    CHECK(x.is_canonical());
    CHECK((a ^ a) == defseq::zero_z2());
}

TEST_CASE("equality compares sequences, not presentations") {
    CHECK(make_z2({}, {1, 0}) == Z2Seq({1, 0, 1}, {0, 1}));
    CHECK_FALSE(make_z2({}, {1, 0}) == make_z2({}, {0, 1}));
    CHECK(make_z2({}, {1, 0}).first_difference(make_z2({}, {0, 1})) == 0u);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(Z2Seq({0}, {}), std::invalid_argument);
    CHECK_THROWS_AS(make_z2({2}, {0}), std::invalid_argument);
}
