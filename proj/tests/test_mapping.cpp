#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hault/errors.hpp"
#include "hault/mapping.hpp"
#include "hault/rng.hpp"
#include "oracles.hpp"

using namespace hault;

TEST_CASE("homomorphic map is the scalar embedding") {
    Group g = Group::builtin("toy");
    const GroupPoint& G = g.generator();

    CHECK(map_homomorphic(g, 0) == GroupPoint::infinity());
    CHECK(map_homomorphic(g, 1) == G);
    CHECK(map_homomorphic(g, 6) == oracle::repeated_add(g, 6, G));

    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        uint64_t a = rng.uniform(0, 5000), b = rng.uniform(0, 5000);
        CHECK(g.add(map_homomorphic(g, a), map_homomorphic(g, b)) ==
              map_homomorphic(g, a + b));
    }

    CHECK_THROWS_AS((void)map_homomorphic(g, g.order()), HaultError);
    CHECK_THROWS_AS((void)map_homomorphic(g, Int(-1)), HaultError);
}

TEST_CASE("recoverable map round-trips exhaustively on the toy profile") {
    Group g = Group::builtin("toy");
    for (unsigned b : {6u, 7u}) {
        for (uint64_t v = 0; v < (uint64_t(1) << b); ++v) {
            GroupPoint p = map_recoverable(g, v, b);
            CHECK(g.check_point(p));
            CHECK(decode_value(g, p, b) == v);
        }
    }
}

TEST_CASE("recoverable map round-trips on sampled production values") {
    Group g = Group::builtin("production");
    Rng rng(17);
    unsigned b = 32;
    for (int i = 0; i < 50; ++i) {
        uint64_t v = rng.uniform(0, (uint64_t(1) << b) - 1);
        GroupPoint p = map_recoverable(g, v, b);
        CHECK(g.check_point(p));
        CHECK(decode_value(g, p, b) == v);
    }
    // boundary values
    for (uint64_t v : {uint64_t(0), uint64_t(1), (uint64_t(1) << b) - 1}) {
        CHECK(decode_value(g, map_recoverable(g, v, b), b) == v);
    }
}

TEST_CASE("recoverable map rejects out-of-range values") {
    Group g = Group::builtin("toy");
    CHECK_THROWS_AS((void)map_recoverable(g, Int(64), 6), HaultError);
    CHECK_THROWS_AS((void)map_recoverable(g, Int(-1), 6), HaultError);
    CHECK_THROWS_AS((void)map_recoverable(g, Int(1), 0), HaultError);
    CHECK_THROWS_AS((void)map_recoverable(g, Int(1), 8), HaultError);  // margin rule
}

TEST_CASE("search exhaustion surfaces as its own error") {
    Group g = Group::builtin("toy");
    unsigned b = 6;

    // zero attempts can never succeed
    CHECK_THROWS_AS((void)map_recoverable(g, Int(5), b, 0), HaultError);

    // some values need more than one candidate offset; for those the
    // one-attempt search exhausts while the full search still lands
    unsigned needed_retry = 0;
    for (uint64_t v = 0; v < 64; ++v) {
        try {
            GroupPoint p = map_recoverable(g, v, b, 1);
            CHECK(p == map_recoverable(g, v, b));
        } catch (const HaultError& e) {
            CHECK(e.code() == Err::SearchExhausted);
            ++needed_retry;
            CHECK(decode_value(g, map_recoverable(g, v, b), b) == v);
        }
    }
    CHECK(needed_retry > 0);
}

TEST_CASE("recoverable map is deterministic and not additive") {
    Group g = Group::builtin("toy");
    CHECK(map_recoverable(g, 9, 6) == map_recoverable(g, 9, 6));
    GroupPoint p1 = map_recoverable(g, 1, 6);
    GroupPoint p2 = map_recoverable(g, 2, 6);
    GroupPoint p3 = map_recoverable(g, 3, 6);
    CHECK(g.add(p1, p2) != p3);
}

TEST_CASE("decode_value rejects the identity") {
    Group g = Group::builtin("toy");
    CHECK_THROWS_AS((void)decode_value(g, GroupPoint::infinity(), 6), HaultError);
}
