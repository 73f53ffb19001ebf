#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include "hault/errors.hpp"
#include "hault/group.hpp"
#include "hault/rng.hpp"
#include "oracles.hpp"

using namespace hault;

namespace {

nlohmann::json toy_json() {
    return nlohmann::json::parse(R"({
        "name": "toy", "q": "8388617", "a": "9", "d": "22",
        "r": "524309", "cofactor": "16",
        "gx": "4370277", "gy": "632951"
    })");
}

Group patched_toy(const char* field, const std::string& value) {
    nlohmann::json j = toy_json();
    j[field] = value;
    return Group::from_json_text(j.dump());
}

}  // namespace

TEST_CASE("scalar arithmetic matches integer arithmetic mod r") {
    Group g = Group::builtin("toy");
    const Int& r = g.order();
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Int a = Int(rng.next_u64()) % r;
        Int b = Int(rng.next_u64()) % r;
        CHECK(g.sc_add(Scalar{a}, Scalar{b}).v == (a + b) % r);
        CHECK(g.sc_sub(Scalar{a}, Scalar{b}).v == mod(a - b, r));
        CHECK(g.sc_mul(Scalar{a}, Scalar{b}).v == a * b % r);
        CHECK(g.sc_neg(Scalar{a}).v == mod(-a, r));
    }
    CHECK(g.scalar(r).v == 0);
    CHECK(g.scalar(r + 5).v == 5);
    CHECK(g.scalar(Int(-1)).v == r - 1);
}

TEST_CASE("group law identities") {
    for (const char* name : {"toy", "production"}) {
        Group g = Group::builtin(name);
        const GroupPoint& G = g.generator();
        GroupPoint O = GroupPoint::infinity();

        CHECK(g.add(O, G) == G);
        CHECK(g.add(G, O) == G);
        CHECK(g.add(O, O) == O);
        CHECK(g.add(G, g.negate(G)) == O);
        CHECK(g.sub(G, G) == O);
        CHECK(g.negate(O) == O);

        GroupPoint g2 = g.add(G, G);
        GroupPoint g3 = g.add(g2, G);
        GroupPoint g5 = g.add(g2, g3);
        CHECK(g5 == oracle::repeated_add(g, 5, G));

        // commutativity and associativity on random multiples
        Rng rng(7);
        for (int i = 0; i < 20; ++i) {
            GroupPoint p = g.mul(rng.scalar(g), G);
            GroupPoint q = g.mul(rng.scalar(g), G);
            GroupPoint w = g.mul(rng.scalar(g), G);
            CHECK(g.add(p, q) == g.add(q, p));
            CHECK(g.add(g.add(p, q), w) == g.add(p, g.add(q, w)));
        }
    }
}

TEST_CASE("scalar multiplication matches the affine oracle") {
    for (const char* name : {"toy", "production"}) {
        Group g = Group::builtin(name);
        const GroupPoint& G = g.generator();
        Rng rng(99);

        for (int i = 0; i < 30; ++i) {
            uint64_t s = rng.uniform(0, 1023);
            CHECK(g.mul(g.scalar_u64(s), G) == oracle::repeated_add(g, s, G));
        }
        for (int i = 0; i < 10; ++i) {
            Scalar s = rng.scalar(g);
            CHECK(g.mul(s, G) == oracle::ladder_mul(g, s.v, G));
        }
        CHECK(g.mul(g.scalar(g.order() - 1), G) == g.negate(G));
        CHECK(g.mul(g.scalar(g.order()), G) == GroupPoint::infinity());
        CHECK(g.mul_int(g.order() * 3 + 2, G) == g.add(G, G));
    }
}

TEST_CASE("check_point accepts exactly the nonidentity subgroup") {
    Group g = Group::builtin("toy");
    const GroupPoint& G = g.generator();

    CHECK(g.check_point(G));
    CHECK_FALSE(g.check_point(GroupPoint::infinity()));

    // (0, -1) has order 2, so it lies in the cofactor part
    GroupPoint two_torsion = GroupPoint::affine(0, g.field_modulus() - 1);
    CHECK(g.on_curve(two_torsion));
    CHECK_FALSE(g.check_point(two_torsion));

    // off-curve and non-canonical coordinates
    CHECK_FALSE(g.check_point(GroupPoint::affine(1, 1)));
    CHECK_FALSE(g.check_point(GroupPoint::affine(G.x + g.field_modulus(), G.y)));
    CHECK_FALSE(g.check_point(GroupPoint::affine(-G.x, G.y)));

    // a pile of honest subgroup points all pass
    Rng rng(5);
    for (int i = 0; i < 2000; ++i) {
        GroupPoint p = g.mul(rng.nonzero_scalar(g), G);
        CHECK(g.check_point(p));
    }
}

TEST_CASE("lsb reads the low y bits") {
    Group g = Group::builtin("toy");
    CHECK(g.lsb(GroupPoint::affine(3, 13), 3) == 5);  // 13 = 0b1101
    CHECK(g.lsb(GroupPoint::affine(3, 13), 1) == 1);
    CHECK(g.lsb(g.generator(), 6) == (g.generator().y & 63));
    CHECK_THROWS_AS((void)g.lsb(GroupPoint::infinity(), 3), HaultError);
    CHECK_THROWS_AS((void)g.lsb(g.generator(), 0), HaultError);
    CHECK_THROWS_AS((void)g.lsb(g.generator(), g.field_bits()), HaultError);
}

TEST_CASE("value bit widths respect the field margin") {
    Group toy = Group::builtin("toy");
    toy.validate_value_bits(6);
    toy.validate_value_bits(7);
    CHECK_THROWS_AS(toy.validate_value_bits(0), HaultError);
    CHECK_THROWS_AS(toy.validate_value_bits(8), HaultError);  // 8 + 16 = q_bits

    Group prod = Group::builtin("production");
    prod.validate_value_bits(32);
    prod.validate_value_bits(40);
    CHECK_THROWS_AS(prod.validate_value_bits(41), HaultError);  // u64 sum headroom cap
}

TEST_CASE("point and scalar wire encodings round-trip") {
    for (const char* name : {"toy", "production"}) {
        Group g = Group::builtin(name);
        Rng rng(11);
        for (int i = 0; i < 50; ++i) {
            GroupPoint p = g.mul(rng.scalar(g), g.generator());
            std::vector<uint8_t> bytes = g.encode_point(p);
            CHECK(bytes.size() == g.point_bytes());
            CHECK(g.decode_point(bytes.data(), bytes.size()) == p);

            Scalar s = rng.scalar(g);
            std::vector<uint8_t> sb = g.encode_scalar(s);
            CHECK(sb.size() == g.scalar_bytes());
            CHECK(g.decode_scalar(sb.data(), sb.size()) == s);
        }

        std::vector<uint8_t> id = g.encode_point(GroupPoint::infinity());
        CHECK(g.decode_point(id.data(), id.size()) == GroupPoint::infinity());

        // flag byte says affine but coordinates spell the identity
        std::vector<uint8_t> fake(g.point_bytes(), 0);
        fake[0] = 0;
        fake[1 + g.coord_bytes()] = 1;  // (0, 1) little-endian
        CHECK_THROWS_AS((void)g.decode_point(fake.data(), fake.size()), HaultError);

        std::vector<uint8_t> gb = g.encode_point(g.generator());
        CHECK_THROWS_AS((void)g.decode_point(gb.data(), gb.size() - 1), HaultError);

        // scalar encodings at and past the group order are rejected
        std::vector<uint8_t> rb(g.scalar_bytes());
        int_to_le(g.order(), rb.data(), rb.size());
        CHECK_THROWS_AS((void)g.decode_scalar(rb.data(), rb.size()), HaultError);
    }
}

TEST_CASE("profile validation rejects broken parameter sets") {
    CHECK_THROWS_AS(Group::from_json_text("not json"), HaultError);
    CHECK_THROWS_AS(Group::from_json_text("{}"), HaultError);
    CHECK_THROWS_AS(patched_toy("q", "8388616"), HaultError);   // composite field
    CHECK_THROWS_AS(patched_toy("r", "524310"), HaultError);    // composite order
    CHECK_THROWS_AS(patched_toy("a", "22"), HaultError);        // a = d
    CHECK_THROWS_AS(patched_toy("a", "7"), HaultError);         // a must be a square
    CHECK_THROWS_AS(patched_toy("d", "9"), HaultError);         // d must be a non-square
    CHECK_THROWS_AS(patched_toy("cofactor", "32"), HaultError); // h*r outside Hasse bounds
    CHECK_THROWS_AS(patched_toy("gx", "4370278"), HaultError);  // generator off the curve
    CHECK_THROWS_AS(Group::load_file("/nonexistent/profile.json"), HaultError);
}

TEST_CASE("builtin profiles match the parameter files") {
    for (const char* name : {"toy", "production"}) {
        Group b = Group::builtin(name);
        Group f = Group::load_file(std::string(HAULT_PROFILE_DIR) + "/" + name + ".json");
        CHECK(b.name() == f.name());
        CHECK(b.field_modulus() == f.field_modulus());
        CHECK(b.coeff_a() == f.coeff_a());
        CHECK(b.coeff_d() == f.coeff_d());
        CHECK(b.order() == f.order());
        CHECK(b.cofactor() == f.cofactor());
        CHECK(b.generator() == f.generator());
    }
}

TEST_CASE("profile parameters have the documented sizes") {
    Group toy = Group::builtin("toy");
    CHECK(toy.field_bits() == 24);
    CHECK(bit_length(toy.order()) == 20);

    Group prod = Group::builtin("production");
    CHECK(prod.field_bits() == 254);
    CHECK(bit_length(prod.order()) == 251);
    CHECK(prod.order() > (Int(1) << 250));
}
