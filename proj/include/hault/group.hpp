#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hault/bigint.hpp"

namespace hault {

// Affine point on a twisted Edwards curve a*x^2 + y^2 = 1 + d*x^2*y^2.
// The identity is carried explicitly; a canonical identity stores (0, 1),
// which is also its affine representation, so the complete addition formula
// needs no special case for it.
struct GroupPoint {
    Int x = 0;
    Int y = 1;
    bool identity = true;

    static GroupPoint infinity() { return GroupPoint{}; }
    static GroupPoint affine(Int px, Int py) {
        return GroupPoint{std::move(px), std::move(py), false};
    }

    bool operator==(const GroupPoint&) const = default;
};

// Scalar in [0, r). Construct through Group::scalar so the reduction
// invariant holds; raw access is for serialization and tests.
struct Scalar {
    Int v = 0;

    bool operator==(const Scalar&) const = default;
};

// A loaded curve profile: field, coefficients, subgroup order, cofactor and
// generator, plus the group operations over them. Validated on construction:
// q and r prime, a a square and d a non-square mod q (the affine addition
// formula is complete only then), cofactor*r inside the Hasse interval,
// G on the curve with r*G = O and G != O.
class Group {
public:
    static Group from_json_text(const std::string& text);
    static Group load_file(const std::string& path);
    static Group builtin(const std::string& name);  // "toy" or "production"
    // builtin name, else a parameter file path
    static Group resolve(const std::string& name_or_path);

    const std::string& name() const { return name_; }
    const Int& field_modulus() const { return q_; }
    const Int& coeff_a() const { return a_; }
    const Int& coeff_d() const { return d_; }
    const Int& order() const { return r_; }
    const Int& cofactor() const { return h_; }
    const GroupPoint& generator() const { return gen_; }
    unsigned field_bits() const { return q_bits_; }
    size_t coord_bytes() const { return coord_bytes_; }
    size_t point_bytes() const { return 1 + 2 * coord_bytes_; }
    size_t scalar_bytes() const { return scalar_bytes_; }

    // scalar field, all results reduced into [0, r)
    Scalar scalar(const Int& value) const { return Scalar{mod(value, r_)}; }
    Scalar scalar_u64(uint64_t value) const { return scalar(Int(value)); }
    Scalar sc_add(const Scalar& x, const Scalar& y) const;
    Scalar sc_sub(const Scalar& x, const Scalar& y) const;
    Scalar sc_mul(const Scalar& x, const Scalar& y) const;
    Scalar sc_neg(const Scalar& x) const;

    // group law (complete; callers pass curve points or the identity)
    GroupPoint add(const GroupPoint& p, const GroupPoint& q) const;
    GroupPoint sub(const GroupPoint& p, const GroupPoint& q) const;
    GroupPoint negate(const GroupPoint& p) const;
    GroupPoint mul(const Scalar& s, const GroupPoint& p) const;
    GroupPoint mul_int(const Int& s, const GroupPoint& p) const;

    bool on_curve(const GroupPoint& p) const;

    // Prime-subgroup membership test, total over arbitrary coordinate pairs:
    // false for the identity, for non-canonical or off-curve coordinates,
    // and for points not killed by r; true otherwise.
    bool check_point(const GroupPoint& p) const;

    // Low b bits of the y coordinate. Errors: IdentityPoint on the identity,
    // OutOfRange unless 0 < b < field_bits().
    Int lsb(const GroupPoint& p, unsigned b) const;

    // Value bit widths the profile supports: 0 < b, b + 16 < field_bits(),
    // and b <= 40 so values and supply sums stay inside uint64 arithmetic.
    void validate_value_bits(unsigned b) const;

    // wire format: identity flag byte, then x and y little-endian fixed width
    std::vector<uint8_t> encode_point(const GroupPoint& p) const;
    GroupPoint decode_point(const uint8_t* data, size_t len) const;
    std::vector<uint8_t> encode_scalar(const Scalar& s) const;
    Scalar decode_scalar(const uint8_t* data, size_t len) const;

private:
    Group() = default;
    void validate() const;

    std::string name_;
    Int q_, a_, d_, r_, h_;
    GroupPoint gen_;
    unsigned q_bits_ = 0;
    size_t coord_bytes_ = 0, scalar_bytes_ = 0;
};

}  // namespace hault
