#include "hault/mapping.hpp"

#include "hault/errors.hpp"

namespace hault {

GroupPoint map_homomorphic(const Group& g, const Int& v) {
    if (v < 0 || v >= g.order()) fail(Err::OutOfRange, "value outside [0, r)");
    return g.mul_int(v, g.generator());
}

GroupPoint map_recoverable(const Group& g, const Int& v, unsigned b, unsigned max_attempts) {
    g.validate_value_bits(b);
    Int step = Int(1) << b;
    if (v < 0 || v >= step) fail(Err::OutOfRange, "value outside [0, 2^b)");
    const Int& q = g.field_modulus();
    for (unsigned t = 0; t < max_attempts; ++t) {
        Int y = v + t * step;
        if (y >= q) break;
        // x^2 = (1 - y^2) / (a - d y^2)
        Int y2 = mulmod(y, y, q);
        Int den = mod(g.coeff_a() - mulmod(g.coeff_d(), y2, q), q);
        if (den == 0) continue;
        Int x2 = mulmod(mod(1 - y2, q), invmod(den, q), q);
        auto root = sqrtmod(x2, q);
        if (!root) continue;
        Int x = std::min(*root, mod(-*root, q));
        GroupPoint p = x == 0 && y == 1 ? GroupPoint::infinity() : GroupPoint::affine(x, y);
        GroupPoint cleared = g.mul_int(g.cofactor(), p);
        if (!cleared.identity && g.lsb(cleared, b) == v) return cleared;
        if (g.check_point(p)) return p;
    }
    fail(Err::SearchExhausted, "no subgroup point found for value " + to_decimal(v));
}

Int decode_value(const Group& g, const GroupPoint& m, unsigned b) {
    return g.lsb(m, b);
}

}  // namespace hault
