#include "hault/group.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hault/errors.hpp"

namespace hault {

// Builtin profile documents live in profiles.cpp; they mirror the checked-in
// files under profiles/.
extern const char* const kToyProfileJson;
extern const char* const kProductionProfileJson;

Scalar Group::sc_add(const Scalar& x, const Scalar& y) const { return Scalar{mod(x.v + y.v, r_)}; }
Scalar Group::sc_sub(const Scalar& x, const Scalar& y) const { return Scalar{mod(x.v - y.v, r_)}; }
Scalar Group::sc_mul(const Scalar& x, const Scalar& y) const { return Scalar{mulmod(x.v, y.v, r_)}; }
Scalar Group::sc_neg(const Scalar& x) const { return Scalar{mod(-x.v, r_)}; }

static GroupPoint normalize(Int x, Int y) {
    if (x == 0 && y == 1) return GroupPoint::infinity();
    return GroupPoint::affine(std::move(x), std::move(y));
}

GroupPoint Group::add(const GroupPoint& p, const GroupPoint& q) const {
    if (p.identity) return q;
    if (q.identity) return p;
    // x3 = (x1 y2 + y1 x2) / (1 + d x1 x2 y1 y2)
    // y3 = (y1 y2 - a x1 x2) / (1 - d x1 x2 y1 y2)
    Int xx = mulmod(p.x, q.x, q_);
    Int yy = mulmod(p.y, q.y, q_);
    Int t = mulmod(mulmod(d_, xx, q_), yy, q_);
    Int xnum = mod(mulmod(p.x, q.y, q_) + mulmod(p.y, q.x, q_), q_);
    Int ynum = mod(yy - mulmod(a_, xx, q_), q_);
    Int x3 = mulmod(xnum, invmod(1 + t, q_), q_);
    Int y3 = mulmod(ynum, invmod(1 - t, q_), q_);
    return normalize(std::move(x3), std::move(y3));
}

GroupPoint Group::negate(const GroupPoint& p) const {
    if (p.identity) return p;
    return normalize(mod(-p.x, q_), p.y);
}

GroupPoint Group::sub(const GroupPoint& p, const GroupPoint& q) const {
    return add(p, negate(q));
}

// Extended coordinates (X:Y:Z:T), T = XY/Z; one inversion per scalar_mul
// instead of two per addition. The unified formula below is complete for
// all curve points given a square / d non-square, so the ladder needs no
// doubling special case.
namespace {

struct ExtPoint {
    Int X, Y, Z, T;
};

ExtPoint to_ext(const GroupPoint& p) {
    if (p.identity) return {0, 1, 1, 0};
    return {p.x, p.y, 1, p.x * p.y};
}

ExtPoint ext_add(const ExtPoint& P, const ExtPoint& Q, const Int& q, const Int& a, const Int& d) {
    Int A = mulmod(P.X, Q.X, q);
    Int B = mulmod(P.Y, Q.Y, q);
    Int C = mulmod(mulmod(d, mod(P.T, q), q), mod(Q.T, q), q);
    Int D = mulmod(P.Z, Q.Z, q);
    Int E = mod(mulmod(P.X + P.Y, Q.X + Q.Y, q) - A - B, q);
    Int F = mod(D - C, q);
    Int G = mod(D + C, q);
    Int H = mod(B - mulmod(a, A, q), q);
    return {mulmod(E, F, q), mulmod(G, H, q), mulmod(F, G, q), mulmod(E, H, q)};
}

}  // namespace

GroupPoint Group::mul_int(const Int& s, const GroupPoint& p) const {
    if (s < 0) fail(Err::OutOfRange, "negative scalar");
    if (s == 0 || p.identity) return GroupPoint::infinity();
    ExtPoint base = to_ext(p);
    ExtPoint acc = {0, 1, 1, 0};
    for (unsigned i = bit_length(s); i-- > 0;) {
        acc = ext_add(acc, acc, q_, a_, d_);
        if (boost::multiprecision::bit_test(s, i)) acc = ext_add(acc, base, q_, a_, d_);
    }
    Int zinv = invmod(acc.Z, q_);
    return normalize(mulmod(acc.X, zinv, q_), mulmod(acc.Y, zinv, q_));
}

GroupPoint Group::mul(const Scalar& s, const GroupPoint& p) const { return mul_int(s.v, p); }

bool Group::on_curve(const GroupPoint& p) const {
    if (p.identity) return true;
    if (p.x < 0 || p.x >= q_ || p.y < 0 || p.y >= q_) return false;
    Int x2 = mulmod(p.x, p.x, q_);
    Int y2 = mulmod(p.y, p.y, q_);
    Int lhs = mod(mulmod(a_, x2, q_) + y2, q_);
    Int rhs = mod(1 + mulmod(mulmod(d_, x2, q_), y2, q_), q_);
    return lhs == rhs;
}

bool Group::check_point(const GroupPoint& p) const {
    if (p.identity) return false;
    if (p.x == 0 && p.y == 1) return false;
    if (p.x < 0 || p.x >= q_ || p.y < 0 || p.y >= q_) return false;
    if (!on_curve(p)) return false;
    return mul_int(r_, p).identity;
}

Int Group::lsb(const GroupPoint& p, unsigned b) const {
    if (b == 0 || b >= q_bits_) fail(Err::OutOfRange, "bit width outside (0, field bits)");
    if (p.identity) fail(Err::IdentityPoint, "no y coordinate on the identity");
    return p.y & ((Int(1) << b) - 1);
}

void Group::validate_value_bits(unsigned b) const {
    if (b == 0 || b > 40)
        fail(Err::OutOfRange, "value bit width must be in [1, 40]");
    if (b + 16 >= q_bits_)
        fail(Err::OutOfRange,
             "value bit width leaves less than 16 bits of search headroom in the field");
}

std::vector<uint8_t> Group::encode_point(const GroupPoint& p) const {
    std::vector<uint8_t> out(point_bytes(), 0);
    if (p.identity) {
        out[0] = 1;
        return out;
    }
    out[0] = 0;
    int_to_le(p.x, out.data() + 1, coord_bytes_);
    int_to_le(p.y, out.data() + 1 + coord_bytes_, coord_bytes_);
    return out;
}

GroupPoint Group::decode_point(const uint8_t* data, size_t len) const {
    if (len != point_bytes()) fail(Err::ParseError, "bad point encoding length");
    if (data[0] == 1) {
        for (size_t i = 1; i < len; ++i)
            if (data[i] != 0) fail(Err::ParseError, "nonzero coordinates on identity encoding");
        return GroupPoint::infinity();
    }
    if (data[0] != 0) fail(Err::ParseError, "bad identity flag");
    Int x = le_to_int(data + 1, coord_bytes_);
    Int y = le_to_int(data + 1 + coord_bytes_, coord_bytes_);
    if (x >= q_ || y >= q_) fail(Err::ParseError, "coordinate not reduced");
    if (x == 0 && y == 1) fail(Err::ParseError, "identity encoded without flag");
    return GroupPoint::affine(std::move(x), std::move(y));
}

std::vector<uint8_t> Group::encode_scalar(const Scalar& s) const {
    std::vector<uint8_t> out(scalar_bytes_, 0);
    int_to_le(s.v, out.data(), scalar_bytes_);
    return out;
}

Scalar Group::decode_scalar(const uint8_t* data, size_t len) const {
    if (len != scalar_bytes_) fail(Err::ParseError, "bad scalar encoding length");
    Int v = le_to_int(data, len);
    if (v >= r_) fail(Err::ParseError, "scalar not reduced");
    return Scalar{std::move(v)};
}

void Group::validate() const {
    if (q_ <= 3 || !is_probable_prime(q_)) fail(Err::InvalidProfile, "field modulus not prime");
    if (q_bits_ > 255) fail(Err::InvalidProfile, "field modulus too wide");
    if (!is_probable_prime(r_)) fail(Err::InvalidProfile, "subgroup order not prime");
    if (h_ < 1) fail(Err::InvalidProfile, "bad cofactor");
    Int a = mod(a_, q_), d = mod(d_, q_);
    if (a == 0 || d == 0 || a == d) fail(Err::InvalidProfile, "degenerate curve coefficients");
    if (legendre(a, q_) != 1)
        fail(Err::InvalidProfile, "coefficient a must be a square for complete addition");
    if (legendre(d, q_) != -1)
        fail(Err::InvalidProfile, "coefficient d must be a non-square for complete addition");
    // cofactor * r must be a plausible group order for this field
    Int n = h_ * r_;
    Int slack = 2 * boost::multiprecision::sqrt(q_) + 1;
    Int diff = n - (q_ + 1);
    if (diff < 0) diff = -diff;
    if (diff > slack) fail(Err::InvalidProfile, "cofactor*order outside the Hasse interval");
    if (gen_.identity || !on_curve(gen_)) fail(Err::InvalidProfile, "generator not on curve");
    if (!mul_int(r_, gen_).identity) fail(Err::InvalidProfile, "generator order does not divide r");
}

static Int field_from_json(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        fail(Err::ParseError, std::string("profile missing field ") + key);
    return from_decimal(j[key].get<std::string>());
}

Group Group::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad profile json: ") + e.what());
    }
    Group g;
    if (!j.contains("name") || !j["name"].is_string())
        fail(Err::ParseError, "profile missing field name");
    g.name_ = j["name"].get<std::string>();
    g.q_ = field_from_json(j, "q");
    g.a_ = field_from_json(j, "a");
    g.d_ = field_from_json(j, "d");
    g.r_ = field_from_json(j, "r");
    g.h_ = field_from_json(j, "cofactor");
    Int gx = field_from_json(j, "gx");
    Int gy = field_from_json(j, "gy");
    g.gen_ = GroupPoint::affine(std::move(gx), std::move(gy));
    g.q_bits_ = bit_length(g.q_);
    g.coord_bytes_ = (g.q_bits_ + 7) / 8;
    g.scalar_bytes_ = (bit_length(g.r_) + 7) / 8;
    g.validate();
    return g;
}

Group Group::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Err::IoError, "cannot open profile file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

Group Group::builtin(const std::string& name) {
    if (name == "toy") return from_json_text(kToyProfileJson);
    if (name == "production") return from_json_text(kProductionProfileJson);
    fail(Err::InvalidProfile, "unknown builtin profile " + name);
}

Group Group::resolve(const std::string& name_or_path) {
    if (name_or_path == "toy" || name_or_path == "production") return builtin(name_or_path);
    return load_file(name_or_path);
}

}  // namespace hault
