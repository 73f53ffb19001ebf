#include "hault/bigint.hpp"

#include <boost/multiprecision/miller_rabin.hpp>
#include <sstream>

#include "hault/errors.hpp"

namespace hault {

Int mod(const Int& value, const Int& m) {
    Int r = value % m;
    if (r < 0) r += m;
    return r;
}

Int mulmod(const Int& x, const Int& y, const Int& m) { return x * y % m; }

Int powmod(const Int& x, const Int& e, const Int& m) {
    return boost::multiprecision::powm(mod(x, m), e, m);
}

Int invmod(const Int& x, const Int& p) {
    Int r = mod(x, p);
    if (r == 0) fail(Err::InvalidPoint, "inverse of zero");
    return powmod(r, p - 2, p);
}

int legendre(const Int& x, const Int& p) {
    Int r = mod(x, p);
    if (r == 0) return 0;
    Int l = powmod(r, (p - 1) / 2, p);
    return l == 1 ? 1 : -1;
}

std::optional<Int> sqrtmod(const Int& x, const Int& p) {
    Int n = mod(x, p);
    if (n == 0) return Int(0);
    if (legendre(n, p) != 1) return std::nullopt;
    if (p % 4 == 3) return powmod(n, (p + 1) / 4, p);
    // Tonelli-Shanks for p = 1 mod 4
    Int s = p - 1;
    unsigned e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    Int z = 2;
    while (legendre(z, p) != -1) ++z;
    unsigned m = e;
    Int c = powmod(z, s, p);
    Int t = powmod(n, s, p);
    Int r = powmod(n, (s + 1) / 2, p);
    while (t != 1) {
        Int tt = t;
        unsigned i = 0;
        while (tt != 1) {
            tt = mulmod(tt, tt, p);
            ++i;
        }
        Int b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    // miller_rabin_test needs an unbounded type for its internal sampling
    boost::multiprecision::cpp_int wide(n);
    return boost::multiprecision::miller_rabin_test(wide, 40);
}

unsigned bit_length(const Int& n) {
    if (n == 0) return 0;
    return boost::multiprecision::msb(n) + 1;
}

void int_to_le(const Int& value, uint8_t* out, size_t width) {
    if (value < 0 || bit_length(value) > 8 * width)
        fail(Err::OutOfRange, "integer does not fit encoding width");
    Int v = value;
    for (size_t i = 0; i < width; ++i) {
        out[i] = static_cast<uint8_t>(v & 0xff);
        v >>= 8;
    }
}

Int le_to_int(const uint8_t* in, size_t width) {
    Int v = 0;
    for (size_t i = width; i-- > 0;) {
        v <<= 8;
        v += in[i];
    }
    return v;
}

std::string to_decimal(const Int& value) {
    std::ostringstream os;
    os << value;
    return os.str();
}

Int from_decimal(const std::string& text) {
    if (text.empty()) fail(Err::ParseError, "empty integer literal");
    size_t i = text[0] == '-' ? 1 : 0;
    if (i == text.size()) fail(Err::ParseError, "bad integer literal");
    for (; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            fail(Err::ParseError, "bad integer literal: " + text);
    try {
        return Int(text);
    } catch (const std::exception&) {
        fail(Err::ParseError, "bad integer literal: " + text);
    }
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::string to_hex(const std::vector<uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

std::vector<uint8_t> from_hex(const std::string& text) {
    if (text.size() % 2 != 0) fail(Err::ParseError, "odd-length hex string");
    std::vector<uint8_t> out(text.size() / 2);
    for (size_t i = 0; i < out.size(); ++i) {
        int hi = hex_nibble(text[2 * i]);
        int lo = hex_nibble(text[2 * i + 1]);
        if (hi < 0 || lo < 0) fail(Err::ParseError, "bad hex string");
        out[i] = static_cast<uint8_t>(hi << 4 | lo);
    }
    return out;
}

}  // namespace hault
