#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hault {

// 512 bits of stack storage: products of two 254-bit field elements fit
// without reduction, and nothing heap-allocates on the hot path.
using Int = boost::multiprecision::int512_t;

// value mod m, always in [0, m)
Int mod(const Int& value, const Int& m);

Int mulmod(const Int& x, const Int& y, const Int& m);

// x^e mod m for e >= 0
Int powmod(const Int& x, const Int& e, const Int& m);

// multiplicative inverse mod a prime; error InvalidPoint on x == 0 mod p
Int invmod(const Int& x, const Int& p);

// 1, -1 or 0: quadratic character of x mod an odd prime p
int legendre(const Int& x, const Int& p);

// Tonelli-Shanks; nullopt when x is a non-residue
std::optional<Int> sqrtmod(const Int& x, const Int& p);

bool is_probable_prime(const Int& n);

unsigned bit_length(const Int& n);

// little-endian fixed-width byte encoding; value must fit in width bytes
void int_to_le(const Int& value, uint8_t* out, size_t width);
Int le_to_int(const uint8_t* in, size_t width);

std::string to_decimal(const Int& value);
Int from_decimal(const std::string& text);  // error ParseError

std::string to_hex(const std::vector<uint8_t>& bytes);
std::vector<uint8_t> from_hex(const std::string& text);  // error ParseError

}  // namespace hault
