#pragma once

#include "hault/group.hpp"

namespace hault {

// The two value-to-point embeddings.
//
// map_homomorphic(v) = v*G: addition of points adds values, but reading a
// value back means solving a discrete log.
//
// map_recoverable(v) finds a subgroup point whose low b y-bits equal v, so
// the holder of the matching secret key reads the value directly off the
// decrypted point. No homomorphism survives this embedding.

// v in [0, r); v = 0 gives the identity
GroupPoint map_homomorphic(const Group& g, const Int& v);

constexpr unsigned kRecoverableSearchBound = 1u << 16;

// Deterministic search. Candidate y = v + t*2^b for t = 0, 1, 2, ...:
// solve the curve equation for x (smaller root), then clear the cofactor;
// accept the cleared point if it kept the low bits, otherwise accept the
// uncleared point only when it already lies in the subgroup. Errors:
// OutOfRange unless 0 <= v < 2^b (and b valid for the profile),
// SearchExhausted when the attempt bound runs out.
GroupPoint map_recoverable(const Group& g, const Int& v, unsigned b,
                           unsigned max_attempts = kRecoverableSearchBound);

// low b y-bits of a decrypted point; errors IdentityPoint on the identity
Int decode_value(const Group& g, const GroupPoint& m, unsigned b);

}  // namespace hault
