#pragma once

// Slow reference implementations the tests check the library against. These
// deliberately use only the affine add (the complete formula) so the
// extended-coordinates fast path in Group::mul is tested against an
// independent computation, not against itself.

#include <cstdint>

#include "hault/group.hpp"

namespace hault::oracle {

// s*P by repeated affine addition, one add per loop step. Fine for s up to
// a few thousand; tests that need bigger scalars use ladder_mul below.
inline GroupPoint repeated_add(const Group& g, uint64_t s, const GroupPoint& p) {
    GroupPoint acc = GroupPoint::infinity();
    for (uint64_t i = 0; i < s; ++i) acc = g.add(acc, p);
    return acc;
}

// s*P by MSB-first double-and-add built from the affine formula only
inline GroupPoint ladder_mul(const Group& g, const Int& s, const GroupPoint& p) {
    if (s == 0) return GroupPoint::infinity();
    GroupPoint acc = GroupPoint::infinity();
    for (unsigned i = bit_length(s); i-- > 0;) {
        acc = g.add(acc, acc);
        if (boost::multiprecision::bit_test(s, i)) acc = g.add(acc, p);
    }
    return acc;
}

}  // namespace hault::oracle
