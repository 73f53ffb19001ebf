#pragma once

#include <utility>

#include "hault/group.hpp"
#include "hault/rng.hpp"

namespace hault {

// Lifted ElGamal over the profile's prime-order subgroup. Messages are group
// points; addition of ciphertexts adds the plaintexts and the randomness.
struct Ciphertext {
    GroupPoint c1;  // k*G
    GroupPoint c2;  // k*pk + M

    bool operator==(const Ciphertext&) const = default;
};

struct Keypair {
    Scalar sk;      // in [1, r)
    GroupPoint pk;  // sk*G
};

Keypair keygen(const Group& g, Rng& rng);

// pk must pass check_point (error InvalidKey); k in [0, r). k = 0 yields the
// transparent ciphertext (O, M).
Ciphertext encrypt(const Group& g, const GroupPoint& pk, const GroupPoint& m, const Scalar& k);

// same computation without the key check; the constraint evaluator needs to
// stay total over adversarial statements
Ciphertext encrypt_unchecked(const Group& g, const GroupPoint& pk, const GroupPoint& m,
                             const Scalar& k);

// samples k from [1, r) and returns it alongside the ciphertext
std::pair<Ciphertext, Scalar> encrypt_random(const Group& g, const GroupPoint& pk,
                                             const GroupPoint& m, Rng& rng);

// the k = 0 ciphertext (O, M): publicly readable, still aggregatable
Ciphertext encrypt_transparent(const Group& g, const GroupPoint& pk, const GroupPoint& m);

// M = C2 - sk*C1
GroupPoint decrypt(const Group& g, const Scalar& sk, const Ciphertext& ct);

Ciphertext ct_add(const Group& g, const Ciphertext& x, const Ciphertext& y);
Ciphertext ct_sub(const Group& g, const Ciphertext& x, const Ciphertext& y);

bool is_transparent(const Ciphertext& ct);

}  // namespace hault
