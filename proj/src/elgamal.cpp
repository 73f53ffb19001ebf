#include "hault/elgamal.hpp"

#include "hault/errors.hpp"

namespace hault {

Keypair keygen(const Group& g, Rng& rng) {
    Scalar sk = rng.nonzero_scalar(g);
    GroupPoint pk = g.mul(sk, g.generator());
    return Keypair{std::move(sk), std::move(pk)};
}

// no key validation; the constraint evaluator re-derives ciphertexts from
// statements that are only guaranteed well-formed, not honest
Ciphertext encrypt_unchecked(const Group& g, const GroupPoint& pk, const GroupPoint& m,
                             const Scalar& k) {
    GroupPoint c1 = g.mul(k, g.generator());
    GroupPoint c2 = g.add(g.mul(k, pk), m);
    return Ciphertext{std::move(c1), std::move(c2)};
}

Ciphertext encrypt(const Group& g, const GroupPoint& pk, const GroupPoint& m, const Scalar& k) {
    if (!g.check_point(pk)) fail(Err::InvalidKey, "public key fails the subgroup check");
    return encrypt_unchecked(g, pk, m, k);
}

std::pair<Ciphertext, Scalar> encrypt_random(const Group& g, const GroupPoint& pk,
                                             const GroupPoint& m, Rng& rng) {
    Scalar k = rng.nonzero_scalar(g);
    Ciphertext ct = encrypt(g, pk, m, k);
    return {std::move(ct), std::move(k)};
}

Ciphertext encrypt_transparent(const Group& g, const GroupPoint& pk, const GroupPoint& m) {
    return encrypt(g, pk, m, Scalar{0});
}

GroupPoint decrypt(const Group& g, const Scalar& sk, const Ciphertext& ct) {
    return g.sub(ct.c2, g.mul(sk, ct.c1));
}

Ciphertext ct_add(const Group& g, const Ciphertext& x, const Ciphertext& y) {
    return Ciphertext{g.add(x.c1, y.c1), g.add(x.c2, y.c2)};
}

Ciphertext ct_sub(const Group& g, const Ciphertext& x, const Ciphertext& y) {
    return Ciphertext{g.sub(x.c1, y.c1), g.sub(x.c2, y.c2)};
}

bool is_transparent(const Ciphertext& ct) { return ct.c1.identity; }

}  // namespace hault
