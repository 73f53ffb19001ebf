#pragma once

#include <cstdint>
#include <vector>

#include "hault/elgamal.hpp"
#include "hault/mapping.hpp"

namespace hault {

// One confidential balance entry. The same value is carried twice: once
// under the recoverable embedding (the owner reads it after decrypting) and
// once under the homomorphic one (aggregates and in-proof arithmetic work on
// these). A wallet's balance is the sum over all its notes.
struct Note {
    Ciphertext recov_ct;  // Enc(pk, point with value in its low y-bits)
    Ciphertext hom_ct;    // Enc(pk, value * G)

    bool operator==(const Note&) const = default;
};

struct Balance {
    uint64_t value = 0;
    Ciphertext aggregate;  // sum of the homomorphic halves
};

// error OutOfRange unless v < 2^b
Note make_note(const Group& g, unsigned b, const GroupPoint& pk, uint64_t v, const Scalar& k1,
               const Scalar& k2);

// componentwise sum of hom_ct; error EmptyNoteSet on an empty list
Ciphertext aggregate_notes(const Group& g, const std::vector<Note>& notes);

// Decrypts every note, decodes the per-note values, and cross-checks the sum
// against the decrypted aggregate: sum * G must equal Dec(sk, aggregate).
// Errors: EmptyNoteSet; OverflowedBalance if the sum reaches 2^b;
// InconsistentNotes when the cross-check fails (wrong key or corrupt state).
Balance decrypt_balance(const Group& g, unsigned b, const Scalar& sk,
                        const std::vector<Note>& notes);

}  // namespace hault
