#include "hault/notes.hpp"

#include "hault/errors.hpp"

namespace hault {

Note make_note(const Group& g, unsigned b, const GroupPoint& pk, uint64_t v, const Scalar& k1,
               const Scalar& k2) {
    g.validate_value_bits(b);
    if (v >> b != 0) fail(Err::OutOfRange, "note value outside [0, 2^b)");
    GroupPoint recov = map_recoverable(g, Int(v), b);
    GroupPoint hom = map_homomorphic(g, Int(v));
    return Note{encrypt(g, pk, recov, k1), encrypt(g, pk, hom, k2)};
}

Ciphertext aggregate_notes(const Group& g, const std::vector<Note>& notes) {
    if (notes.empty()) fail(Err::EmptyNoteSet, "cannot aggregate zero notes");
    Ciphertext acc = notes[0].hom_ct;
    for (size_t i = 1; i < notes.size(); ++i) acc = ct_add(g, acc, notes[i].hom_ct);
    return acc;
}

Balance decrypt_balance(const Group& g, unsigned b, const Scalar& sk,
                        const std::vector<Note>& notes) {
    if (notes.empty()) fail(Err::EmptyNoteSet, "cannot decrypt zero notes");
    Int sum = 0;
    for (const Note& n : notes) {
        GroupPoint m = decrypt(g, sk, n.recov_ct);
        if (m.identity) fail(Err::InconsistentNotes, "note decrypts to the identity");
        sum += decode_value(g, m, b);
    }
    if (sum >> b != 0) fail(Err::OverflowedBalance, "note values sum past 2^b");
    Ciphertext agg = aggregate_notes(g, notes);
    // sum*G must match the aggregate's plaintext, else the per-note values lie
    if (map_homomorphic(g, sum) != decrypt(g, sk, agg))
        fail(Err::InconsistentNotes, "note sum disagrees with the homomorphic aggregate");
    return Balance{static_cast<uint64_t>(sum), std::move(agg)};
}

}  // namespace hault
