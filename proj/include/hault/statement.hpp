#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hault/elgamal.hpp"
#include "hault/notes.hpp"

namespace hault {

// Public inputs of one confidential transfer. "sender" is the account being
// debited (the auditor plays that part in a forced transfer), "amount" the
// value moving, "new" the sender's post-transfer balance. Each value rides in
// two ciphertexts, one per embedding; the auditor receives its own copies of
// all four.
struct TransferStatement {
    GroupPoint sender_pk;
    GroupPoint recipient_pk;
    GroupPoint auditor_pk;
    Ciphertext sender_new_recov;       // sender's new balance, recoverable, under sender_pk
    Ciphertext sender_new_hom;         // sender's new balance, homomorphic, under sender_pk
    Ciphertext recipient_amount_recov; // amount, recoverable, under recipient_pk
    Ciphertext recipient_amount_hom;   // amount, homomorphic, under recipient_pk
    Ciphertext auditor_amount_recov;
    Ciphertext auditor_amount_hom;
    Ciphertext auditor_new_recov;
    Ciphertext auditor_new_hom;
    Ciphertext sender_old_hom;         // aggregate of the sender's stored notes

    bool operator==(const TransferStatement&) const = default;
};

// Secret side: the sender key, the two recoverable points, the old balance,
// and one randomness scalar per ciphertext the constraints re-derive.
struct TransferWitness {
    Scalar sender_sk;
    GroupPoint amount_recov;       // point carrying the amount in its low y-bits
    GroupPoint new_balance_recov;  // point carrying the new balance
    uint64_t old_balance = 0;
    Scalar r_sender_new_recov;
    Scalar r_sender_amount_hom;    // randomness of the Enc(sender_pk, amount*G) being subtracted
    Scalar r_recipient_amount_recov;
    Scalar r_recipient_amount_hom;
    Scalar r_auditor_amount_recov;
    Scalar r_auditor_amount_hom;
    Scalar r_auditor_new_recov;
    Scalar r_auditor_new_hom;
};

// The constraint list, in evaluation order. Four groups: produce the new
// note, open the old balance, derive the new balance, mirror everything for
// the auditor. The documentation test pins this enumeration one-for-one.
enum class ConstraintId {
    // new note
    AmountPointValid,          // amount_recov passes the subgroup check
    AmountInRange,             // amount = lsb_b(amount_recov) lands in [0, 2^b)
    RecipientRecovMatches,     // recipient_amount_recov re-derives
    RecipientHomMatches,       // recipient_amount_hom re-derives
    // old notes
    OldBalanceInRange,         // old_balance in [0, 2^b)
    SenderKeyMatches,          // sender_pk = sender_sk * G
    OldBalanceOpens,           // old_balance*G = Dec(sender_sk, sender_old_hom)
    // new balance
    NewPointValid,             // new_balance_recov passes the subgroup check
    NewValueBitsMatch,         // old_balance - amount = lsb_b(new_balance_recov), in [0, 2^b)
    HomSubtractionMatches,     // sender_new_hom = sender_old_hom - Enc(sender_pk, amount*G)
    NewRecovMatches,           // sender_new_recov re-derives
    // auditor
    AuditorNewRecovMatches,
    AuditorNewHomMatches,
    AuditorAmountRecovMatches,
    AuditorAmountHomMatches,
};

struct ConstraintInfo {
    ConstraintId id;
    const char* group;
    const char* name;
};

// fixed enumeration backing the documentation test
const std::vector<ConstraintInfo>& constraint_list();
const char* constraint_name(ConstraintId id);

struct ConstraintResult {
    ConstraintId id;
    bool ok;
};

// Evaluates every constraint in enumeration order. Total: never throws on
// any well-formed statement/witness pair; dishonest pairs simply fail the
// relevant entries. Callers must have validated statement well-formedness
// (validate_statement) first.
std::vector<ConstraintResult> evaluate_constraints(const Group& g, unsigned b,
                                                   const TransferStatement& st,
                                                   const TransferWitness& wit);

// Well-formedness: the three keys pass the subgroup check and every
// ciphertext component is a canonical curve point or the identity.
// Errors InvalidKey / InvalidPoint.
void validate_statement(const Group& g, const TransferStatement& st);

// fixed-order wire encoding; the proof digest commits to exactly these bytes
std::vector<uint8_t> serialize_statement(const Group& g, const TransferStatement& st);
TransferStatement deserialize_statement(const Group& g, const std::vector<uint8_t>& bytes);

// SHA-256 over the serialized statement plus a length-prefixed caller tag,
// so a proof is bound to both the public inputs and the submitting account.
std::array<uint8_t, 32> statement_digest(const Group& g, const TransferStatement& st,
                                         std::string_view caller_tag);

struct TransferProof {
    std::string backend;
    std::vector<uint8_t> payload;
};

class ProofBackend {
public:
    virtual ~ProofBackend() = default;
    virtual TransferProof prove(const TransferStatement& st, const TransferWitness& wit,
                                std::string_view caller_tag) const = 0;
    virtual bool verify(const TransferStatement& st, const TransferProof& proof,
                        std::string_view caller_tag) const = 0;
    virtual std::string_view name() const = 0;
};

// Default backend. NOT zero-knowledge: the payload embeds the whole witness,
// secret key included, and verification re-evaluates every constraint
// against it plus the statement digest. It stands in for a succinct prover
// so the protocol around it can be exercised end to end.
class TransparentBackend final : public ProofBackend {
public:
    TransparentBackend(Group group, unsigned value_bits);

    // error ProverRejected listing every failed constraint
    TransferProof prove(const TransferStatement& st, const TransferWitness& wit,
                        std::string_view caller_tag) const override;
    // false on malformed payloads, wrong digest, or any failed constraint
    bool verify(const TransferStatement& st, const TransferProof& proof,
                std::string_view caller_tag) const override;
    std::string_view name() const override { return "transparent"; }

private:
    Group group_;
    unsigned value_bits_;
};

}  // namespace hault
