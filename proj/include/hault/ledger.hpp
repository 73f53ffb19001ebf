#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hault/notes.hpp"
#include "hault/statement.hpp"

namespace hault {

// One allowlisted account. notes and audit_notes move in lockstep: entry i of
// audit_notes carries the same value as entry i of notes, encrypted to the
// auditor instead of the owner. Disabled users keep their notes; the auditor
// can still force-transfer them out.
struct UserRecord {
    std::string native_id;
    GroupPoint pk;
    bool enabled = true;
    std::vector<Note> notes;
    std::vector<Note> audit_notes;
};

// Full contract state. Value semantics: every apply_* takes the state by
// const reference and returns the successor, so a rejected transaction
// cannot leave a half-applied state behind. native_accounts and the vault
// simulate the chain's own asset for deposit/withdraw flows.
struct LedgerState {
    Group group;
    unsigned value_bits = 0;  // b; balances and supply live in [0, 2^b)
    std::string owner;        // native id of the contract owner
    std::string auditor;      // native id of the auditor
    GroupPoint auditor_pk;
    std::map<std::string, UserRecord> users;
    uint64_t total_supply = 0;
    std::map<std::string, uint64_t> native_accounts;
    uint64_t vault_native_balance = 0;
};

enum class TxKind {
    AddUser,
    RemoveUser,
    Transfer,
    Mint,
    ForceTransfer,
    Deposit,
    Withdraw,
};

const char* tx_kind_name(TxKind kind);
TxKind tx_kind_from_name(const std::string& name);

// One submitted transaction. Which fields matter depends on kind:
//   AddUser:       subject (new user's id), user_pk
//   RemoveUser:    subject
//   Transfer:      recipient, statement, proof
//   Mint:          recipient, statement, proof
//   ForceTransfer: subject (source user), recipient (target), statement, proof
//   Deposit:       recipient, statement, proof, attached_amount
//   Withdraw:      subject (native payout account), statement, proof
struct Transaction {
    TxKind kind = TxKind::Transfer;
    std::string caller;
    std::string recipient;
    std::string subject;
    std::optional<GroupPoint> user_pk;
    std::optional<TransferStatement> statement;
    std::optional<TransferProof> proof;
    std::optional<uint64_t> attached_amount;
};

LedgerState init_ledger(Group group, unsigned value_bits, const std::string& owner_id,
                        const GroupPoint& owner_pk, const std::string& auditor_id,
                        const GroupPoint& auditor_pk, uint64_t owner_native_funds);

LedgerState apply_add_user(const LedgerState& s, const std::string& caller,
                           const std::string& native_id, const GroupPoint& pk);

LedgerState apply_remove_user(const LedgerState& s, const std::string& caller,
                              const std::string& native_id);

LedgerState apply_transfer(const LedgerState& s, const ProofBackend& backend,
                           const std::string& caller, const std::string& recipient,
                           const TransferStatement& st, const TransferProof& proof);

LedgerState apply_mint(const LedgerState& s, const ProofBackend& backend,
                       const std::string& caller, const std::string& recipient,
                       const TransferStatement& st, const TransferProof& proof);

LedgerState apply_force_transfer(const LedgerState& s, const ProofBackend& backend,
                                 const std::string& caller, const std::string& from,
                                 const std::string& to, const TransferStatement& st,
                                 const TransferProof& proof);

LedgerState apply_deposit(const LedgerState& s, const ProofBackend& backend,
                          const std::string& caller, const std::string& recipient,
                          const TransferStatement& st, const TransferProof& proof,
                          uint64_t attached_amount);

LedgerState apply_withdraw(const LedgerState& s, const ProofBackend& backend,
                           const std::string& caller, const std::string& payout_account,
                           const TransferStatement& st, const TransferProof& proof);

// Replay mode exists for log verification: statements and every state check
// are re-validated, but proofs (which are never persisted) are not.
enum class ProofPolicy { Verify, TrustedReplay };

LedgerState apply_transaction(const LedgerState& s, const Transaction& tx,
                              ProofPolicy policy = ProofPolicy::Verify);

// Balance views. Empty wallets read as 0 by convention.
uint64_t user_balance(const LedgerState& s, const Scalar& sk, const std::string& native_id);
uint64_t audit_decrypt(const LedgerState& s, const Scalar& auditor_sk,
                       const std::string& native_id);

}  // namespace hault
