#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hault/ledger.hpp"
#include "hault/rng.hpp"
#include "hault/statement.hpp"

namespace hault {

// Client-side view: keys, the account's native identity, the ledger
// parameters it targets, and a cached copy of the account's notes. The cache
// is refreshed from ledger state before building; if it still goes stale
// between build and submit, the ledger answers StaleAggregate and the caller
// refreshes and rebuilds.
struct WalletContext {
    Keypair keys;
    std::string native_id;
    Group group;
    unsigned value_bits = 0;
    GroupPoint auditor_pk;
    std::vector<Note> cached_notes;

    // error UnknownUser if the wallet's account is not on the ledger
    void refresh(const LedgerState& state);
};

struct BuiltTransfer {
    TransferStatement statement;
    TransferWitness witness;
    uint64_t amount = 0;
};

// An ordinary transfer from the wallet's cached notes. Errors: OutOfRange
// (amount >= 2^b), EmptyWallet, InsufficientBalance, InconsistentNotes.
BuiltTransfer build_transfer(const WalletContext& ctx, const GroupPoint& recipient_pk,
                             uint64_t amount, Rng& rng);

// Owner-only supply creation: a synthetic old balance equal to the amount,
// and a transparent (k = 0) recoverable ciphertext so the contract can read
// the minted value. No stored notes are touched.
BuiltTransfer build_mint(const WalletContext& owner_ctx, const GroupPoint& recipient_pk,
                         uint64_t amount, Rng& rng);

// Auditor-only recovery: sweeps a user's whole balance out of the audit
// mirror into a fresh note for the target. The auditor plays the sender with
// its own keys; the new (zero) balance is transparently encrypted so the
// contract can check nothing is left behind.
BuiltTransfer build_force_transfer(const WalletContext& auditor_ctx,
                                   const std::vector<Note>& from_audit_notes,
                                   const GroupPoint& to_pk, Rng& rng);

// A mint whose amount must arrive as attached native funds.
BuiltTransfer build_deposit(const WalletContext& owner_ctx, const GroupPoint& recipient_pk,
                            uint64_t amount, Rng& rng);

// A transfer-shaped statement debiting the owner, with a transparent amount
// ciphertext so the contract knows how much native value to release.
BuiltTransfer build_withdraw(const WalletContext& owner_ctx, uint64_t amount, Rng& rng);

// Wallet files store the secret key in the clear. This is a research
// simulator, not custody software; the file format says so in as many words.
struct WalletFile {
    std::string profile;
    std::string native_id;
    Keypair keys;
};

void save_wallet_file(const std::string& path, const Group& g, const WalletFile& w);
// recomputes pk from sk and errors InvalidKey on mismatch
WalletFile load_wallet_file(const std::string& path, const Group& g);

}  // namespace hault
