#include "hault/ledger.hpp"

#include "hault/errors.hpp"

namespace hault {

const char* tx_kind_name(TxKind kind) {
    switch (kind) {
        case TxKind::AddUser: return "add_user";
        case TxKind::RemoveUser: return "remove_user";
        case TxKind::Transfer: return "transfer";
        case TxKind::Mint: return "mint";
        case TxKind::ForceTransfer: return "force_transfer";
        case TxKind::Deposit: return "deposit";
        case TxKind::Withdraw: return "withdraw";
    }
    return "unknown";
}

TxKind tx_kind_from_name(const std::string& name) {
    for (TxKind k : {TxKind::AddUser, TxKind::RemoveUser, TxKind::Transfer, TxKind::Mint,
                     TxKind::ForceTransfer, TxKind::Deposit, TxKind::Withdraw})
        if (name == tx_kind_name(k)) return k;
    fail(Err::ParseError, "unknown transaction kind " + name);
}

LedgerState init_ledger(Group group, unsigned value_bits, const std::string& owner_id,
                        const GroupPoint& owner_pk, const std::string& auditor_id,
                        const GroupPoint& auditor_pk, uint64_t owner_native_funds) {
    group.validate_value_bits(value_bits);
    if (!group.check_point(owner_pk)) fail(Err::InvalidKey, "owner key fails the subgroup check");
    if (!group.check_point(auditor_pk))
        fail(Err::InvalidKey, "auditor key fails the subgroup check");
    LedgerState s{std::move(group)};
    s.value_bits = value_bits;
    s.owner = owner_id;
    s.auditor = auditor_id;
    s.auditor_pk = auditor_pk;
    s.users[owner_id] = UserRecord{owner_id, owner_pk, true, {}, {}};
    s.native_accounts[owner_id] = owner_native_funds;
    return s;
}

namespace {

const UserRecord* find_user(const LedgerState& s, const std::string& id) {
    auto it = s.users.find(id);
    return it == s.users.end() ? nullptr : &it->second;
}

const UserRecord& enabled_user(const LedgerState& s, const std::string& id, const char* role) {
    const UserRecord* u = find_user(s, id);
    if (!u || !u->enabled)
        fail(Err::NotAllowed, std::string(role) + " " + id + " is not an enabled user");
    return *u;
}

// old-balance aggregate check shared by transfer-shaped transactions
void require_fresh_aggregate(const LedgerState& s, const std::vector<Note>& notes,
                             const TransferStatement& st, const std::string& whose) {
    if (notes.empty()) fail(Err::EmptyWallet, whose + " has no notes");
    if (st.sender_old_hom != aggregate_notes(s.group, notes))
        fail(Err::StaleAggregate,
             "statement aggregate does not match " + whose + "'s stored notes; "
             "refresh the wallet view and rebuild");
}

void require_valid_proof(const ProofBackend& backend, const TransferStatement& st,
                         const TransferProof& proof, const std::string& caller,
                         ProofPolicy policy) {
    if (policy == ProofPolicy::TrustedReplay) return;
    if (!backend.verify(st, proof, caller)) fail(Err::InvalidProof, "proof verification failed");
}

// amount carried by a transparent recoverable ciphertext
uint64_t transparent_amount(const LedgerState& s, const Ciphertext& ct) {
    if (!is_transparent(ct)) fail(Err::NotTransparent, "ciphertext has nonzero randomness");
    if (ct.c2.identity) fail(Err::NotTransparent, "transparent ciphertext carries no point");
    return static_cast<uint64_t>(s.group.lsb(ct.c2, s.value_bits));
}

void push_note(UserRecord& user, const TransferStatement& st) {
    user.notes.push_back(Note{st.recipient_amount_recov, st.recipient_amount_hom});
    user.audit_notes.push_back(Note{st.auditor_amount_recov, st.auditor_amount_hom});
}

}  // namespace

LedgerState apply_add_user(const LedgerState& s, const std::string& caller,
                           const std::string& native_id, const GroupPoint& pk) {
    if (caller != s.owner) fail(Err::NotOwner, "only the owner manages the allowlist");
    if (s.users.contains(native_id)) fail(Err::DuplicateUser, native_id + " already registered");
    if (!s.group.check_point(pk)) fail(Err::InvalidKey, "user key fails the subgroup check");
    LedgerState next = s;
    next.users[native_id] = UserRecord{native_id, pk, true, {}, {}};
    return next;
}

LedgerState apply_remove_user(const LedgerState& s, const std::string& caller,
                              const std::string& native_id) {
    if (caller != s.owner) fail(Err::NotOwner, "only the owner manages the allowlist");
    auto it = s.users.find(native_id);
    if (it == s.users.end()) fail(Err::UnknownUser, native_id + " is not registered");
    if (native_id == s.owner) fail(Err::NotAllowed, "the owner cannot be removed");
    // notes survive removal so the auditor can still recover the funds
    LedgerState next = s;
    next.users[native_id].enabled = false;
    return next;
}

static LedgerState apply_transfer_impl(const LedgerState& s, const ProofBackend& backend,
                                       const std::string& caller, const std::string& recipient,
                                       const TransferStatement& st, const TransferProof& proof,
                                       ProofPolicy policy) {
    validate_statement(s.group, st);
    const UserRecord& from = enabled_user(s, caller, "sender");
    const UserRecord& to = enabled_user(s, recipient, "recipient");
    if (st.sender_pk != from.pk) fail(Err::KeyMismatch, "statement sender key is not the caller's");
    if (st.recipient_pk != to.pk)
        fail(Err::KeyMismatch, "statement recipient key is not the recipient's");
    if (st.auditor_pk != s.auditor_pk) fail(Err::KeyMismatch, "statement auditor key is wrong");
    require_fresh_aggregate(s, from.notes, st, "sender");
    require_valid_proof(backend, st, proof, caller, policy);

    LedgerState next = s;
    UserRecord& from_w = next.users[caller];
    from_w.notes = {Note{st.sender_new_recov, st.sender_new_hom}};
    from_w.audit_notes = {Note{st.auditor_new_recov, st.auditor_new_hom}};
    push_note(next.users[recipient], st);
    return next;
}

LedgerState apply_transfer(const LedgerState& s, const ProofBackend& backend,
                           const std::string& caller, const std::string& recipient,
                           const TransferStatement& st, const TransferProof& proof) {
    return apply_transfer_impl(s, backend, caller, recipient, st, proof, ProofPolicy::Verify);
}

static LedgerState apply_mint_impl(const LedgerState& s, const ProofBackend& backend,
                                   const std::string& caller, const std::string& recipient,
                                   const TransferStatement& st, const TransferProof& proof,
                                   ProofPolicy policy) {
    validate_statement(s.group, st);
    if (caller != s.owner) fail(Err::NotOwner, "only the owner mints");
    const UserRecord& owner = enabled_user(s, s.owner, "owner");
    const UserRecord& to = enabled_user(s, recipient, "recipient");
    if (st.sender_pk != owner.pk) fail(Err::KeyMismatch, "statement sender key is not the owner's");
    if (st.recipient_pk != to.pk)
        fail(Err::KeyMismatch, "statement recipient key is not the recipient's");
    if (st.auditor_pk != s.auditor_pk) fail(Err::KeyMismatch, "statement auditor key is wrong");
    // the minted amount must be publicly readable
    uint64_t minted = transparent_amount(s, st.recipient_amount_recov);
    require_valid_proof(backend, st, proof, caller, policy);
    if (((Int(s.total_supply) + minted) >> s.value_bits) != 0)
        fail(Err::SupplyOverflow, "mint would push total supply to 2^b or beyond");

    // no sender-side note updates: the synthetic old balance never existed
    LedgerState next = s;
    push_note(next.users[recipient], st);
    next.total_supply += minted;
    return next;
}

LedgerState apply_mint(const LedgerState& s, const ProofBackend& backend,
                       const std::string& caller, const std::string& recipient,
                       const TransferStatement& st, const TransferProof& proof) {
    return apply_mint_impl(s, backend, caller, recipient, st, proof, ProofPolicy::Verify);
}

static LedgerState apply_force_transfer_impl(const LedgerState& s, const ProofBackend& backend,
                                             const std::string& caller, const std::string& from,
                                             const std::string& to, const TransferStatement& st,
                                             const TransferProof& proof, ProofPolicy policy) {
    validate_statement(s.group, st);
    if (caller != s.auditor) fail(Err::NotAuditor, "only the auditor forces transfers");
    const UserRecord* source = find_user(s, from);
    if (!source) fail(Err::UnknownUser, from + " is not registered");
    const UserRecord& target = enabled_user(s, to, "recipient");
    // the auditor stands in as sender, working from the audit mirror
    if (st.sender_pk != s.auditor_pk)
        fail(Err::KeyMismatch, "statement sender key must be the auditor's");
    if (st.recipient_pk != target.pk)
        fail(Err::KeyMismatch, "statement recipient key is not the target's");
    if (st.auditor_pk != s.auditor_pk) fail(Err::KeyMismatch, "statement auditor key is wrong");
    require_fresh_aggregate(s, source->audit_notes, st, from);
    require_valid_proof(backend, st, proof, caller, policy);
    // full sweep: the new balance must be transparently zero
    if (!is_transparent(st.auditor_new_recov))
        fail(Err::NonZeroResidual, "new-balance ciphertext is not transparent");
    if (transparent_amount(s, st.auditor_new_recov) != 0)
        fail(Err::NonZeroResidual, "forced transfer must sweep the whole balance");

    LedgerState next = s;
    UserRecord& source_w = next.users[from];
    source_w.notes.clear();
    source_w.audit_notes.clear();
    push_note(next.users[to], st);
    return next;
}

LedgerState apply_force_transfer(const LedgerState& s, const ProofBackend& backend,
                                 const std::string& caller, const std::string& from,
                                 const std::string& to, const TransferStatement& st,
                                 const TransferProof& proof) {
    return apply_force_transfer_impl(s, backend, caller, from, to, st, proof, ProofPolicy::Verify);
}

static LedgerState apply_deposit_impl(const LedgerState& s, const ProofBackend& backend,
                                      const std::string& caller, const std::string& recipient,
                                      const TransferStatement& st, const TransferProof& proof,
                                      uint64_t attached_amount, ProofPolicy policy) {
    LedgerState next = apply_mint_impl(s, backend, caller, recipient, st, proof, policy);
    uint64_t minted = next.total_supply - s.total_supply;
    if (minted != attached_amount)
        fail(Err::AmountMismatch, "attached amount does not equal the encrypted amount");
    auto funds = s.native_accounts.find(caller);
    if (funds == s.native_accounts.end() || funds->second < attached_amount)
        fail(Err::InsufficientNativeFunds, "caller cannot cover the attached amount");
    next.native_accounts[caller] -= attached_amount;
    next.vault_native_balance += attached_amount;
    return next;
}

LedgerState apply_deposit(const LedgerState& s, const ProofBackend& backend,
                          const std::string& caller, const std::string& recipient,
                          const TransferStatement& st, const TransferProof& proof,
                          uint64_t attached_amount) {
    return apply_deposit_impl(s, backend, caller, recipient, st, proof, attached_amount,
                              ProofPolicy::Verify);
}

static LedgerState apply_withdraw_impl(const LedgerState& s, const ProofBackend& backend,
                                       const std::string& caller,
                                       const std::string& payout_account,
                                       const TransferStatement& st, const TransferProof& proof,
                                       ProofPolicy policy) {
    validate_statement(s.group, st);
    if (caller != s.owner) fail(Err::NotOwner, "only the owner withdraws");
    const UserRecord& owner = enabled_user(s, s.owner, "owner");
    if (st.sender_pk != owner.pk) fail(Err::KeyMismatch, "statement sender key is not the owner's");
    if (st.auditor_pk != s.auditor_pk) fail(Err::KeyMismatch, "statement auditor key is wrong");
    require_fresh_aggregate(s, owner.notes, st, "owner");
    uint64_t amount = transparent_amount(s, st.recipient_amount_recov);
    require_valid_proof(backend, st, proof, caller, policy);
    if (s.vault_native_balance < amount)
        fail(Err::VaultInsolvent, "vault cannot cover the withdrawal");
    if (s.total_supply < amount) fail(Err::SupplyOverflow, "withdrawal exceeds recorded supply");

    // owner's notes collapse to the new balance, exactly like a transfer,
    // but the amount leaves as native funds instead of becoming a note
    LedgerState next = s;
    UserRecord& owner_w = next.users[caller];
    owner_w.notes = {Note{st.sender_new_recov, st.sender_new_hom}};
    owner_w.audit_notes = {Note{st.auditor_new_recov, st.auditor_new_hom}};
    next.total_supply -= amount;
    next.vault_native_balance -= amount;
    next.native_accounts[payout_account] += amount;
    return next;
}

LedgerState apply_withdraw(const LedgerState& s, const ProofBackend& backend,
                           const std::string& caller, const std::string& payout_account,
                           const TransferStatement& st, const TransferProof& proof) {
    return apply_withdraw_impl(s, backend, caller, payout_account, st, proof, ProofPolicy::Verify);
}

namespace {

const TransferStatement& tx_statement(const Transaction& tx) {
    if (!tx.statement) fail(Err::BadTransaction, "transaction is missing its statement");
    return *tx.statement;
}

TransferProof tx_proof(const Transaction& tx, ProofPolicy policy) {
    if (policy == ProofPolicy::TrustedReplay) return tx.proof.value_or(TransferProof{});
    if (!tx.proof) fail(Err::BadTransaction, "transaction is missing its proof");
    return *tx.proof;
}

}  // namespace

LedgerState apply_transaction(const LedgerState& s, const Transaction& tx, ProofPolicy policy) {
    TransparentBackend backend(s.group, s.value_bits);
    switch (tx.kind) {
        case TxKind::AddUser:
            if (!tx.user_pk) fail(Err::BadTransaction, "add_user needs the new user's key");
            return apply_add_user(s, tx.caller, tx.subject, *tx.user_pk);
        case TxKind::RemoveUser:
            return apply_remove_user(s, tx.caller, tx.subject);
        case TxKind::Transfer:
            return apply_transfer_impl(s, backend, tx.caller, tx.recipient, tx_statement(tx),
                                       tx_proof(tx, policy), policy);
        case TxKind::Mint:
            return apply_mint_impl(s, backend, tx.caller, tx.recipient, tx_statement(tx),
                                   tx_proof(tx, policy), policy);
        case TxKind::ForceTransfer:
            return apply_force_transfer_impl(s, backend, tx.caller, tx.subject, tx.recipient,
                                             tx_statement(tx), tx_proof(tx, policy), policy);
        case TxKind::Deposit:
            if (!tx.attached_amount) fail(Err::BadTransaction, "deposit needs an attached amount");
            return apply_deposit_impl(s, backend, tx.caller, tx.recipient, tx_statement(tx),
                                      tx_proof(tx, policy), *tx.attached_amount, policy);
        case TxKind::Withdraw:
            return apply_withdraw_impl(s, backend, tx.caller, tx.subject, tx_statement(tx),
                                       tx_proof(tx, policy), policy);
    }
    fail(Err::BadTransaction, "unknown transaction kind");
}

uint64_t user_balance(const LedgerState& s, const Scalar& sk, const std::string& native_id) {
    const UserRecord* u = find_user(s, native_id);
    if (!u) fail(Err::UnknownUser, native_id + " is not registered");
    if (u->notes.empty()) return 0;
    return decrypt_balance(s.group, s.value_bits, sk, u->notes).value;
}

uint64_t audit_decrypt(const LedgerState& s, const Scalar& auditor_sk,
                       const std::string& native_id) {
    const UserRecord* u = find_user(s, native_id);
    if (!u) fail(Err::UnknownUser, native_id + " is not registered");
    if (u->audit_notes.empty()) return 0;
    return decrypt_balance(s.group, s.value_bits, auditor_sk, u->audit_notes).value;
}

}  // namespace hault
