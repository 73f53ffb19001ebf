#include "hault/wallet.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "hault/errors.hpp"
#include "hault/mapping.hpp"

namespace hault {

void WalletContext::refresh(const LedgerState& state) {
    auto it = state.users.find(native_id);
    if (it == state.users.end()) fail(Err::UnknownUser, native_id + " is not on the ledger");
    cached_notes = it->second.notes;
}

namespace {

struct BuildInputs {
    uint64_t old_balance = 0;
    uint64_t amount = 0;
    Ciphertext old_aggregate;
    Scalar sender_sk;
    GroupPoint sender_pk;
};

// Shared assembly for every transaction shape. The flags pick where k = 0
// transparent ciphertexts go: the recipient's amount (mint, deposit,
// withdraw) or the auditor's new balance (force transfer).
BuiltTransfer assemble(const WalletContext& ctx, const GroupPoint& recipient_pk,
                       const BuildInputs& in, bool transparent_amount_to_recipient,
                       bool transparent_new_for_auditor, Rng& rng) {
    const Group& g = ctx.group;
    unsigned b = ctx.value_bits;
    uint64_t new_balance = in.old_balance - in.amount;

    GroupPoint amount_recov = map_recoverable(g, Int(in.amount), b);
    GroupPoint amount_hom = map_homomorphic(g, Int(in.amount));
    GroupPoint new_recov = map_recoverable(g, Int(new_balance), b);
    GroupPoint new_hom = map_homomorphic(g, Int(new_balance));

    TransferStatement st;
    TransferWitness wit;
    st.sender_pk = in.sender_pk;
    st.recipient_pk = recipient_pk;
    st.auditor_pk = ctx.auditor_pk;
    st.sender_old_hom = in.old_aggregate;
    wit.sender_sk = in.sender_sk;
    wit.amount_recov = amount_recov;
    wit.new_balance_recov = new_recov;
    wit.old_balance = in.old_balance;

    // sender side: new balance ciphertexts; the homomorphic one is derived
    // by subtracting a fresh encryption of the amount from the aggregate
    wit.r_sender_new_recov = rng.nonzero_scalar(g);
    st.sender_new_recov = encrypt(g, in.sender_pk, new_recov, wit.r_sender_new_recov);
    wit.r_sender_amount_hom = rng.nonzero_scalar(g);
    st.sender_new_hom = ct_sub(g, in.old_aggregate,
                               encrypt(g, in.sender_pk, amount_hom, wit.r_sender_amount_hom));

    // recipient side
    wit.r_recipient_amount_recov =
        transparent_amount_to_recipient ? Scalar{0} : rng.nonzero_scalar(g);
    st.recipient_amount_recov = encrypt(g, recipient_pk, amount_recov, wit.r_recipient_amount_recov);
    wit.r_recipient_amount_hom = rng.nonzero_scalar(g);
    st.recipient_amount_hom = encrypt(g, recipient_pk, amount_hom, wit.r_recipient_amount_hom);

    // auditor side
    wit.r_auditor_amount_recov = rng.nonzero_scalar(g);
    st.auditor_amount_recov = encrypt(g, ctx.auditor_pk, amount_recov, wit.r_auditor_amount_recov);
    wit.r_auditor_amount_hom = rng.nonzero_scalar(g);
    st.auditor_amount_hom = encrypt(g, ctx.auditor_pk, amount_hom, wit.r_auditor_amount_hom);
    wit.r_auditor_new_recov = transparent_new_for_auditor ? Scalar{0} : rng.nonzero_scalar(g);
    st.auditor_new_recov = encrypt(g, ctx.auditor_pk, new_recov, wit.r_auditor_new_recov);
    wit.r_auditor_new_hom = rng.nonzero_scalar(g);
    st.auditor_new_hom = encrypt(g, ctx.auditor_pk, new_hom, wit.r_auditor_new_hom);

    return BuiltTransfer{std::move(st), std::move(wit), in.amount};
}

void check_amount_range(const WalletContext& ctx, uint64_t amount) {
    ctx.group.validate_value_bits(ctx.value_bits);
    if (amount >> ctx.value_bits != 0) fail(Err::OutOfRange, "amount outside [0, 2^b)");
}

}  // namespace

BuiltTransfer build_transfer(const WalletContext& ctx, const GroupPoint& recipient_pk,
                             uint64_t amount, Rng& rng) {
    check_amount_range(ctx, amount);
    if (ctx.cached_notes.empty()) fail(Err::EmptyWallet, "no notes to spend");
    Balance bal = decrypt_balance(ctx.group, ctx.value_bits, ctx.keys.sk, ctx.cached_notes);
    if (amount > bal.value) fail(Err::InsufficientBalance, "amount exceeds the spendable balance");
    BuildInputs in{bal.value, amount, bal.aggregate, ctx.keys.sk, ctx.keys.pk};
    return assemble(ctx, recipient_pk, in, false, false, rng);
}

BuiltTransfer build_mint(const WalletContext& owner_ctx, const GroupPoint& recipient_pk,
                         uint64_t amount, Rng& rng) {
    check_amount_range(owner_ctx, amount);
    const Group& g = owner_ctx.group;
    // synthetic old balance equal to the amount; its encryption randomness is
    // sampled and forgotten, the proof only ever opens it with the secret key
    GroupPoint old_hom = map_homomorphic(g, Int(amount));
    Ciphertext old_aggregate = encrypt(g, owner_ctx.keys.pk, old_hom, rng.nonzero_scalar(g));
    BuildInputs in{amount, amount, old_aggregate, owner_ctx.keys.sk, owner_ctx.keys.pk};
    return assemble(owner_ctx, recipient_pk, in, true, false, rng);
}

BuiltTransfer build_force_transfer(const WalletContext& auditor_ctx,
                                   const std::vector<Note>& from_audit_notes,
                                   const GroupPoint& to_pk, Rng& rng) {
    if (from_audit_notes.empty()) fail(Err::EmptyWallet, "source has no audit notes");
    const Group& g = auditor_ctx.group;
    Balance bal =
        decrypt_balance(g, auditor_ctx.value_bits, auditor_ctx.keys.sk, from_audit_notes);
    // sweep everything; the zero residual is provable via the transparent
    // new-balance ciphertext
    BuildInputs in{bal.value, bal.value, bal.aggregate, auditor_ctx.keys.sk, auditor_ctx.keys.pk};
    return assemble(auditor_ctx, to_pk, in, false, true, rng);
}

BuiltTransfer build_deposit(const WalletContext& owner_ctx, const GroupPoint& recipient_pk,
                            uint64_t amount, Rng& rng) {
    return build_mint(owner_ctx, recipient_pk, amount, rng);
}

BuiltTransfer build_withdraw(const WalletContext& owner_ctx, uint64_t amount, Rng& rng) {
    check_amount_range(owner_ctx, amount);
    if (owner_ctx.cached_notes.empty()) fail(Err::EmptyWallet, "no notes to withdraw from");
    Balance bal =
        decrypt_balance(owner_ctx.group, owner_ctx.value_bits, owner_ctx.keys.sk,
                        owner_ctx.cached_notes);
    if (amount > bal.value) fail(Err::InsufficientBalance, "amount exceeds the spendable balance");
    BuildInputs in{bal.value, amount, bal.aggregate, owner_ctx.keys.sk, owner_ctx.keys.pk};
    // the owner is its own recipient; the amount leaves as native funds, so
    // only the transparent amount ciphertext matters to the contract
    return assemble(owner_ctx, owner_ctx.keys.pk, in, true, false, rng);
}

void save_wallet_file(const std::string& path, const Group& g, const WalletFile& w) {
    nlohmann::json j;
    j["_warning"] =
        "research simulator wallet: the secret key below is stored in the clear";
    j["profile"] = w.profile;
    j["native_id"] = w.native_id;
    j["sk"] = to_hex(g.encode_scalar(w.keys.sk));
    j["pk"] = to_hex(g.encode_point(w.keys.pk));
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) fail(Err::IoError, "cannot write " + tmp);
        out << j.dump(2) << "\n";
        if (!out) fail(Err::IoError, "short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(Err::IoError, "cannot replace " + path + ": " + ec.message());
}

WalletFile load_wallet_file(const std::string& path, const Group& g) {
    std::ifstream in(path);
    if (!in) fail(Err::IoError, "cannot open wallet file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad wallet json: ") + e.what());
    }
    WalletFile w;
    if (!j.contains("profile") || !j.contains("native_id") || !j.contains("sk") ||
        !j.contains("pk"))
        fail(Err::ParseError, "wallet file is missing fields");
    w.profile = j["profile"].get<std::string>();
    w.native_id = j["native_id"].get<std::string>();
    auto sk_bytes = from_hex(j["sk"].get<std::string>());
    w.keys.sk = g.decode_scalar(sk_bytes.data(), sk_bytes.size());
    auto pk_bytes = from_hex(j["pk"].get<std::string>());
    w.keys.pk = g.decode_point(pk_bytes.data(), pk_bytes.size());
    if (w.keys.sk.v == 0 || g.mul(w.keys.sk, g.generator()) != w.keys.pk)
        fail(Err::InvalidKey, "wallet keypair is inconsistent");
    return w;
}

}  // namespace hault
