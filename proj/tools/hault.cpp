// Operator and wallet front end for the confidential-balances ledger
// simulator. One state file plays the chain, a JSON-lines log records every
// applied transaction, and wallet files hold account keys.
//
// Exit codes: 0 success, 2 validation failure, 3 proof failure,
// 4 state conflict, 5 io failure. Errors print one line to stderr as
// "CODE: message".

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hault/errors.hpp"
#include "hault/ledger.hpp"
#include "hault/ledger_io.hpp"
#include "hault/wallet.hpp"

namespace {

using namespace hault;

struct CliConfig {
    std::string state_path;
    std::string wallet_path;
    std::string profile;  // builtin name or parameter file path; "" = follow the state file
    bool json = false;
    std::optional<uint64_t> seed;
};

Rng make_rng(const CliConfig& cfg) { return cfg.seed ? Rng(*cfg.seed) : Rng(); }

void require_state_path(const CliConfig& cfg) {
    if (cfg.state_path.empty())
        fail(Err::IoError, "no state file: pass --state or set HAULT_STATE");
}

std::string log_path_for(const std::string& state_path) { return state_path + ".log"; }

// Exclusive advisory lock for mutating commands. Crashed runs can leave the
// file behind; removing it by hand is the documented remedy.
class StateLock {
public:
    explicit StateLock(const std::string& state_path) : path_(state_path + ".lock") {
        std::error_code ec;
        bool existed = std::filesystem::exists(path_, ec);
        if (existed)
            fail(Err::LockHeld, "state is locked by " + path_ +
                                    " (remove the file if no other command is running)");
        std::ofstream out(path_, std::ios::trunc);
        if (!out) fail(Err::IoError, "cannot create lock file " + path_);
        out << "locked\n";
        held_ = true;
    }
    ~StateLock() {
        if (held_) {
            std::error_code ec;
            std::filesystem::remove(path_, ec);
        }
    }
    StateLock(const StateLock&) = delete;
    StateLock& operator=(const StateLock&) = delete;

private:
    std::string path_;
    bool held_ = false;
};

LedgerState load_state(const CliConfig& cfg) {
    require_state_path(cfg);
    return load_state_file(cfg.state_path, cfg.profile);
}

WalletFile load_wallet(const CliConfig& cfg, const Group& g) {
    if (cfg.wallet_path.empty()) fail(Err::IoError, "no wallet file: pass --wallet");
    WalletFile w = load_wallet_file(cfg.wallet_path, g);
    if (w.profile != g.name())
        fail(Err::ParseError, "wallet profile " + w.profile + " does not match " + g.name());
    return w;
}

WalletContext make_context(const LedgerState& s, const WalletFile& w) {
    return WalletContext{w.keys, w.native_id, s.group, s.value_bits, s.auditor_pk, {}};
}

const UserRecord& user_or_fail(const LedgerState& s, const std::string& id) {
    auto it = s.users.find(id);
    if (it == s.users.end()) fail(Err::UnknownUser, id + " is not registered");
    return it->second;
}

void emit(const CliConfig& cfg, const nlohmann::json& payload, const std::string& human) {
    if (cfg.json)
        std::cout << payload.dump() << "\n";
    else
        std::cout << human << "\n";
}

// applies, persists, logs; the state file is untouched when anything throws
void commit(const CliConfig& cfg, const LedgerState& before, const Transaction& tx) {
    LedgerState after = apply_transaction(before, tx);
    log_append_tx(log_path_for(cfg.state_path), before, tx);
    save_state_file(cfg.state_path, after);
}

// builds the proof-carrying transaction for one command
Transaction make_proved_tx(const LedgerState& s, const WalletFile& w, TxKind kind,
                           const BuiltTransfer& built, const std::string& recipient,
                           const std::string& subject, std::optional<uint64_t> attached) {
    TransparentBackend backend(s.group, s.value_bits);
    Transaction tx;
    tx.kind = kind;
    tx.caller = w.native_id;
    tx.recipient = recipient;
    tx.subject = subject;
    tx.statement = built.statement;
    tx.proof = backend.prove(built.statement, built.witness, w.native_id);
    tx.attached_amount = attached;
    return tx;
}

int cmd_keygen(const CliConfig& cfg, const std::string& native_id, const std::string& profile) {
    Group g = Group::resolve(profile);
    if (cfg.wallet_path.empty()) fail(Err::IoError, "no wallet file: pass --wallet");
    Rng rng = make_rng(cfg);
    WalletFile w{g.name(), native_id, keygen(g, rng)};
    save_wallet_file(cfg.wallet_path, g, w);
    emit(cfg,
         {{"wallet", cfg.wallet_path},
          {"native_id", native_id},
          {"pk", to_hex(g.encode_point(w.keys.pk))}},
         "wrote " + cfg.wallet_path + " for " + native_id);
    return 0;
}

int cmd_init_ledger(const CliConfig& cfg, const std::string& profile, unsigned value_bits,
                    const std::string& owner_wallet, const std::string& auditor_wallet,
                    uint64_t fund_owner) {
    require_state_path(cfg);
    Group g = Group::resolve(profile.empty() ? "production" : profile);
    if (value_bits == 0) value_bits = bit_length(g.order()) > 40 ? 32 : 6;
    WalletFile owner = load_wallet_file(owner_wallet, g);
    WalletFile auditor = load_wallet_file(auditor_wallet, g);
    StateLock lock(cfg.state_path);
    LedgerState s = init_ledger(g, value_bits, owner.native_id, owner.keys.pk, auditor.native_id,
                                auditor.keys.pk, fund_owner);
    log_write_genesis(log_path_for(cfg.state_path), s);
    save_state_file(cfg.state_path, s);
    emit(cfg,
         {{"state", cfg.state_path},
          {"profile", g.name()},
          {"value_bits", value_bits},
          {"owner", owner.native_id},
          {"auditor", auditor.native_id}},
         "initialized " + cfg.state_path + " (profile " + g.name() + ", b=" +
             std::to_string(value_bits) + ")");
    return 0;
}

int cmd_add_user(const CliConfig& cfg, const std::string& user_wallet) {
    LedgerState s = load_state(cfg);
    WalletFile caller = load_wallet(cfg, s.group);
    WalletFile user = load_wallet_file(user_wallet, s.group);
    StateLock lock(cfg.state_path);
    Transaction tx;
    tx.kind = TxKind::AddUser;
    tx.caller = caller.native_id;
    tx.subject = user.native_id;
    tx.user_pk = user.keys.pk;
    commit(cfg, s, tx);
    emit(cfg, {{"added", user.native_id}}, "added user " + user.native_id);
    return 0;
}

int cmd_remove_user(const CliConfig& cfg, const std::string& user_id) {
    LedgerState s = load_state(cfg);
    WalletFile caller = load_wallet(cfg, s.group);
    StateLock lock(cfg.state_path);
    Transaction tx;
    tx.kind = TxKind::RemoveUser;
    tx.caller = caller.native_id;
    tx.subject = user_id;
    commit(cfg, s, tx);
    emit(cfg, {{"removed", user_id}}, "disabled user " + user_id);
    return 0;
}

int cmd_balance(const CliConfig& cfg) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    uint64_t value = user_balance(s, w.keys.sk, w.native_id);
    size_t count = user_or_fail(s, w.native_id).notes.size();
    emit(cfg, {{"balance", value}, {"notes", count}},
         "balance: " + std::to_string(value) + " (" + std::to_string(count) + " notes)");
    return 0;
}

int cmd_transfer(const CliConfig& cfg, const std::string& to, uint64_t amount,
                 const std::string& dump_path) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    WalletContext ctx = make_context(s, w);
    ctx.refresh(s);
    Rng rng = make_rng(cfg);
    BuiltTransfer built = build_transfer(ctx, user_or_fail(s, to).pk, amount, rng);
    Transaction tx = make_proved_tx(s, w, TxKind::Transfer, built, to, "", std::nullopt);
    if (!dump_path.empty()) {
        std::ofstream out(dump_path, std::ios::trunc);
        if (!out) fail(Err::IoError, "cannot write " + dump_path);
        out << tx_to_json(s.group, tx, /*include_proof=*/true).dump(2) << "\n";
        emit(cfg, {{"dumped", dump_path}}, "wrote unsubmitted transaction to " + dump_path);
        return 0;
    }
    StateLock lock(cfg.state_path);
    commit(cfg, s, tx);
    emit(cfg, {{"transferred", amount}, {"to", to}},
         "transferred " + std::to_string(amount) + " to " + to);
    return 0;
}

int cmd_submit(const CliConfig& cfg, const std::string& tx_path) {
    LedgerState s = load_state(cfg);
    std::ifstream in(tx_path);
    if (!in) fail(Err::IoError, "cannot open transaction file " + tx_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad transaction json: ") + e.what());
    }
    Transaction tx = tx_from_json(s.group, j);
    StateLock lock(cfg.state_path);
    commit(cfg, s, tx);
    emit(cfg, {{"submitted", tx_kind_name(tx.kind)}, {"caller", tx.caller}},
         std::string("applied ") + tx_kind_name(tx.kind) + " from " + tx.caller);
    return 0;
}

int cmd_mint(const CliConfig& cfg, const std::string& to, uint64_t amount) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    WalletContext ctx = make_context(s, w);
    Rng rng = make_rng(cfg);
    BuiltTransfer built = build_mint(ctx, user_or_fail(s, to).pk, amount, rng);
    Transaction tx = make_proved_tx(s, w, TxKind::Mint, built, to, "", std::nullopt);
    StateLock lock(cfg.state_path);
    commit(cfg, s, tx);
    emit(cfg, {{"minted", amount}, {"to", to}},
         "minted " + std::to_string(amount) + " to " + to);
    return 0;
}

int cmd_force_transfer(const CliConfig& cfg, const std::string& from, const std::string& to) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    WalletContext ctx = make_context(s, w);
    Rng rng = make_rng(cfg);
    BuiltTransfer built =
        build_force_transfer(ctx, user_or_fail(s, from).audit_notes, user_or_fail(s, to).pk, rng);
    Transaction tx = make_proved_tx(s, w, TxKind::ForceTransfer, built, to, from, std::nullopt);
    StateLock lock(cfg.state_path);
    commit(cfg, s, tx);
    emit(cfg, {{"forced", built.amount}, {"from", from}, {"to", to}},
         "force-transferred " + std::to_string(built.amount) + " from " + from + " to " + to);
    return 0;
}

int cmd_deposit(const CliConfig& cfg, const std::string& to, uint64_t amount) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    WalletContext ctx = make_context(s, w);
    Rng rng = make_rng(cfg);
    BuiltTransfer built = build_deposit(ctx, user_or_fail(s, to).pk, amount, rng);
    Transaction tx = make_proved_tx(s, w, TxKind::Deposit, built, to, "", amount);
    StateLock lock(cfg.state_path);
    commit(cfg, s, tx);
    emit(cfg, {{"deposited", amount}, {"to", to}},
         "deposited " + std::to_string(amount) + " to " + to);
    return 0;
}

int cmd_withdraw(const CliConfig& cfg, const std::string& payout, uint64_t amount) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    WalletContext ctx = make_context(s, w);
    ctx.refresh(s);
    Rng rng = make_rng(cfg);
    BuiltTransfer built = build_withdraw(ctx, amount, rng);
    Transaction tx = make_proved_tx(s, w, TxKind::Withdraw, built, "", payout, std::nullopt);
    StateLock lock(cfg.state_path);
    commit(cfg, s, tx);
    emit(cfg, {{"withdrawn", amount}, {"payout", payout}},
         "withdrew " + std::to_string(amount) + " to " + payout);
    return 0;
}

int cmd_audit_balance(const CliConfig& cfg, const std::string& user) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    if (w.native_id != s.auditor) fail(Err::NotAuditor, "wallet is not the auditor's");
    uint64_t value = audit_decrypt(s, w.keys.sk, user);
    emit(cfg, {{"user", user}, {"balance", value}},
         user + " balance: " + std::to_string(value));
    return 0;
}

int cmd_audit_value(const CliConfig& cfg, const std::string& user, size_t index) {
    LedgerState s = load_state(cfg);
    WalletFile w = load_wallet(cfg, s.group);
    if (w.native_id != s.auditor) fail(Err::NotAuditor, "wallet is not the auditor's");
    const UserRecord& u = user_or_fail(s, user);
    if (index >= u.audit_notes.size()) fail(Err::OutOfRange, "note index out of range");
    GroupPoint m = decrypt(s.group, w.keys.sk, u.audit_notes[index].recov_ct);
    uint64_t value = static_cast<uint64_t>(decode_value(s.group, m, s.value_bits));
    emit(cfg, {{"user", user}, {"note", index}, {"value", value}},
         user + " note " + std::to_string(index) + ": " + std::to_string(value));
    return 0;
}

int cmd_supply(const CliConfig& cfg) {
    LedgerState s = load_state(cfg);
    emit(cfg,
         {{"total_supply", s.total_supply}, {"vault_native_balance", s.vault_native_balance}},
         "total supply: " + std::to_string(s.total_supply) +
             "\nvault native balance: " + std::to_string(s.vault_native_balance));
    return 0;
}

int cmd_verify_log(const CliConfig& cfg, const std::string& log_override) {
    LedgerState s = load_state(cfg);
    std::string path = log_override.empty() ? log_path_for(cfg.state_path) : log_override;
    ReplayResult result = verify_log(path, s, cfg.profile);
    emit(cfg, {{"transactions", result.transactions}, {"digest", state_digest_hex(s)}},
         "OK, " + std::to_string(result.transactions) + " transactions, state digest matches");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"confidential balances ledger simulator"};
    app.require_subcommand(1);

    CliConfig cfg;
    if (const char* env = std::getenv("HAULT_STATE")) cfg.state_path = env;
    app.add_option("--state", cfg.state_path, "ledger state file (env HAULT_STATE)");
    app.add_option("--wallet", cfg.wallet_path, "wallet file");
    app.add_option("--profile", cfg.profile, "curve profile: toy, production, or a file path");
    app.add_flag("--json", cfg.json, "machine-readable output");
    uint64_t seed = 0;
    auto* seed_opt = app.add_option("--seed", seed, "deterministic randomness (testing)");

    std::string native_id, profile, owner_wallet, auditor_wallet, user_wallet, user_id, to, from,
        payout, dump_path, tx_path, log_override;
    uint64_t amount = 0, fund_owner = 1000000;
    unsigned value_bits = 0;
    size_t note_index = 0;

    auto* keygen_cmd = app.add_subcommand("keygen", "create a wallet file");
    keygen_cmd->add_option("--native-id", native_id, "account identity")->required();
    keygen_cmd->add_option("--key-profile", profile, "curve profile")->default_val("production");

    auto* init = app.add_subcommand("init-ledger", "create a fresh ledger state");
    init->add_option("--init-profile", profile, "curve profile")->default_val("production");
    init->add_option("--b", value_bits, "value bit width (default 32 production, 6 toy)");
    init->add_option("--owner-wallet", owner_wallet, "owner wallet file")->required();
    init->add_option("--auditor-wallet", auditor_wallet, "auditor wallet file")->required();
    init->add_option("--fund-owner", fund_owner, "owner's starting native balance");

    auto* add_user = app.add_subcommand("add-user", "allowlist a user (owner only)");
    add_user->add_option("--user-wallet", user_wallet, "new user's wallet file")->required();

    auto* remove_user = app.add_subcommand("remove-user", "disable a user (owner only)");
    remove_user->add_option("--user", user_id, "native id")->required();

    app.add_subcommand("balance", "decrypt this wallet's balance");

    auto* transfer = app.add_subcommand("transfer", "confidential transfer");
    transfer->add_option("--to", to, "recipient native id")->required();
    transfer->add_option("--amount", amount, "amount")->required();
    transfer->add_option("--dump-tx", dump_path, "write the transaction instead of applying it");

    auto* submit = app.add_subcommand("submit", "apply a previously dumped transaction");
    submit->add_option("--tx", tx_path, "transaction file")->required();

    auto* mint = app.add_subcommand("mint", "mint supply (owner only)");
    mint->add_option("--to", to, "recipient native id")->required();
    mint->add_option("--amount", amount, "amount")->required();

    auto* force = app.add_subcommand("force-transfer", "auditor-forced sweep");
    force->add_option("--from", from, "source native id")->required();
    force->add_option("--to", to, "target native id")->required();

    auto* deposit = app.add_subcommand("deposit", "deposit native funds as supply (owner only)");
    deposit->add_option("--to", to, "recipient native id")->required();
    deposit->add_option("--amount", amount, "amount")->required();

    auto* withdraw = app.add_subcommand("withdraw", "redeem supply for native funds (owner only)");
    withdraw->add_option("--payout", payout, "native account receiving the funds")->required();
    withdraw->add_option("--amount", amount, "amount")->required();

    auto* audit_balance = app.add_subcommand("audit-balance", "auditor view of a user's balance");
    audit_balance->add_option("--user", user_id, "native id")->required();

    auto* audit_value = app.add_subcommand("audit-value", "auditor view of one note");
    audit_value->add_option("--user", user_id, "native id")->required();
    audit_value->add_option("--note", note_index, "note index")->required();

    app.add_subcommand("supply", "show total supply and vault balance");

    auto* verify = app.add_subcommand("verify-log", "replay the log and compare digests");
    verify->add_option("--log", log_override, "log file (default: state file + .log)");

    // let --state/--wallet/--seed appear after the subcommand name
    for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);
    if (!seed_opt->empty()) cfg.seed = seed;

    try {
        if (keygen_cmd->parsed()) return cmd_keygen(cfg, native_id, profile);
        if (init->parsed())
            return cmd_init_ledger(cfg, profile, value_bits, owner_wallet, auditor_wallet,
                                   fund_owner);
        if (add_user->parsed()) return cmd_add_user(cfg, user_wallet);
        if (remove_user->parsed()) return cmd_remove_user(cfg, user_id);
        if (app.get_subcommand("balance")->parsed()) return cmd_balance(cfg);
        if (transfer->parsed()) return cmd_transfer(cfg, to, amount, dump_path);
        if (submit->parsed()) return cmd_submit(cfg, tx_path);
        if (mint->parsed()) return cmd_mint(cfg, to, amount);
        if (force->parsed()) return cmd_force_transfer(cfg, from, to);
        if (deposit->parsed()) return cmd_deposit(cfg, to, amount);
        if (withdraw->parsed()) return cmd_withdraw(cfg, payout, amount);
        if (audit_balance->parsed()) return cmd_audit_balance(cfg, user_id);
        if (audit_value->parsed()) return cmd_audit_value(cfg, user_id, note_index);
        if (app.get_subcommand("supply")->parsed()) return cmd_supply(cfg);
        if (verify->parsed()) return cmd_verify_log(cfg, log_override);
    } catch (const HaultError& e) {
        std::cerr << err_name(e.code()) << ": " << e.what() << "\n";
        return err_exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "IO_ERROR: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
