#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hault/errors.hpp"
#include "hault/ledger_io.hpp"
#include "hault/wallet.hpp"

using namespace hault;

namespace {

// small populated ledger plus the transactions that built it
struct Fx {
    Group g = Group::builtin("toy");
    unsigned b = 6;
    Rng rng{90210};
    Keypair owner_k = keygen(g, rng);
    Keypair auditor_k = keygen(g, rng);
    Keypair alice_k = keygen(g, rng);
    TransparentBackend backend{Group::builtin("toy"), 6};
    LedgerState genesis = init_ledger(g, b, "owner", owner_k.pk, "auditor", auditor_k.pk, 500);
    LedgerState state = genesis;
    std::vector<Transaction> txs;

    Fx() {
        apply(add_user_tx());
        apply(mint_tx(30));
        apply(transfer_tx(11));
    }

    Transaction add_user_tx() {
        Transaction tx;
        tx.kind = TxKind::AddUser;
        tx.caller = "owner";
        tx.subject = "alice";
        tx.user_pk = alice_k.pk;
        return tx;
    }

    Transaction mint_tx(uint64_t amount) {
        WalletContext oc{owner_k, "owner", g, b, auditor_k.pk, {}};
        BuiltTransfer built = build_mint(oc, alice_k.pk, amount, rng);
        Transaction tx;
        tx.kind = TxKind::Mint;
        tx.caller = "owner";
        tx.recipient = "alice";
        tx.statement = built.statement;
        tx.proof = backend.prove(built.statement, built.witness, "owner");
        return tx;
    }

    Transaction transfer_tx(uint64_t amount) {
        WalletContext ac{alice_k, "alice", g, b, auditor_k.pk, {}};
        ac.refresh(state);
        BuiltTransfer built = build_transfer(ac, alice_k.pk, amount, rng);
        Transaction tx;
        tx.kind = TxKind::Transfer;
        tx.caller = "alice";
        tx.recipient = "alice";
        tx.statement = built.statement;
        tx.proof = backend.prove(built.statement, built.witness, "alice");
        return tx;
    }

    void apply(const Transaction& tx) {
        state = apply_transaction(state, tx);
        txs.push_back(tx);
    }
};

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) { std::remove(path.c_str()); }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("state documents round-trip bit for bit") {
    Fx f;
    nlohmann::json j = state_to_json(f.state);
    LedgerState back = state_from_json(j, f.g);
    CHECK(state_digest_hex(back) == state_digest_hex(f.state));
    CHECK(back.total_supply == f.state.total_supply);
    CHECK(back.users.at("alice").notes.size() == f.state.users.at("alice").notes.size());

    // decryption still works on the reloaded state
    CHECK(user_balance(back, f.alice_k.sk, "alice") == 30);
    CHECK(audit_decrypt(back, f.auditor_k.sk, "alice") == 30);
}

TEST_CASE("state parsing is strict") {
    Fx f;
    nlohmann::json j = state_to_json(f.state);

    nlohmann::json bad = j;
    bad["version"] = 2;
    CHECK_THROWS_AS((void)state_from_json(bad, f.g), HaultError);

    bad = j;
    bad["profile"] = "production";
    CHECK_THROWS_AS((void)state_from_json(bad, f.g), HaultError);

    bad = j;
    bad.erase("owner");
    CHECK_THROWS_AS((void)state_from_json(bad, f.g), HaultError);

    bad = j;
    bad["users"]["alice"]["audit_notes"] = nlohmann::json::array();  // desynced mirror
    CHECK_THROWS_AS((void)state_from_json(bad, f.g), HaultError);

    bad = j;
    bad["value_bits"] = 50;
    CHECK_THROWS_AS((void)state_from_json(bad, f.g), HaultError);
}

TEST_CASE("state files save and load through the profile hint") {
    Fx f;
    TempFile file("test_io_state.json");
    save_state_file(file.path, f.state);
    LedgerState back = load_state_file(file.path);  // profile name rides inside
    CHECK(state_digest_hex(back) == state_digest_hex(f.state));

    LedgerState hinted = load_state_file(file.path, "toy");
    CHECK(state_digest_hex(hinted) == state_digest_hex(f.state));

    CHECK_THROWS_AS((void)load_state_file("missing_state.json"), HaultError);
    CHECK_THROWS_AS((void)load_state_file(file.path, "production"), HaultError);
}

TEST_CASE("transactions round-trip with and without proofs") {
    Fx f;
    const Transaction& tx = f.txs[1];  // the mint

    nlohmann::json with = tx_to_json(f.g, tx, true);
    CHECK(with.contains("proof"));
    Transaction back = tx_from_json(f.g, with);
    CHECK(back.kind == TxKind::Mint);
    CHECK(back.caller == "owner");
    CHECK(back.statement == tx.statement);
    REQUIRE(back.proof.has_value());
    CHECK(back.proof->payload == tx.proof->payload);

    nlohmann::json without = tx_to_json(f.g, tx, false);
    CHECK_FALSE(without.contains("proof"));
    Transaction lean = tx_from_json(f.g, without);
    CHECK_FALSE(lean.proof.has_value());
    CHECK(lean.statement == tx.statement);
}

TEST_CASE("a transaction whose digest disagrees is refused") {
    Fx f;
    nlohmann::json j = tx_to_json(f.g, f.txs[1], false);
    std::string digest = j["statement_digest"].get<std::string>();
    digest[0] = digest[0] == 'a' ? 'b' : 'a';
    j["statement_digest"] = digest;
    try {
        (void)tx_from_json(f.g, j);
        FAIL("digest mismatch accepted");
    } catch (const HaultError& e) {
        CHECK(e.code() == Err::LogMismatch);
    }
}

TEST_CASE("the log replays to the live state") {
    Fx f;
    TempFile log("test_io_replay.log");
    log_write_genesis(log.path, f.genesis);
    LedgerState s = f.genesis;
    for (const Transaction& tx : f.txs) {
        log_append_tx(log.path, s, tx);
        s = apply_transaction(s, tx);
    }
    REQUIRE(state_digest_hex(s) == state_digest_hex(f.state));

    ReplayResult replayed = replay_log(log.path);
    CHECK(replayed.transactions == 3);
    CHECK(state_digest_hex(replayed.state) == state_digest_hex(f.state));

    ReplayResult verified = verify_log(log.path, f.state);
    CHECK(verified.transactions == 3);

    // a state the log does not lead to is flagged
    LedgerState drifted = apply_add_user(f.state, "owner", "eve", keygen(f.g, f.rng).pk);
    try {
        (void)verify_log(log.path, drifted);
        FAIL("drifted state accepted");
    } catch (const HaultError& e) {
        CHECK(e.code() == Err::LogMismatch);
    }
}

TEST_CASE("log tampering is caught on replay") {
    Fx f;
    TempFile log("test_io_tamper.log");
    log_write_genesis(log.path, f.genesis);
    LedgerState s = f.genesis;
    for (const Transaction& tx : f.txs) {
        log_append_tx(log.path, s, tx);
        s = apply_transaction(s, tx);
    }

    // flip one hex digit inside the last line's statement
    std::ifstream in(log.path);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    in.close();
    std::string& target = lines.back();
    size_t pos = target.find("\"statement\"");
    REQUIRE(pos != std::string::npos);
    pos += 20;
    target[pos] = target[pos] == '1' ? '2' : '1';
    {
        std::ofstream out(log.path, std::ios::trunc);
        for (const auto& line : lines) out << line << "\n";
    }

    CHECK_THROWS_AS((void)replay_log(log.path), HaultError);

    CHECK_THROWS_AS((void)replay_log("missing.log"), HaultError);
}
