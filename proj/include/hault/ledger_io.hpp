#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "hault/ledger.hpp"

namespace hault {

// Versioned JSON state document. Points and notes are hex of their wire
// encodings; the profile rides by name and is resolved on load.
nlohmann::json state_to_json(const LedgerState& s);
LedgerState state_from_json(const nlohmann::json& j, const Group& group);
LedgerState load_state_file(const std::string& path, const std::string& profile_hint = "");
void save_state_file(const std::string& path, const LedgerState& s);  // temp + rename

// SHA-256 of the canonical (sorted-key) dump; two states are behaviourally
// equal exactly when their digests agree.
std::string state_digest_hex(const LedgerState& s);

// Transactions as JSON, both for the append-only log and for handing a
// built transaction to a later submit. Proofs are included only on request
// and never enter the log.
nlohmann::json tx_to_json(const Group& g, const Transaction& tx, bool include_proof);
Transaction tx_from_json(const Group& g, const nlohmann::json& j);

// Append-only JSON-lines log: first line the genesis state, then one line
// per applied transaction carrying kind, caller, routing fields and the
// statement digest.
void log_write_genesis(const std::string& path, const LedgerState& s);
void log_append_tx(const std::string& path, const LedgerState& s, const Transaction& tx);

struct ReplayResult {
    LedgerState state;
    size_t transactions = 0;
};

// Re-applies the whole log from its genesis line. Statement digests stored
// per entry are recomputed and compared, and every state-machine check runs
// again; proofs are not re-checked because the log never stores them.
ReplayResult replay_log(const std::string& path, const std::string& profile_hint = "");

// error LogMismatch unless the replayed final state digest matches `current`
ReplayResult verify_log(const std::string& path, const LedgerState& current,
                        const std::string& profile_hint = "");

}  // namespace hault
