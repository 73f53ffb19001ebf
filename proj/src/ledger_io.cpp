#include "hault/ledger_io.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hault/errors.hpp"

namespace hault {

namespace {

std::string point_hex(const Group& g, const GroupPoint& p) { return to_hex(g.encode_point(p)); }

GroupPoint point_from_hex(const Group& g, const std::string& hex) {
    auto bytes = from_hex(hex);
    return g.decode_point(bytes.data(), bytes.size());
}

// note wire format: the four point encodings in fixed order
std::string note_hex(const Group& g, const Note& n) {
    std::vector<uint8_t> buf;
    for (const GroupPoint* p : {&n.recov_ct.c1, &n.recov_ct.c2, &n.hom_ct.c1, &n.hom_ct.c2}) {
        auto enc = g.encode_point(*p);
        buf.insert(buf.end(), enc.begin(), enc.end());
    }
    return to_hex(buf);
}

Note note_from_hex(const Group& g, const std::string& hex) {
    auto bytes = from_hex(hex);
    if (bytes.size() != 4 * g.point_bytes()) fail(Err::ParseError, "bad note encoding length");
    Note n;
    size_t off = 0;
    for (GroupPoint* p : {&n.recov_ct.c1, &n.recov_ct.c2, &n.hom_ct.c1, &n.hom_ct.c2}) {
        *p = g.decode_point(bytes.data() + off, g.point_bytes());
        off += g.point_bytes();
    }
    return n;
}

nlohmann::json notes_to_json(const Group& g, const std::vector<Note>& notes) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Note& n : notes) arr.push_back(note_hex(g, n));
    return arr;
}

std::vector<Note> notes_from_json(const Group& g, const nlohmann::json& arr) {
    if (!arr.is_array()) fail(Err::ParseError, "expected a note array");
    std::vector<Note> out;
    for (const auto& item : arr) out.push_back(note_from_hex(g, item.get<std::string>()));
    return out;
}

uint64_t u64_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        fail(Err::ParseError, std::string("state document missing ") + key);
    if (j[key].is_number_integer() && !j[key].is_number_unsigned() &&
        j[key].get<int64_t>() < 0)
        fail(Err::ParseError, std::string("negative value for ") + key);
    return j[key].get<uint64_t>();
}

std::string str_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        fail(Err::ParseError, std::string("state document missing ") + key);
    return j[key].get<std::string>();
}

}  // namespace

nlohmann::json state_to_json(const LedgerState& s) {
    nlohmann::json j;
    j["version"] = 1;
    j["profile"] = s.group.name();
    j["value_bits"] = s.value_bits;
    j["owner"] = s.owner;
    j["auditor"] = s.auditor;
    j["auditor_pk"] = point_hex(s.group, s.auditor_pk);
    j["total_supply"] = s.total_supply;
    j["vault_native_balance"] = s.vault_native_balance;
    j["native_accounts"] = nlohmann::json::object();
    for (const auto& [id, bal] : s.native_accounts) j["native_accounts"][id] = bal;
    j["users"] = nlohmann::json::object();
    for (const auto& [id, u] : s.users) {
        nlohmann::json ju;
        ju["pk"] = point_hex(s.group, u.pk);
        ju["enabled"] = u.enabled;
        ju["notes"] = notes_to_json(s.group, u.notes);
        ju["audit_notes"] = notes_to_json(s.group, u.audit_notes);
        j["users"][id] = std::move(ju);
    }
    return j;
}

LedgerState state_from_json(const nlohmann::json& j, const Group& group) {
    if (!j.is_object()) fail(Err::ParseError, "state document is not an object");
    if (u64_field(j, "version") != 1) fail(Err::ParseError, "unsupported state version");
    if (str_field(j, "profile") != group.name())
        fail(Err::ParseError, "state profile does not match the loaded profile");
    LedgerState s{group};
    s.value_bits = static_cast<unsigned>(u64_field(j, "value_bits"));
    s.group.validate_value_bits(s.value_bits);
    s.owner = str_field(j, "owner");
    s.auditor = str_field(j, "auditor");
    s.auditor_pk = point_from_hex(s.group, str_field(j, "auditor_pk"));
    s.total_supply = u64_field(j, "total_supply");
    s.vault_native_balance = u64_field(j, "vault_native_balance");
    if (j.contains("native_accounts"))
        for (const auto& [id, bal] : j["native_accounts"].items())
            s.native_accounts[id] = bal.get<uint64_t>();
    if (j.contains("users"))
        for (const auto& [id, ju] : j["users"].items()) {
            UserRecord u;
            u.native_id = id;
            u.pk = point_from_hex(s.group, str_field(ju, "pk"));
            u.enabled = ju.value("enabled", true);
            u.notes = notes_from_json(s.group, ju["notes"]);
            u.audit_notes = notes_from_json(s.group, ju["audit_notes"]);
            if (u.notes.size() != u.audit_notes.size())
                fail(Err::ParseError, "note and audit note counts differ for " + id);
            s.users[id] = std::move(u);
        }
    return s;
}

LedgerState load_state_file(const std::string& path, const std::string& profile_hint) {
    std::ifstream in(path);
    if (!in) fail(Err::IoError, "cannot open state file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad state json: ") + e.what());
    }
    std::string name = str_field(j, "profile");
    Group group = Group::resolve(profile_hint.empty() ? name : profile_hint);
    return state_from_json(j, group);
}

void save_state_file(const std::string& path, const LedgerState& s) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) fail(Err::IoError, "cannot write " + tmp);
        out << state_to_json(s).dump(2) << "\n";
        if (!out) fail(Err::IoError, "short write to " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail(Err::IoError, "cannot replace " + path + ": " + ec.message());
}

std::string state_digest_hex(const LedgerState& s) {
    std::string dump = state_to_json(s).dump();
    std::array<uint8_t, 32> out{};
    unsigned int len = 0;
    EVP_Digest(dump.data(), dump.size(), out.data(), &len, EVP_sha256(), nullptr);
    return to_hex(std::vector<uint8_t>(out.begin(), out.end()));
}

nlohmann::json tx_to_json(const Group& g, const Transaction& tx, bool include_proof) {
    nlohmann::json j;
    j["kind"] = tx_kind_name(tx.kind);
    j["caller"] = tx.caller;
    if (!tx.recipient.empty()) j["recipient"] = tx.recipient;
    if (!tx.subject.empty()) j["subject"] = tx.subject;
    if (tx.user_pk) j["user_pk"] = point_hex(g, *tx.user_pk);
    if (tx.attached_amount) j["attached"] = *tx.attached_amount;
    if (tx.statement) {
        j["statement"] = to_hex(serialize_statement(g, *tx.statement));
        auto digest = statement_digest(g, *tx.statement, tx.caller);
        j["statement_digest"] = to_hex(std::vector<uint8_t>(digest.begin(), digest.end()));
    }
    if (include_proof && tx.proof) {
        j["proof"] = {{"backend", tx.proof->backend}, {"payload", to_hex(tx.proof->payload)}};
    }
    return j;
}

Transaction tx_from_json(const Group& g, const nlohmann::json& j) {
    Transaction tx;
    tx.kind = tx_kind_from_name(str_field(j, "kind"));
    tx.caller = str_field(j, "caller");
    tx.recipient = j.value("recipient", "");
    tx.subject = j.value("subject", "");
    if (j.contains("user_pk")) tx.user_pk = point_from_hex(g, j["user_pk"].get<std::string>());
    if (j.contains("attached")) tx.attached_amount = j["attached"].get<uint64_t>();
    if (j.contains("statement")) {
        auto bytes = from_hex(j["statement"].get<std::string>());
        tx.statement = deserialize_statement(g, bytes);
        std::string want = j.value("statement_digest", "");
        if (!want.empty()) {
            auto digest = statement_digest(g, *tx.statement, tx.caller);
            if (to_hex(std::vector<uint8_t>(digest.begin(), digest.end())) != want)
                fail(Err::LogMismatch, "stored statement digest does not match the statement");
        }
    }
    if (j.contains("proof")) {
        TransferProof p;
        p.backend = str_field(j["proof"], "backend");
        p.payload = from_hex(str_field(j["proof"], "payload"));
        tx.proof = std::move(p);
    }
    return tx;
}

void log_write_genesis(const std::string& path, const LedgerState& s) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) fail(Err::IoError, "cannot write log " + path);
    nlohmann::json j;
    j["type"] = "genesis";
    j["state"] = state_to_json(s);
    out << j.dump() << "\n";
    if (!out) fail(Err::IoError, "short write to log " + path);
}

void log_append_tx(const std::string& path, const LedgerState& s, const Transaction& tx) {
    std::ofstream out(path, std::ios::app);
    if (!out) fail(Err::IoError, "cannot append to log " + path);
    nlohmann::json j = tx_to_json(s.group, tx, /*include_proof=*/false);
    j["type"] = "tx";
    out << j.dump() << "\n";
    out.flush();
    if (!out) fail(Err::IoError, "short write to log " + path);
}

ReplayResult replay_log(const std::string& path, const std::string& profile_hint) {
    std::ifstream in(path);
    if (!in) fail(Err::IoError, "cannot open log " + path);
    std::string line;
    if (!std::getline(in, line)) fail(Err::ParseError, "log has no genesis line");
    nlohmann::json genesis;
    try {
        genesis = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
        fail(Err::ParseError, std::string("bad log line: ") + e.what());
    }
    if (genesis.value("type", "") != "genesis")
        fail(Err::ParseError, "log does not start with a genesis line");
    std::string name = str_field(genesis["state"], "profile");
    Group group = Group::resolve(profile_hint.empty() ? name : profile_hint);
    ReplayResult result{state_from_json(genesis["state"], group), 0};
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            fail(Err::ParseError, "bad log line " + std::to_string(line_no) + ": " + e.what());
        }
        if (j.value("type", "") != "tx")
            fail(Err::ParseError, "unexpected log entry at line " + std::to_string(line_no));
        Transaction tx = tx_from_json(group, j);
        result.state = apply_transaction(result.state, tx, ProofPolicy::TrustedReplay);
        ++result.transactions;
    }
    return result;
}

ReplayResult verify_log(const std::string& path, const LedgerState& current,
                        const std::string& profile_hint) {
    ReplayResult replayed = replay_log(path, profile_hint);
    if (state_digest_hex(replayed.state) != state_digest_hex(current))
        fail(Err::LogMismatch, "replayed state digest does not match the stored state");
    return replayed;
}

}  // namespace hault
