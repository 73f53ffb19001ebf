#include "hault/statement.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <optional>
#include <sstream>

#include "hault/errors.hpp"

namespace hault {

const std::vector<ConstraintInfo>& constraint_list() {
    static const std::vector<ConstraintInfo> list = {
        {ConstraintId::AmountPointValid, "new_note", "amount_point_valid"},
        {ConstraintId::AmountInRange, "new_note", "amount_in_range"},
        {ConstraintId::RecipientRecovMatches, "new_note", "recipient_recov_matches"},
        {ConstraintId::RecipientHomMatches, "new_note", "recipient_hom_matches"},
        {ConstraintId::OldBalanceInRange, "old_notes", "old_balance_in_range"},
        {ConstraintId::SenderKeyMatches, "old_notes", "sender_key_matches"},
        {ConstraintId::OldBalanceOpens, "old_notes", "old_balance_opens"},
        {ConstraintId::NewPointValid, "new_balance", "new_point_valid"},
        {ConstraintId::NewValueBitsMatch, "new_balance", "new_value_bits_match"},
        {ConstraintId::HomSubtractionMatches, "new_balance", "hom_subtraction_matches"},
        {ConstraintId::NewRecovMatches, "new_balance", "new_recov_matches"},
        {ConstraintId::AuditorNewRecovMatches, "auditor", "auditor_new_recov_matches"},
        {ConstraintId::AuditorNewHomMatches, "auditor", "auditor_new_hom_matches"},
        {ConstraintId::AuditorAmountRecovMatches, "auditor", "auditor_amount_recov_matches"},
        {ConstraintId::AuditorAmountHomMatches, "auditor", "auditor_amount_hom_matches"},
    };
    return list;
}

const char* constraint_name(ConstraintId id) {
    for (const auto& c : constraint_list())
        if (c.id == id) return c.name;
    return "unknown";
}

std::vector<ConstraintResult> evaluate_constraints(const Group& g, unsigned b,
                                                   const TransferStatement& st,
                                                   const TransferWitness& wit) {
    std::vector<ConstraintResult> out;
    out.reserve(constraint_list().size());
    auto push = [&](ConstraintId id, bool ok) { out.push_back({id, ok}); };
    const Int two_b = Int(1) << b;

    // new note: the amount point is a subgroup element, its low bits are the
    // amount, and both recipient ciphertexts re-derive from it
    push(ConstraintId::AmountPointValid, g.check_point(wit.amount_recov));
    std::optional<Int> amount;
    if (!wit.amount_recov.identity) amount = g.lsb(wit.amount_recov, b);
    push(ConstraintId::AmountInRange, amount.has_value() && *amount < two_b);
    Int w = amount.value_or(0);
    GroupPoint amount_hom = g.mul_int(w, g.generator());
    push(ConstraintId::RecipientRecovMatches,
         st.recipient_amount_recov ==
             encrypt_unchecked(g, st.recipient_pk, wit.amount_recov, wit.r_recipient_amount_recov));
    push(ConstraintId::RecipientHomMatches,
         st.recipient_amount_hom ==
             encrypt_unchecked(g, st.recipient_pk, amount_hom, wit.r_recipient_amount_hom));

    // old notes: the claimed old balance is in range and opens the aggregate
    // under the sender's key
    Int v_old = Int(wit.old_balance);
    push(ConstraintId::OldBalanceInRange, v_old < two_b);
    push(ConstraintId::SenderKeyMatches,
         st.sender_pk == g.mul(wit.sender_sk, g.generator()));
    push(ConstraintId::OldBalanceOpens,
         g.mul_int(v_old, g.generator()) == decrypt(g, wit.sender_sk, st.sender_old_hom));

    // new balance: integer subtraction, so an overdraft cannot wrap mod r
    Int v_new = v_old - w;
    push(ConstraintId::NewPointValid, g.check_point(wit.new_balance_recov));
    bool bits_match = !wit.new_balance_recov.identity && v_new >= 0 && v_new < two_b &&
                      g.lsb(wit.new_balance_recov, b) == v_new;
    push(ConstraintId::NewValueBitsMatch, bits_match);
    Ciphertext amount_under_sender =
        encrypt_unchecked(g, st.sender_pk, amount_hom, wit.r_sender_amount_hom);
    push(ConstraintId::HomSubtractionMatches,
         st.sender_new_hom == ct_sub(g, st.sender_old_hom, amount_under_sender));
    push(ConstraintId::NewRecovMatches,
         st.sender_new_recov ==
             encrypt_unchecked(g, st.sender_pk, wit.new_balance_recov, wit.r_sender_new_recov));

    // auditor: its own copies of the new balance and the amount
    GroupPoint new_hom = g.mul_int(v_new < 0 ? Int(0) : v_new, g.generator());
    push(ConstraintId::AuditorNewRecovMatches,
         st.auditor_new_recov ==
             encrypt_unchecked(g, st.auditor_pk, wit.new_balance_recov, wit.r_auditor_new_recov));
    push(ConstraintId::AuditorNewHomMatches,
         st.auditor_new_hom ==
             encrypt_unchecked(g, st.auditor_pk, new_hom, wit.r_auditor_new_hom));
    push(ConstraintId::AuditorAmountRecovMatches,
         st.auditor_amount_recov ==
             encrypt_unchecked(g, st.auditor_pk, wit.amount_recov, wit.r_auditor_amount_recov));
    push(ConstraintId::AuditorAmountHomMatches,
         st.auditor_amount_hom ==
             encrypt_unchecked(g, st.auditor_pk, amount_hom, wit.r_auditor_amount_hom));
    return out;
}

namespace {

void validate_component(const Group& g, const GroupPoint& p, const char* what) {
    if (p.identity) return;
    if (!g.on_curve(p)) fail(Err::InvalidPoint, std::string(what) + " is not a curve point");
}

void validate_ct(const Group& g, const Ciphertext& ct, const char* what) {
    validate_component(g, ct.c1, what);
    validate_component(g, ct.c2, what);
}

template <typename Fn>
void for_each_field(const TransferStatement& st, Fn&& fn) {
    fn(st.sender_pk);
    fn(st.recipient_pk);
    fn(st.auditor_pk);
    for (const Ciphertext* ct :
         {&st.sender_new_recov, &st.sender_new_hom, &st.recipient_amount_recov,
          &st.recipient_amount_hom, &st.auditor_amount_recov, &st.auditor_amount_hom,
          &st.auditor_new_recov, &st.auditor_new_hom, &st.sender_old_hom}) {
        fn(ct->c1);
        fn(ct->c2);
    }
}

}  // namespace

void validate_statement(const Group& g, const TransferStatement& st) {
    for (const GroupPoint* pk : {&st.sender_pk, &st.recipient_pk, &st.auditor_pk})
        if (!g.check_point(*pk)) fail(Err::InvalidKey, "statement key fails the subgroup check");
    validate_ct(g, st.sender_new_recov, "sender_new_recov");
    validate_ct(g, st.sender_new_hom, "sender_new_hom");
    validate_ct(g, st.recipient_amount_recov, "recipient_amount_recov");
    validate_ct(g, st.recipient_amount_hom, "recipient_amount_hom");
    validate_ct(g, st.auditor_amount_recov, "auditor_amount_recov");
    validate_ct(g, st.auditor_amount_hom, "auditor_amount_hom");
    validate_ct(g, st.auditor_new_recov, "auditor_new_recov");
    validate_ct(g, st.auditor_new_hom, "auditor_new_hom");
    validate_ct(g, st.sender_old_hom, "sender_old_hom");
}

std::vector<uint8_t> serialize_statement(const Group& g, const TransferStatement& st) {
    std::vector<uint8_t> out;
    out.reserve(21 * g.point_bytes());
    auto append = [&](const GroupPoint& p) {
        auto enc = g.encode_point(p);
        out.insert(out.end(), enc.begin(), enc.end());
    };
    for_each_field(st, append);
    return out;
}

TransferStatement deserialize_statement(const Group& g, const std::vector<uint8_t>& bytes) {
    if (bytes.size() != 21 * g.point_bytes())
        fail(Err::ParseError, "bad statement encoding length");
    size_t off = 0;
    auto take = [&]() {
        GroupPoint p = g.decode_point(bytes.data() + off, g.point_bytes());
        off += g.point_bytes();
        return p;
    };
    TransferStatement st;
    st.sender_pk = take();
    st.recipient_pk = take();
    st.auditor_pk = take();
    for (Ciphertext* ct : {&st.sender_new_recov, &st.sender_new_hom, &st.recipient_amount_recov,
                           &st.recipient_amount_hom, &st.auditor_amount_recov,
                           &st.auditor_amount_hom, &st.auditor_new_recov, &st.auditor_new_hom,
                           &st.sender_old_hom}) {
        ct->c1 = take();
        ct->c2 = take();
    }
    validate_statement(g, st);
    return st;
}

static std::array<uint8_t, 32> sha256(const std::vector<uint8_t>& data) {
    std::array<uint8_t, 32> out{};
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
    return out;
}

std::array<uint8_t, 32> statement_digest(const Group& g, const TransferStatement& st,
                                         std::string_view caller_tag) {
    std::vector<uint8_t> buf = serialize_statement(g, st);
    uint64_t n = caller_tag.size();
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<uint8_t>(n >> (8 * i)));
    buf.insert(buf.end(), caller_tag.begin(), caller_tag.end());
    return sha256(buf);
}

// ---- transparent backend ----

TransparentBackend::TransparentBackend(Group group, unsigned value_bits)
    : group_(std::move(group)), value_bits_(value_bits) {
    group_.validate_value_bits(value_bits_);
}

namespace {

std::vector<uint8_t> serialize_witness(const Group& g, const TransferWitness& wit) {
    std::vector<uint8_t> out;
    auto put_scalar = [&](const Scalar& s) {
        auto enc = g.encode_scalar(s);
        out.insert(out.end(), enc.begin(), enc.end());
    };
    auto put_point = [&](const GroupPoint& p) {
        auto enc = g.encode_point(p);
        out.insert(out.end(), enc.begin(), enc.end());
    };
    put_scalar(wit.sender_sk);
    put_point(wit.amount_recov);
    put_point(wit.new_balance_recov);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<uint8_t>(wit.old_balance >> (8 * i)));
    put_scalar(wit.r_sender_new_recov);
    put_scalar(wit.r_sender_amount_hom);
    put_scalar(wit.r_recipient_amount_recov);
    put_scalar(wit.r_recipient_amount_hom);
    put_scalar(wit.r_auditor_amount_recov);
    put_scalar(wit.r_auditor_amount_hom);
    put_scalar(wit.r_auditor_new_recov);
    put_scalar(wit.r_auditor_new_hom);
    return out;
}

size_t witness_bytes(const Group& g) { return 9 * g.scalar_bytes() + 2 * g.point_bytes() + 8; }

TransferWitness deserialize_witness(const Group& g, const uint8_t* data, size_t len) {
    if (len != witness_bytes(g)) fail(Err::ParseError, "bad witness encoding length");
    size_t off = 0;
    auto get_scalar = [&]() {
        Scalar s = g.decode_scalar(data + off, g.scalar_bytes());
        off += g.scalar_bytes();
        return s;
    };
    auto get_point = [&]() {
        GroupPoint p = g.decode_point(data + off, g.point_bytes());
        off += g.point_bytes();
        return p;
    };
    TransferWitness wit;
    wit.sender_sk = get_scalar();
    wit.amount_recov = get_point();
    wit.new_balance_recov = get_point();
    wit.old_balance = 0;
    for (int i = 7; i >= 0; --i) wit.old_balance = wit.old_balance << 8 | data[off + i];
    off += 8;
    wit.r_sender_new_recov = get_scalar();
    wit.r_sender_amount_hom = get_scalar();
    wit.r_recipient_amount_recov = get_scalar();
    wit.r_recipient_amount_hom = get_scalar();
    wit.r_auditor_amount_recov = get_scalar();
    wit.r_auditor_amount_hom = get_scalar();
    wit.r_auditor_new_recov = get_scalar();
    wit.r_auditor_new_hom = get_scalar();
    return wit;
}

}  // namespace

TransferProof TransparentBackend::prove(const TransferStatement& st, const TransferWitness& wit,
                                        std::string_view caller_tag) const {
    try {
        validate_statement(group_, st);
    } catch (const HaultError& e) {
        fail(Err::ProverRejected, std::string("malformed statement: ") + e.what());
    }
    auto results = evaluate_constraints(group_, value_bits_, st, wit);
    std::string failed;
    for (const auto& r : results)
        if (!r.ok) failed += std::string(failed.empty() ? "" : ", ") + constraint_name(r.id);
    if (!failed.empty()) fail(Err::ProverRejected, "constraints failed: " + failed);

    auto digest = statement_digest(group_, st, caller_tag);
    TransferProof proof;
    proof.backend = "transparent";
    proof.payload.assign(digest.begin(), digest.end());
    auto wit_bytes = serialize_witness(group_, wit);
    proof.payload.insert(proof.payload.end(), wit_bytes.begin(), wit_bytes.end());
    return proof;
}

bool TransparentBackend::verify(const TransferStatement& st, const TransferProof& proof,
                                std::string_view caller_tag) const {
    if (proof.backend != "transparent") return false;
    if (proof.payload.size() != 32 + witness_bytes(group_)) return false;
    try {
        validate_statement(group_, st);
        auto digest = statement_digest(group_, st, caller_tag);
        if (!std::equal(digest.begin(), digest.end(), proof.payload.begin())) return false;
        TransferWitness wit =
            deserialize_witness(group_, proof.payload.data() + 32, proof.payload.size() - 32);
        for (const auto& r : evaluate_constraints(group_, value_bits_, st, wit))
            if (!r.ok) return false;
        return true;
    } catch (const HaultError&) {
        return false;
    }
}

}  // namespace hault
