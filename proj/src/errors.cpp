#include "hault/errors.hpp"

namespace hault {

void fail(Err code, const std::string& msg) { throw HaultError(code, msg); }

const char* err_name(Err code) {
    switch (code) {
        case Err::OutOfRange: return "OUT_OF_RANGE";
        case Err::IdentityPoint: return "IDENTITY_POINT";
        case Err::InvalidPoint: return "INVALID_POINT";
        case Err::SearchExhausted: return "SEARCH_EXHAUSTED";
        case Err::InvalidProfile: return "INVALID_PROFILE";
        case Err::InvalidKey: return "INVALID_KEY";
        case Err::EmptyNoteSet: return "EMPTY_NOTE_SET";
        case Err::InconsistentNotes: return "INCONSISTENT_NOTES";
        case Err::OverflowedBalance: return "OVERFLOWED_BALANCE";
        case Err::ProverRejected: return "PROVER_REJECTED";
        case Err::InvalidProof: return "INVALID_PROOF";
        case Err::NotOwner: return "NOT_OWNER";
        case Err::NotAuditor: return "NOT_AUDITOR";
        case Err::NotAllowed: return "NOT_ALLOWED";
        case Err::DuplicateUser: return "DUPLICATE_USER";
        case Err::UnknownUser: return "UNKNOWN_USER";
        case Err::KeyMismatch: return "KEY_MISMATCH";
        case Err::StaleAggregate: return "STALE_AGGREGATE";
        case Err::EmptyWallet: return "EMPTY_WALLET";
        case Err::NotTransparent: return "NOT_TRANSPARENT";
        case Err::SupplyOverflow: return "SUPPLY_OVERFLOW";
        case Err::NonZeroResidual: return "NON_ZERO_RESIDUAL";
        case Err::AmountMismatch: return "AMOUNT_MISMATCH";
        case Err::InsufficientNativeFunds: return "INSUFFICIENT_NATIVE_FUNDS";
        case Err::VaultInsolvent: return "VAULT_INSOLVENT";
        case Err::BadTransaction: return "BAD_TRANSACTION";
        case Err::InsufficientBalance: return "INSUFFICIENT_BALANCE";
        case Err::IoError: return "IO_ERROR";
        case Err::ParseError: return "PARSE_ERROR";
        case Err::LockHeld: return "LOCK_HELD";
        case Err::LogMismatch: return "LOG_MISMATCH";
    }
    return "UNKNOWN";
}

int err_exit_code(Err code) {
    switch (code) {
        case Err::ProverRejected:
        case Err::InvalidProof:
            return 3;
        case Err::StaleAggregate:
        case Err::InconsistentNotes:
        case Err::LockHeld:
        case Err::LogMismatch:
            return 4;
        case Err::IoError:
        case Err::ParseError:
            return 5;
        default:
            return 2;
    }
}

}  // namespace hault
