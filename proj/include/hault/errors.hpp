#pragma once

#include <stdexcept>
#include <string>

namespace hault {

// Every failure the library can signal. The CLI maps these onto exit-code
// classes: validation (2), proof (3), state conflict (4), io (5).
enum class Err {
    // group / mapping
    OutOfRange,
    IdentityPoint,
    InvalidPoint,
    SearchExhausted,
    InvalidProfile,
    // elgamal / notes
    InvalidKey,
    EmptyNoteSet,
    InconsistentNotes,
    OverflowedBalance,
    // statement / proof
    ProverRejected,
    InvalidProof,
    // ledger
    NotOwner,
    NotAuditor,
    NotAllowed,
    DuplicateUser,
    UnknownUser,
    KeyMismatch,
    StaleAggregate,
    EmptyWallet,
    NotTransparent,
    SupplyOverflow,
    NonZeroResidual,
    AmountMismatch,
    InsufficientNativeFunds,
    VaultInsolvent,
    BadTransaction,
    // wallet
    InsufficientBalance,
    // storage / cli
    IoError,
    ParseError,
    LockHeld,
    LogMismatch,
};

class HaultError : public std::runtime_error {
public:
    HaultError(Err code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] void fail(Err code, const std::string& msg);

// SCREAMING_SNAKE name, e.g. StaleAggregate -> "STALE_AGGREGATE".
const char* err_name(Err code);

// Exit-code class for the CLI: 2 validation, 3 proof, 4 state conflict, 5 io.
int err_exit_code(Err code);

}  // namespace hault
