#pragma once

#include <stdexcept>
#include <string>

namespace dglift {

// Base class for everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input / usage errors (CLI exit code 1).
struct NotAUnit : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct RingMismatch : Error {
    using Error::Error;
};
struct AlgebraMismatch : Error {
    using Error::Error;
};
struct SchemaError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct WindowTooWide : Error {
    using Error::Error;
};
struct WindowExhausted : Error {
    using Error::Error;
};
struct NotACycle : Error {
    using Error::Error;
};
struct NotAnIso : Error {
    using Error::Error;
};
// Matrix of a module does not have the block form an operation requires.
struct ShapeError : Error {
    using Error::Error;
};

// Construction of a DG algebra or DG module failed one of its defining
// equations.  `equation` is a stable identifier (e.g. "square_nonzero",
// "delta_commute", "leibniz"), `witness` describes the offending element.
struct ValidationError : Error {
    ValidationError(std::string eq, std::string wit)
        : Error("validation failed [" + eq + "]: " + wit), equation(std::move(eq)), witness(std::move(wit)) {}
    std::string equation;
    std::string witness;
};

// The differential fails to square to zero (possibly in its block form).
struct SquareNonzero : ValidationError {
    using ValidationError::ValidationError;
};

// An expanded presentation disagrees with the Leibniz extension of its
// generator data.
struct LeibnizViolation : ValidationError {
    using ValidationError::ValidationError;
};

// A cycle admits no null-homotopy: the corresponding Ext class is nonzero.
struct NotNullHomotopic : Error {
    using Error::Error;
};

// Mathematical obstructions (CLI exit code 2).  A homotopy system had no
// solution; the stage and, for iterated lifting, the variable index identify
// where the iteration stopped.
struct ObstructionNonzero : Error {
    ObstructionNonzero(int stage_, std::string what_, int variable_ = -1)
        : Error(std::move(what_)), stage(stage_), variable(variable_) {}
    int stage;
    int variable;
};

struct Ext1Obstruction : ObstructionNonzero {
    using ObstructionNonzero::ObstructionNonzero;
};

}  // namespace dglift
