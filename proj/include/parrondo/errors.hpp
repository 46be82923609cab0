#pragma once

#include <stdexcept>
#include <string>

namespace parrondo {

// Malformed or unusable input: bad files, empty sequences, unknown names.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The requested computation is not applicable to the given value.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A broken internal invariant; reaching one of these is a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct EmptyCoefficients : InputError {
    EmptyCoefficients() : InputError("empty coefficient sequence") {}
};

struct NonInvertibleJet : DomainError {
    NonInvertibleJet() : DomainError("jet has zero linear coefficient, no local inverse exists") {}
};

struct WrongMultiplier : DomainError {
    explicit WrongMultiplier(const std::string& what) : DomainError(what) {}
};

struct InvalidNormalForm : DomainError {
    explicit InvalidNormalForm(const std::string& what) : DomainError(what) {}
};

struct NotEllipticRotationForm : DomainError {
    explicit NotEllipticRotationForm(const std::string& what) : DomainError(what) {}
};

struct NotOnUnitCircle : DomainError {
    NotOnUnitCircle() : DomainError("eigenvalue is not on the unit circle") {}
};

struct ResonantEigenvalue : DomainError {
    explicit ResonantEigenvalue(const std::string& what) : DomainError(what) {}
};

struct InvalidPaddingTarget : DomainError {
    explicit InvalidPaddingTarget(const std::string& what) : DomainError(what) {}
};

struct UnknownGalleryEntry : InputError {
    explicit UnknownGalleryEntry(const std::string& name)
        : InputError("unknown gallery entry: " + name) {}
};

// The bracket for the scalar root solve failed; signals a bug, not a data condition.
struct RootNotBracketed : InternalError {
    RootNotBracketed() : InternalError("root not bracketed in scalar solve") {}
};

}  // namespace parrondo
