#pragma once

#include <stdexcept>
#include <string>

namespace conics {

// Bad parameters: nonpositive lengths, out-of-range figure numbers, etc.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Deficient application whose deficiency lambda*y swallows the whole base.
class DeficiencyExceedsBase : public DomainError {
public:
    using DomainError::DomainError;
};

// Requested area is larger than the maximal deficient application L^2/(4 lambda).
class InfeasibleArea : public DomainError {
public:
    using DomainError::DomainError;
};

// A ray or line with coincident defining points.
class DegenerateRay : public DomainError {
public:
    using DomainError::DomainError;
};

class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

// Unparseable CSV or JSON input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedTrace : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A construction step asked for an intersection that does not exist.
class GeometricFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateFit : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyScene : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace conics
