#pragma once

#include <stdexcept>
#include <string>

namespace posicert {

// Shape mismatch between operands: variable counts, point lengths, LP widths.
class StructuralError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

// Malformed text input (polynomial files, DIMACS, LP documents, CSV).
class ParseError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// A claimed certificate failed exact re-expansion.
class AuditFailure : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

// A certificate contradicts an independent oracle. Always fatal.
class SoundnessError : public std::logic_error {
 public:
    using std::logic_error::logic_error;
};

// Request exceeds an explicit enumeration bound (grid size, truth table).
class LimitExceeded : public std::length_error {
 public:
    using std::length_error::length_error;
};

}  // namespace posicert
