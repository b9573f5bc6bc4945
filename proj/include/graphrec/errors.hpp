#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphrec {

/// Malformed input line; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A value outside its documented range; carries the offending field name.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every tuple was discarded by the positive-feedback filter.
class EmptyStreamError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cross-module data disagreement (e.g. an item without catalog features).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An arc's event time lies after the requested evaluation time.
class TemporalCausalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation-protocol violation (e.g. a user scored with no new items).
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No slice produced a single evaluable user.
class EmptyEvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace graphrec
