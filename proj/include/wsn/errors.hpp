#ifndef WSN_ERRORS_HPP
#define WSN_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wsn {

/// Base class for every error this library throws. Anything not derived
/// from DomainError escaping the library is a bug.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Payload would not fit the one-byte frame length field (> 255 bytes).
class PayloadTooLongError : public DomainError {
public:
    explicit PayloadTooLongError(std::size_t size)
        : DomainError("payload too long: " + std::to_string(size) + " bytes (max 255)"),
          size_(size) {}
    std::size_t size() const { return size_; }

private:
    std::size_t size_;
};

/// Node name is not exactly four hex digits.
class InvalidNodeNameError : public DomainError {
public:
    explicit InvalidNodeNameError(const std::string& name)
        : DomainError("invalid node name: \"" + name + "\" (want 4 hex digits)") {}
};

/// Malformed line in a tabular input file. Lines are 1-based.
class ParseError : public DomainError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DomainError("parse error at line " + std::to_string(line) + ": " + what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Two rows in the node table share a name.
class DuplicateNameError : public DomainError {
public:
    explicit DuplicateNameError(const std::string& name)
        : DomainError("duplicate node name: " + name) {}
};

/// A node row violates one of the descriptor invariants.
class InvariantViolationError : public DomainError {
public:
    InvariantViolationError(const std::string& name, const std::string& which)
        : DomainError("node " + name + ": " + which) {}
};

/// Schedule row references a node absent from the node table.
class UnknownNodeError : public DomainError {
public:
    explicit UnknownNodeError(const std::string& name)
        : DomainError("unknown node in schedule: " + name) {}
};

/// Schedule row whose next update does not come after its last update.
class NonMonotoneUpdateError : public DomainError {
public:
    explicit NonMonotoneUpdateError(std::size_t row)
        : DomainError("schedule row " + std::to_string(row) +
                      ": next_update is not after last_update"),
          row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

/// No relay path from a node to the coordinator.
class UnreachableError : public DomainError {
public:
    explicit UnreachableError(const std::string& node)
        : DomainError("no relay path from node " + node + " to the coordinator") {}
};

/// Simulation configuration failed pre-run validation.
class ConfigInvalidError : public DomainError {
public:
    explicit ConfigInvalidError(const std::string& what)
        : DomainError("invalid config: " + what) {}
};

/// Known-plaintext pairs imply different keys; index is the first offender.
class InconsistentPairsError : public DomainError {
public:
    explicit InconsistentPairsError(std::size_t index)
        : DomainError("pair " + std::to_string(index) +
                      " implies a different key than pair 0"),
          index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// Flag-corruption study requires a timestamp-keyed frame.
class WrongModeError : public DomainError {
public:
    WrongModeError() : DomainError("frame is not timestamp-keyed") {}
};

} // namespace wsn

#endif // WSN_ERRORS_HPP
