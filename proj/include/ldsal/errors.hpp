#ifndef LDSAL_ERRORS_HPP
#define LDSAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ldsal {

// Unreadable/unwritable files, short reads, failed renames.
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally invalid file content. Messages carry a byte offset or
// line number so the offending input can be located.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// A metric whose denominator (or variance) vanished: undefined ratios,
// correlation of a constant map, and similar degeneracies.
struct UndefinedValueError : std::domain_error {
    explicit UndefinedValueError(const std::string& msg) : std::domain_error(msg) {}
};

}  // namespace ldsal

#endif
