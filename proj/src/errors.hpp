#ifndef SPINV_ERRORS_HPP
#define SPINV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spinv {

// Error taxonomy shared by the whole library. The C API and the CLI map
// these onto status / exit codes: validation-type failures -> 1, cap
// refusals -> 2.

struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct dimension_error : validation_error {
    explicit dimension_error(const std::string& msg) : validation_error(msg) {}
};

struct parse_error : validation_error {
    parse_error(const std::string& msg, std::size_t where)
        : validation_error(msg), position(where) {}
    std::size_t position;  // line number for DIMACS, character offset for expressions
};

// Raised when a request exceeds an enumeration/densification cap.
struct cap_error : std::runtime_error {
    explicit cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace spinv

#endif
