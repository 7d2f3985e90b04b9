#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wmclab {

/// Error categories surfaced by the library.  Every throwing operation
/// documents which of these it can raise; the CLI maps each to a one-line
/// message and exit code 2, the C API maps each to a status code.
enum class errc : int {
    none = 0,
    parse_error,                ///< malformed input text
    invalid_assignment,         ///< conflicting bindings for the same variable
    constant_formula,           ///< operation undefined on TRUE/FALSE
    too_large,                  ///< instance exceeds an enumeration/size cap
    empty_domain,               ///< grounding requested with n = 0
    unbound_variable,           ///< evaluation hit a variable without a value
    invalid_diagram,            ///< diagram failed validation (read-once/decomposability)
    unsupported,                ///< operation not defined for this input shape
    budget_exhausted,           ///< node budget hit before completion
    not_transversal_free,       ///< OBDD construction blocked by surviving transversals
    not_fully_dependent,        ///< combinator does not depend on every argument
    wrong_function,             ///< diagram does not compute the claimed function
    refused,                    ///< construction declined (hard query)
    not_monotone,               ///< combinator is not monotone
    unsafe_query,               ///< lifted evaluation rejected the query
    internal_safety_violation,  ///< safe query produced a non-evaluable term (bug trap)
};

const char* errc_name(errc c);

/// Exception carrying one of the error categories above.
class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

} // namespace wmclab
