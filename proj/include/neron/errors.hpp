#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace neron {

enum class ErrorCode {
    // lattice / linear algebra contracts
    NOT_SUBLATTICE,
    DIMENSION_MISMATCH,
    // cyclic-action contracts
    NOT_STABLE,
    NOT_EXACT,
    NOT_CYCLIC,
    NOT_FINITE_ORDER,
    ORDER_MISMATCH,
    // special-fibre validation
    ASYMMETRIC,
    NOT_EQUIVARIANT,
    ORBIT_DATA_VARIES,
    ROW_SUM_NONZERO,
    E_DIVISIBILITY,
    OFF_DIAG_NEGATIVE,
    DISCONNECTED,
    GENUS_D,
    GENUS_DPRIME,
    NOT_NEG_SEMIDEFINITE,  // warning-level unless strict
    // uniformization validation
    DEGENERATE,
    // constructor / input shape
    BAD_SHAPE,
    PARSE,
    SCHEMA,
    // computed quantities contradict each other (internal impossibility)
    INTEGRALITY,
    INCONSISTENT,
    EMBED_FAIL,
};

const char* to_string(ErrorCode code);
std::optional<ErrorCode> error_code_from_string(const std::string& name);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail),
          code_(code),
          detail_(detail) {}

    ErrorCode code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

// Validation routines collect every defect they can see instead of stopping
// at the first one, so callers can report all of them at once.
struct ValidationIssue {
    ErrorCode code;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> errors;
    std::vector<ValidationIssue> warnings;
    bool ok() const { return errors.empty(); }
};

}  // namespace neron
