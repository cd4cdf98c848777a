#pragma once

#include <optional>
#include <string>
#include <variant>

#include "neron/jacobian.hpp"
#include "neron/semistable.hpp"
#include "neron/torus.hpp"

namespace neron {

enum class InputKind { jacobian, torus, semistable };

const char* to_string(InputKind kind);
std::optional<InputKind> input_kind_from_string(const std::string& s);

struct Options {
    std::string format = "text";  // "text" | "json"
    bool strict = false;          // escalate validation warnings to errors
    bool with_oracle = true;      // false: theorem pipeline only
};

struct InputDocument {
    InputKind kind;
    std::variant<SpecialFibre, CharacterLattice, UniformizationDatum> payload;
};

// Parses a JSON input document. When expected is given the document's "kind"
// must match it. Throws Error(PARSE) for malformed JSON and Error(SCHEMA) with
// the offending JSON pointer for shape violations; semantic validation is left
// to run().
InputDocument parse_input(const std::string& text, std::optional<InputKind> expected = {});

struct Report {
    InputKind kind = InputKind::jacobian;
    Options options;
    std::vector<ValidationIssue> errors;  // validation failures; nonempty means exit 1
    std::vector<ValidationIssue> warnings;
    // Set when the pipelines contradict each other on input that passed
    // validation; means exit 2 regardless of anything else.
    std::optional<std::string> internal_error;
    std::optional<JacobianReport> jacobian;
    std::optional<TorusReport> torus;
    std::optional<SemistableReport> semistable;
};

// Dispatches to the matching pipeline. Never throws on Error conditions: they
// are folded into the report (validation errors vs. internal inconsistencies).
Report run(const InputDocument& doc, const Options& opts);

// 0 clean, 1 validation failure, 2 internal inconsistency.
int exit_code(const Report& rep);

std::string to_text(const Report& rep);
std::string to_json(const Report& rep);
// Picks by rep.options.format.
std::string render(const Report& rep);

// Re-reads a machine-format report produced by to_json. Options are not part
// of the wire format and come back default-initialized.
Report report_from_json(const std::string& text);

// Structural equality on everything to_json carries.
bool same_report(const Report& a, const Report& b);

}  // namespace neron
