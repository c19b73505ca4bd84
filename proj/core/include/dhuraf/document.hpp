#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dhuraf/assessment.hpp"

namespace dhuraf {

/// Parses a .dhuraf document (UTF-8 JSON). Missing optional fields default
/// (importance -> undecided, availability -> unknown, notes -> empty);
/// unknown keys are rejected. Throws ParseError for malformed JSON (with
/// position) and SemanticError for shape/range/id problems.
Assessment parse_assessment(std::string_view text);

/// Canonical form: stable key order, sections and items in framework order
/// when the framework resolves, 2-space indentation, trailing newline.
/// Deterministic; parse(serialize(a)) is structurally equal to a.
std::string serialize_assessment(const Assessment& a);

/// Empty iff the assessment's invariants hold against fw: known section and
/// item names, resolvable evidence references, in-range values, no
/// duplicates. Violations carry a path, rule id, and message.
std::vector<Violation> validate_assessment(const Assessment& a, const Framework& fw);

/// Parses a standalone framework document ({"id": ..., "sections": [...]}),
/// the same shape used inline under an assessment's "framework" key.
Framework parse_framework(std::string_view text);

}  // namespace dhuraf
