#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dhuraf/evidence.hpp"
#include "dhuraf/framework.hpp"

namespace dhuraf {

/// Assessor-asserted significance, 1..3 plus signs; 0 means undecided.
struct Importance {
  int degree = 0;

  bool undecided() const { return degree == 0; }

  static Importance undecided_value() { return {0}; }
  static Importance level(int degree) { return {degree}; }

  bool operator==(const Importance&) const = default;
};

/// Observed presence of an item. Blank table cells are Unknown, never
/// Enumerated(0): absence of evidence is not evidence of absence.
struct Availability {
  enum class Kind { kUnknown, kNotApplicable, kEnumerated, kCount, kAtLeastCount };

  Kind kind = Kind::kUnknown;
  int level = 0;          // kEnumerated: 0..3
  std::int64_t n = 0;     // kCount: >= 0; kAtLeastCount: >= 1

  static Availability unknown() { return {Kind::kUnknown, 0, 0}; }
  static Availability not_applicable() { return {Kind::kNotApplicable, 0, 0}; }
  static Availability enumerated(int level) { return {Kind::kEnumerated, level, 0}; }
  static Availability count(std::int64_t n) { return {Kind::kCount, 0, n}; }
  static Availability at_least(std::int64_t n) { return {Kind::kAtLeastCount, 0, n}; }

  bool operator==(const Availability&) const = default;
};

struct ItemAssessment {
  std::string name;
  Importance importance;
  Availability availability;
  std::string notes;
  std::vector<std::string> evidence_refs;

  bool operator==(const ItemAssessment&) const = default;
};

struct SectionAssessment {
  std::string name;
  std::vector<ItemAssessment> items;

  bool operator==(const SectionAssessment&) const = default;
};

struct SubjectInfo {
  std::string community;
  std::string language;
  std::string region;    // optional, empty when unset
  std::string assessor;  // optional, empty when unset
  std::string date;      // ISO-8601

  bool operator==(const SubjectInfo&) const = default;
};

/// One community's filled-in indicator table plus its evidence ledger.
struct Assessment {
  std::string framework_id;
  // Present when the document carried an inline framework instead of an id.
  std::optional<Framework> inline_framework;
  SubjectInfo subject;
  std::vector<SectionAssessment> sections;
  std::vector<EvidenceRecord> evidence;

  bool operator==(const Assessment&) const = default;
};

/// The framework the assessment is written against: the inline one when
/// present, else the canonical framework when the id matches. Throws
/// UnknownPathError for an unresolvable id.
const Framework& resolve_framework(const Assessment& a);

/// Pointer into `a` for a (section, item) path, nullptr when absent.
const ItemAssessment* find_item(const Assessment& a, std::string_view section,
                                std::string_view item);

}  // namespace dhuraf
