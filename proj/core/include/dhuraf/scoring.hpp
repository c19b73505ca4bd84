#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dhuraf/assessment.hpp"
#include "dhuraf/level.hpp"

namespace dhuraf {

enum class ReadinessCategory { kVoid, kInfancy, kPremature, kMature, kFlourished };

/// The formalized category-decision parameters. The paper defines the five
/// categories only in prose; these constants are the calibration that
/// reproduces its published verdicts, and every one of them is overridable
/// from a JSON file.
struct Ruleset {
  // Count-to-level mapping: 0 -> 0; 1..t1 -> 1; t1+1..t2 -> 2; > t2 -> 3.
  std::int64_t count_t1 = 5;
  std::int64_t count_t2 = 50;

  // Fraction of known sections that must reach premature_level ("nearly all").
  double nearly_all_fraction = 0.8;

  double premature_level = 1.0;
  double mature_level = 1.5;
  double flourished_level = 2.5;

  // Void: at most this many core sections showing any evidence, and mean
  // core score at most this bound.
  int void_max_core_sections_with_evidence = 1;
  double void_max_mean_core_score = 0.25;

  bool operator==(const Ruleset&) const = default;
};

Ruleset default_ruleset();

/// Empty iff t1 < t2, the level thresholds are ordered, and all fractions
/// are in range.
std::vector<Violation> validate_ruleset(const Ruleset& r);

struct TraceEntry {
  std::string rule;      // e.g. "flourished", "void", "normalize"
  std::string operands;  // the values the rule was evaluated over
  std::string outcome;   // "selected", "rejected", or "note"
};

struct SectionScore {
  std::string name;
  bool core = false;
  std::optional<double> score;  // nullopt when no item in the section is known
};

struct Classification {
  ReadinessCategory category = ReadinessCategory::kVoid;
  std::vector<SectionScore> section_scores;
  int core_evidence_count = 0;    // core sections with a known score > 0
  double mean_core_score = 0.0;   // over core sections with a known score
  std::vector<TraceEntry> trace;  // exactly one entry has outcome "selected"
};

/// Availability onto the 0..3 scale. Counts go through the ruleset's
/// thresholds; an at-least count yields a lower-bound level.
NormalizedLevel normalize_availability(const Availability& a, const Ruleset& r);

/// Arithmetic mean of the known normalized levels; Unknown and NotApplicable
/// items are excluded from both numerator and denominator. nullopt when no
/// item is known.
std::optional<double> section_score(const SectionAssessment& s, const Ruleset& r);

/// Classifies a validated assessment. Rules are evaluated in fixed order
/// (flourished, mature, premature, void, infancy) and every evaluation is
/// recorded in the trace. Throws InsufficientDataError when every section
/// score is unknown.
Classification classify(const Assessment& a, const Framework& fw, const Ruleset& r);

/// A hypothetical availability substitution for one item.
struct AvailabilityOverride {
  std::string section;
  std::string item;
  Availability availability;
};

/// classify() with the overrides applied to a copy; the original assessment
/// is unmodified. Throws UnknownPathError for an override path absent from
/// the assessment.
Classification what_if(const Assessment& a,
                       const std::vector<AvailabilityOverride>& overrides,
                       const Framework& fw, const Ruleset& r);

/// Merges a partial JSON override file ({"count_thresholds": [t1, t2],
/// "nearly_all_fraction": ..., ...}) over the defaults. Unknown keys and
/// invariant violations are errors. May also carry "visibility_thresholds":
/// [v1, v2, v3], returned separately.
struct RulesetConfig {
  Ruleset ruleset;
  VisibilityThresholds visibility;
};
RulesetConfig load_ruleset_overrides(std::string_view json_text);

std::string_view to_string(ReadinessCategory c);

}  // namespace dhuraf
