#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dhuraf/scoring.hpp"

namespace dhuraf {

enum class TableFormat { kMarkdown, kCsv, kJson };

/// Renders the indicator table in the three-column layout
/// (Sections | Importance | Availability) with one header row per section
/// and one data row per framework item. Importance renders as repeated "+",
/// availability as digit / "n+" / "NA" / empty. Deterministic.
std::string render_indicator_table(const Assessment& a, const Framework& fw,
                                   TableFormat format);

/// One framework item's importance-vs-availability shortfall.
struct GapEntry {
  std::string section;
  std::string item;
  int importance_degree = 0;          // 0 = undecided
  std::optional<int> normalized_level;  // nullopt = unassessed
  int gap_score = -1;  // importance * (3 - level); -1 when unassessed
};

/// Every framework item exactly once, scored entries first sorted by
/// gap_score descending (ties in framework order), unassessed entries after
/// in framework order.
std::vector<GapEntry> gap_report(const Assessment& a, const Framework& fw,
                                 const Ruleset& r);

struct ComparisonReport {
  std::pair<SubjectInfo, SubjectInfo> subjects;

  struct ItemPair {
    std::string section;
    std::string item;
    std::optional<int> level_a;
    std::optional<int> level_b;
  };
  struct SectionPair {
    std::string name;
    std::optional<double> score_a;
    std::optional<double> score_b;
  };

  std::vector<ItemPair> items;  // union of items present in either assessment
  std::vector<SectionPair> sections;
  std::pair<ReadinessCategory, ReadinessCategory> categories;
};

/// Side-by-side levels, section scores, and categories for two assessments
/// of the same framework. Throws Error on a framework mismatch.
ComparisonReport compare(const Assessment& a, const Assessment& b,
                         const Framework& fw, const Ruleset& r);

/// Cell renderings shared by the table formats.
std::string render_importance(const Importance& imp);
std::string render_availability(const Availability& av);

}  // namespace dhuraf
