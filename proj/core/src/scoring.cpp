#include "dhuraf/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dhuraf/errors.hpp"

namespace dhuraf {

namespace {

std::string format_score(double value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

int level_for_count(std::int64_t n, const Ruleset& r) {
  if (n == 0) return 0;
  if (n <= r.count_t1) return 1;
  if (n <= r.count_t2) return 2;
  return 3;
}

}  // namespace

Ruleset default_ruleset() { return Ruleset{}; }

std::vector<Violation> validate_ruleset(const Ruleset& r) {
  std::vector<Violation> out;
  if (r.count_t1 < 1 || r.count_t1 >= r.count_t2) {
    out.push_back({"count_thresholds", "bad-thresholds",
                   "require 0 < t1 < t2, got t1=" + std::to_string(r.count_t1) +
                       " t2=" + std::to_string(r.count_t2)});
  }
  if (!(r.nearly_all_fraction > 0.0 && r.nearly_all_fraction <= 1.0)) {
    out.push_back({"nearly_all_fraction", "out-of-range", "must be in (0, 1]"});
  }
  if (!(r.premature_level <= r.mature_level && r.mature_level <= r.flourished_level)) {
    out.push_back({"levels", "bad-ordering",
                   "require premature_level <= mature_level <= flourished_level"});
  }
  if (r.void_max_core_sections_with_evidence < 0) {
    out.push_back({"void_max_core_sections_with_evidence", "out-of-range",
                   "must be non-negative"});
  }
  if (r.void_max_mean_core_score < 0.0) {
    out.push_back({"void_max_mean_core_score", "out-of-range", "must be non-negative"});
  }
  return out;
}

NormalizedLevel normalize_availability(const Availability& a, const Ruleset& r) {
  switch (a.kind) {
    case Availability::Kind::kUnknown:
      return NormalizedLevel::unknown();
    case Availability::Kind::kNotApplicable:
      return NormalizedLevel::not_applicable();
    case Availability::Kind::kEnumerated:
      return NormalizedLevel::known(a.level);
    case Availability::Kind::kCount:
      return NormalizedLevel::known(level_for_count(a.n, r));
    case Availability::Kind::kAtLeastCount:
      // The bound is a floor, so the level is a floor too.
      return NormalizedLevel::known(level_for_count(a.n, r), /*lower_bound=*/true);
  }
  return NormalizedLevel::unknown();
}

std::optional<double> section_score(const SectionAssessment& s, const Ruleset& r) {
  int sum = 0;
  int known = 0;
  for (const auto& item : s.items) {
    const NormalizedLevel level = normalize_availability(item.availability, r);
    if (level.is_known()) {
      sum += level.level;
      ++known;
    }
  }
  if (known == 0) {
    return std::nullopt;
  }
  return static_cast<double>(sum) / known;
}

Classification classify(const Assessment& a, const Framework& fw, const Ruleset& r) {
  Classification result;

  // Score framework sections in framework order. A framework section absent
  // from the assessment scores unknown.
  for (const auto& def : fw.sections) {
    SectionScore entry{def.name, def.core, std::nullopt};
    for (const auto& section : a.sections) {
      if (canonical_item_key(section.name) == canonical_item_key(def.name)) {
        entry.score = section_score(section, r);
        for (const auto& item : section.items) {
          const NormalizedLevel level = normalize_availability(item.availability, r);
          if (level.lower_bound) {
            result.trace.push_back(
                {"normalize",
                 def.name + "/" + item.name + ": level " + std::to_string(level.level) +
                     " from open-ended count " + std::to_string(item.availability.n) +
                     "+ (lower bound)",
                 "note"});
          }
        }
        break;
      }
    }
    result.section_scores.push_back(std::move(entry));
  }

  int known_sections = 0;
  int known_at_premature = 0;
  bool all_known = true;
  bool all_at_mature = true;
  bool all_at_flourished = true;
  double core_sum = 0.0;
  int core_known = 0;
  for (const auto& entry : result.section_scores) {
    if (!entry.score.has_value()) {
      all_known = false;
      continue;
    }
    ++known_sections;
    if (*entry.score >= r.premature_level) ++known_at_premature;
    if (*entry.score < r.mature_level) all_at_mature = false;
    if (*entry.score < r.flourished_level) all_at_flourished = false;
    if (entry.core) {
      core_sum += *entry.score;
      ++core_known;
      if (*entry.score > 0.0) ++result.core_evidence_count;
    }
  }

  if (known_sections == 0) {
    throw InsufficientDataError(
        "every section score is unknown; nothing to classify");
  }

  result.mean_core_score = core_known > 0 ? core_sum / core_known : 0.0;
  const double premature_fraction =
      static_cast<double>(known_at_premature) / known_sections;

  // Fixed rule order; Mature and Flourished demand all sections known
  // because an "all areas" claim cannot stand on missing areas.
  std::string section_summary;
  for (const auto& entry : result.section_scores) {
    if (!section_summary.empty()) section_summary += ", ";
    section_summary +=
        entry.name + "=" + (entry.score ? format_score(*entry.score) : "unknown");
  }

  const bool flourished = all_known && all_at_flourished;
  result.trace.push_back({"flourished",
                          "all sections known=" + std::string(all_known ? "yes" : "no") +
                              "; every score >= " + format_score(r.flourished_level) +
                              ": " + section_summary,
                          flourished ? "selected" : "rejected"});
  if (flourished) {
    result.category = ReadinessCategory::kFlourished;
    return result;
  }

  const bool mature = all_known && all_at_mature;
  result.trace.push_back({"mature",
                          "all sections known=" + std::string(all_known ? "yes" : "no") +
                              "; every score >= " + format_score(r.mature_level) + ": " +
                              section_summary,
                          mature ? "selected" : "rejected"});
  if (mature) {
    result.category = ReadinessCategory::kMature;
    return result;
  }

  const bool premature = premature_fraction >= r.nearly_all_fraction;
  result.trace.push_back(
      {"premature",
       std::to_string(known_at_premature) + "/" + std::to_string(known_sections) +
           " known sections at score >= " + format_score(r.premature_level) +
           " (fraction " + format_score(premature_fraction) + ", need " +
           format_score(r.nearly_all_fraction) + ")",
       premature ? "selected" : "rejected"});
  if (premature) {
    result.category = ReadinessCategory::kPremature;
    return result;
  }

  const bool is_void =
      result.core_evidence_count <= r.void_max_core_sections_with_evidence &&
      result.mean_core_score <= r.void_max_mean_core_score;
  result.trace.push_back(
      {"void",
       std::to_string(result.core_evidence_count) +
           " core sections with evidence (max " +
           std::to_string(r.void_max_core_sections_with_evidence) +
           "); mean core score " + format_score(result.mean_core_score) + " (max " +
           format_score(r.void_max_mean_core_score) + ")",
       is_void ? "selected" : "rejected"});
  if (is_void) {
    result.category = ReadinessCategory::kVoid;
    return result;
  }

  result.trace.push_back({"infancy", "no earlier rule selected", "selected"});
  result.category = ReadinessCategory::kInfancy;
  return result;
}

Classification what_if(const Assessment& a,
                       const std::vector<AvailabilityOverride>& overrides,
                       const Framework& fw, const Ruleset& r) {
  Assessment modified = a;
  for (const auto& override_entry : overrides) {
    bool applied = false;
    for (auto& section : modified.sections) {
      if (canonical_item_key(section.name) != canonical_item_key(override_entry.section)) {
        continue;
      }
      for (auto& item : section.items) {
        if (canonical_item_key(item.name) == canonical_item_key(override_entry.item)) {
          item.availability = override_entry.availability;
          applied = true;
          break;
        }
      }
      if (applied) break;
    }
    if (!applied) {
      throw UnknownPathError("no item '" + override_entry.section + "/" +
                             override_entry.item + "' in the assessment");
    }
  }
  return classify(modified, fw, r);
}

RulesetConfig load_ruleset_overrides(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed ruleset file: ") + e.what());
  }
  if (!doc.is_object()) {
    throw SemanticError("ruleset file must be a JSON object");
  }

  RulesetConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "count_thresholds") {
      if (!value.is_array() || value.size() != 2) {
        throw SemanticError("count_thresholds must be [t1, t2]");
      }
      config.ruleset.count_t1 = value[0].get<std::int64_t>();
      config.ruleset.count_t2 = value[1].get<std::int64_t>();
    } else if (key == "nearly_all_fraction") {
      config.ruleset.nearly_all_fraction = value.get<double>();
    } else if (key == "premature_level") {
      config.ruleset.premature_level = value.get<double>();
    } else if (key == "mature_level") {
      config.ruleset.mature_level = value.get<double>();
    } else if (key == "flourished_level") {
      config.ruleset.flourished_level = value.get<double>();
    } else if (key == "void_max_core_sections_with_evidence") {
      config.ruleset.void_max_core_sections_with_evidence = value.get<int>();
    } else if (key == "void_max_mean_core_score") {
      config.ruleset.void_max_mean_core_score = value.get<double>();
    } else if (key == "visibility_thresholds") {
      if (!value.is_array() || value.size() != 3) {
        throw SemanticError("visibility_thresholds must be [v1, v2, v3]");
      }
      config.visibility.v1 = value[0].get<std::int64_t>();
      config.visibility.v2 = value[1].get<std::int64_t>();
      config.visibility.v3 = value[2].get<std::int64_t>();
    } else {
      throw SemanticError("unknown ruleset key '" + key + "'");
    }
  }

  if (auto violations = validate_ruleset(config.ruleset); !violations.empty()) {
    throw SemanticError("invalid ruleset: " + violations.front().path + ": " +
                        violations.front().message);
  }
  if (!(config.visibility.v1 > 0 && config.visibility.v1 < config.visibility.v2 &&
        config.visibility.v2 < config.visibility.v3)) {
    throw SemanticError("invalid visibility thresholds: require 0 < v1 < v2 < v3");
  }
  return config;
}

std::string_view to_string(ReadinessCategory c) {
  switch (c) {
    case ReadinessCategory::kVoid: return "Void";
    case ReadinessCategory::kInfancy: return "Infancy";
    case ReadinessCategory::kPremature: return "Premature";
    case ReadinessCategory::kMature: return "Mature";
    case ReadinessCategory::kFlourished: return "Flourished";
  }
  return "Void";
}

}  // namespace dhuraf
