#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dhuraf/level.hpp"

namespace dhuraf {

struct Assessment;
struct Ruleset;

enum class EvidenceKind { kSearch, kInterview, kCatalog, kPriori };

enum class Relevance { kHigh, kPartly, kNone, kNa };

/// One provenance-carrying observation backing an availability judgment.
/// Which payload fields are meaningful depends on `kind`:
///   search    -> query, result_count, relevance
///   interview -> subject, response
///   catalog / priori -> summary, approx_size
struct EvidenceRecord {
  std::string id;
  EvidenceKind kind = EvidenceKind::kPriori;
  std::string source;  // engine name, institution, publication
  std::string date;    // ISO-8601

  // Optional (section, item) the observation speaks to.
  std::optional<std::pair<std::string, std::string>> item_ref;

  // search payload
  std::string query;
  std::int64_t result_count = 0;
  Relevance relevance = Relevance::kNa;

  // interview payload
  std::string subject;
  std::string response;

  // catalog / priori payload
  std::string summary;
  std::optional<std::int64_t> approx_size;

  bool operator==(const EvidenceRecord&) const = default;
};

/// Maps total-hit counts onto the 0..3 scale:
/// mean < v1 -> 0; < v2 -> 1; < v3 -> 2; >= v3 -> 3.
struct VisibilityThresholds {
  std::int64_t v1 = 1'000;
  std::int64_t v2 = 100'000;
  std::int64_t v3 = 2'000'000;
};

struct InterviewResponse {
  std::string respondent;  // empty when respondents are anonymous
  std::string subject;
  std::string response_class;
};

struct InterviewDistribution {
  struct Row {
    std::string subject;
    std::string response_class;
    double percent = 0.0;  // of respondents for this subject
  };
  std::vector<Row> rows;  // grouped by subject, first-seen order
  std::map<std::string, int> respondent_totals;  // per subject
};

/// Level for the arithmetic mean of the hit counts. Throws Error on empty
/// input.
NormalizedLevel visibility_level(const std::vector<std::int64_t>& hit_counts,
                                 const VisibilityThresholds& t = {});

/// Per-subject response-class percentages. When respondent ids are supplied
/// the per-subject total counts distinct respondents, otherwise responses.
/// Throws Error on empty input.
InterviewDistribution interview_distribution(
    const std::vector<InterviewResponse>& responses);

/// Parses a search log CSV (header: engine,query,result_count,relevance,date,
/// section,item) into search-kind records with ids "ev-search-<n>" in row
/// order. Throws ParseError with the offending row number.
std::vector<EvidenceRecord> import_search_log(std::string_view csv);

/// Returns a copy of `a` with `rec` in the ledger and its id appended to the
/// item's evidence_refs. Throws DuplicateIdError / UnknownPathError.
Assessment attach_evidence(const Assessment& a, const EvidenceRecord& rec,
                           const std::pair<std::string, std::string>& item_path);

struct AvailabilitySuggestion {
  NormalizedLevel level;
  std::string rationale;
};

/// Advisory level for an item from its attached quantitative evidence:
/// search hits via visibility thresholds, catalog/priori sizes via the
/// ruleset's count thresholds. No quantitative evidence -> nullopt.
/// Never mutates the assessment. Throws UnknownPathError.
std::optional<AvailabilitySuggestion> suggest_availability(
    const Assessment& a, const std::pair<std::string, std::string>& item_path,
    const VisibilityThresholds& t, const Ruleset& r);

std::string_view to_string(EvidenceKind kind);
std::string_view to_string(Relevance relevance);
std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s);
std::optional<Relevance> relevance_from_string(std::string_view s);

}  // namespace dhuraf
