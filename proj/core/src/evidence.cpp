#include "dhuraf/evidence.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "dhuraf/assessment.hpp"
#include "dhuraf/errors.hpp"
#include "dhuraf/scoring.hpp"

namespace dhuraf {

namespace {

// Minimal RFC-4180 reader: quoted fields, doubled quotes, CRLF or LF rows.
std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
  };

  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field.empty() && !field_started) {
          in_quotes = true;
          field_started = true;
        } else {
          throw ParseError("row " + std::to_string(rows.size() + 1) +
                           ": stray quote inside unquoted field");
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field.push_back(c);
        field_started = true;
        break;
    }
  }
  if (in_quotes) {
    throw ParseError("row " + std::to_string(rows.size() + 1) + ": unterminated quote");
  }
  if (field_started || !row.empty() || !field.empty()) {
    end_row();
  }
  return rows;
}

std::int64_t parse_count(const std::string& text, size_t row_number) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](unsigned char c) { return std::isdigit(c); })) {
    throw ParseError("row " + std::to_string(row_number) + ": bad result_count '" +
                     text + "'");
  }
  return std::stoll(text);
}

}  // namespace

NormalizedLevel visibility_level(const std::vector<std::int64_t>& hit_counts,
                                 const VisibilityThresholds& t) {
  if (hit_counts.empty()) {
    throw Error("visibility_level: no hit counts given");
  }
  double sum = 0.0;
  for (std::int64_t count : hit_counts) {
    sum += static_cast<double>(count);
  }
  const double mean = sum / static_cast<double>(hit_counts.size());
  int level = 3;
  if (mean < static_cast<double>(t.v1)) {
    level = 0;
  } else if (mean < static_cast<double>(t.v2)) {
    level = 1;
  } else if (mean < static_cast<double>(t.v3)) {
    level = 2;
  }
  return NormalizedLevel::known(level);
}

InterviewDistribution interview_distribution(
    const std::vector<InterviewResponse>& responses) {
  if (responses.empty()) {
    throw Error("interview_distribution: no responses given");
  }

  InterviewDistribution dist;
  std::vector<std::string> subject_order;
  std::map<std::string, std::map<std::string, int>> counts;  // subject -> class -> n
  std::map<std::string, std::vector<std::string>> class_order;
  std::map<std::string, std::set<std::string>> respondents;
  std::map<std::string, int> response_counts;
  bool have_ids = true;

  for (const auto& response : responses) {
    if (counts.find(response.subject) == counts.end()) {
      subject_order.push_back(response.subject);
    }
    auto& by_class = counts[response.subject];
    if (by_class.find(response.response_class) == by_class.end()) {
      class_order[response.subject].push_back(response.response_class);
    }
    ++by_class[response.response_class];
    ++response_counts[response.subject];
    if (response.respondent.empty()) {
      have_ids = false;
    } else {
      respondents[response.subject].insert(response.respondent);
    }
  }

  for (const auto& subject : subject_order) {
    const int total = have_ids ? static_cast<int>(respondents[subject].size())
                               : response_counts[subject];
    dist.respondent_totals[subject] = total;
    for (const auto& response_class : class_order[subject]) {
      const int n = counts[subject][response_class];
      dist.rows.push_back(
          {subject, response_class, 100.0 * n / response_counts[subject]});
    }
  }
  return dist;
}

std::vector<EvidenceRecord> import_search_log(std::string_view csv) {
  const auto rows = read_csv(csv);
  if (rows.empty()) {
    throw ParseError("search log is empty; expected a header row");
  }
  const std::vector<std::string> expected_header = {
      "engine", "query", "result_count", "relevance", "date", "section", "item"};
  if (rows.front() != expected_header) {
    throw ParseError(
        "row 1: bad header; expected engine,query,result_count,relevance,date,"
        "section,item");
  }

  std::vector<EvidenceRecord> records;
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const size_t row_number = i + 1;
    if (row.size() != expected_header.size()) {
      throw ParseError("row " + std::to_string(row_number) + ": expected " +
                       std::to_string(expected_header.size()) + " fields, got " +
                       std::to_string(row.size()));
    }
    EvidenceRecord rec;
    rec.id = "ev-search-" + std::to_string(records.size() + 1);
    rec.kind = EvidenceKind::kSearch;
    rec.source = row[0];
    rec.query = row[1];
    rec.result_count = parse_count(row[2], row_number);
    auto relevance = relevance_from_string(row[3]);
    if (!relevance) {
      throw ParseError("row " + std::to_string(row_number) + ": bad relevance '" +
                       row[3] + "'");
    }
    rec.relevance = *relevance;
    rec.date = row[4];
    if (!row[5].empty() && !row[6].empty()) {
      rec.item_ref = {row[5], row[6]};
    } else if (row[5].empty() != row[6].empty()) {
      throw ParseError("row " + std::to_string(row_number) +
                       ": section and item must be given together");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

Assessment attach_evidence(const Assessment& a, const EvidenceRecord& rec,
                           const std::pair<std::string, std::string>& item_path) {
  for (const auto& existing : a.evidence) {
    if (existing.id == rec.id) {
      throw DuplicateIdError("evidence id '" + rec.id + "' already in the ledger");
    }
  }

  Assessment out = a;
  bool attached = false;
  for (auto& section : out.sections) {
    if (canonical_item_key(section.name) != canonical_item_key(item_path.first)) {
      continue;
    }
    for (auto& item : section.items) {
      if (canonical_item_key(item.name) == canonical_item_key(item_path.second)) {
        item.evidence_refs.push_back(rec.id);
        attached = true;
        break;
      }
    }
    if (attached) break;
  }
  if (!attached) {
    throw UnknownPathError("no item '" + item_path.first + "/" + item_path.second +
                           "' in the assessment");
  }
  out.evidence.push_back(rec);
  return out;
}

std::optional<AvailabilitySuggestion> suggest_availability(
    const Assessment& a, const std::pair<std::string, std::string>& item_path,
    const VisibilityThresholds& t, const Ruleset& r) {
  const ItemAssessment* item = find_item(a, item_path.first, item_path.second);
  if (item == nullptr) {
    throw UnknownPathError("no item '" + item_path.first + "/" + item_path.second +
                           "' in the assessment");
  }

  std::vector<std::int64_t> search_counts;
  std::int64_t catalog_total = 0;
  bool have_catalog_size = false;
  for (const auto& ref : item->evidence_refs) {
    for (const auto& rec : a.evidence) {
      if (rec.id != ref) continue;
      if (rec.kind == EvidenceKind::kSearch) {
        search_counts.push_back(rec.result_count);
      } else if ((rec.kind == EvidenceKind::kCatalog ||
                  rec.kind == EvidenceKind::kPriori) &&
                 rec.approx_size.has_value()) {
        catalog_total += *rec.approx_size;
        have_catalog_size = true;
      }
    }
  }

  if (!search_counts.empty()) {
    const NormalizedLevel level = visibility_level(search_counts, t);
    std::ostringstream rationale;
    rationale << "mean of " << search_counts.size() << " search hit count"
              << (search_counts.size() == 1 ? "" : "s")
              << " against visibility thresholds -> level " << level.level;
    return AvailabilitySuggestion{level, rationale.str()};
  }
  if (have_catalog_size) {
    const NormalizedLevel level =
        normalize_availability(Availability::count(catalog_total), r);
    std::ostringstream rationale;
    rationale << "recorded holdings total " << catalog_total
              << " against count thresholds -> level " << level.level;
    return AvailabilitySuggestion{level, rationale.str()};
  }
  return std::nullopt;
}

std::string_view to_string(EvidenceKind kind) {
  switch (kind) {
    case EvidenceKind::kSearch: return "search";
    case EvidenceKind::kInterview: return "interview";
    case EvidenceKind::kCatalog: return "catalog";
    case EvidenceKind::kPriori: return "priori";
  }
  return "priori";
}

std::string_view to_string(Relevance relevance) {
  switch (relevance) {
    case Relevance::kHigh: return "high";
    case Relevance::kPartly: return "partly";
    case Relevance::kNone: return "none";
    case Relevance::kNa: return "na";
  }
  return "na";
}

std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s) {
  if (s == "search") return EvidenceKind::kSearch;
  if (s == "interview") return EvidenceKind::kInterview;
  if (s == "catalog") return EvidenceKind::kCatalog;
  if (s == "priori") return EvidenceKind::kPriori;
  return std::nullopt;
}

std::optional<Relevance> relevance_from_string(std::string_view s) {
  if (s == "high") return Relevance::kHigh;
  if (s == "partly") return Relevance::kPartly;
  if (s == "none") return Relevance::kNone;
  if (s == "na") return Relevance::kNa;
  return std::nullopt;
}

}  // namespace dhuraf
