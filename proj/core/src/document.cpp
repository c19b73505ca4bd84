#include "dhuraf/document.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "dhuraf/errors.hpp"

namespace dhuraf {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kDocumentVersion = "1";

[[noreturn]] void semantic(const std::string& where, const std::string& what) {
  throw SemanticError(where + ": " + what);
}

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) {
    semantic(where, "expected an object");
  }
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      semantic(where, "unknown key '" + key + "'");
    }
  }
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& where, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) {
      semantic(where, "missing required key '" + key + "'");
    }
    return {};
  }
  if (!it->is_string()) {
    semantic(where, "key '" + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::int64_t get_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    semantic(where, "expected an integer");
  }
  return j.get<std::int64_t>();
}

bool is_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
    return false;
  }
  for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (s[i] < '0' || s[i] > '9') {
      return false;
    }
  }
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

MeasurementHint parse_hint(const std::string& token, const std::string& where) {
  if (token == "count") return MeasurementHint::kCount;
  if (token == "enumerated") return MeasurementHint::kEnumerated;
  if (token == "either") return MeasurementHint::kEither;
  semantic(where, "bad measurement_hint '" + token + "'");
}

Framework parse_framework_object(const json& j, const std::string& where) {
  require_object(j, where);
  reject_unknown_keys(j, where, {"id", "sections"});
  Framework fw;
  fw.id = get_string(j, "id", where, true);
  auto sections = j.find("sections");
  if (sections == j.end() || !sections->is_array()) {
    semantic(where, "missing 'sections' array");
  }
  for (const auto& sj : *sections) {
    const std::string spath = where + "/sections";
    require_object(sj, spath);
    reject_unknown_keys(sj, spath, {"name", "core", "items"});
    SectionDef section;
    section.name = get_string(sj, "name", spath, true);
    if (auto core = sj.find("core"); core != sj.end()) {
      if (!core->is_boolean()) {
        semantic(spath + "/" + section.name, "'core' must be a boolean");
      }
      section.core = core->get<bool>();
    }
    auto items = sj.find("items");
    if (items == sj.end() || !items->is_array()) {
      semantic(spath + "/" + section.name, "missing 'items' array");
    }
    for (const auto& ij : *items) {
      const std::string ipath = spath + "/" + section.name + "/items";
      require_object(ij, ipath);
      reject_unknown_keys(ij, ipath, {"name", "description", "measurement_hint"});
      ItemDef item;
      item.name = get_string(ij, "name", ipath, true);
      item.description = get_string(ij, "description", ipath, false);
      if (ij.contains("measurement_hint")) {
        item.measurement_hint =
            parse_hint(get_string(ij, "measurement_hint", ipath, true), ipath);
      }
      section.items.push_back(std::move(item));
    }
    fw.sections.push_back(std::move(section));
  }
  return fw;
}

Importance parse_importance(const json& j, const std::string& where) {
  if (j.is_null()) {
    return Importance::undecided_value();
  }
  const std::int64_t degree = get_integer(j, where + "/importance");
  if (degree < 1 || degree > 3) {
    semantic(where, "importance must be null or 1..3, got " + std::to_string(degree));
  }
  return Importance::level(static_cast<int>(degree));
}

Availability parse_availability(const json& j, const std::string& where) {
  if (j.is_number()) {
    // Bare numbers are ambiguous between the 0..3 enumeration and an exact
    // count; the format requires an explicit tag.
    semantic(where, "bare numeric availability is illegal; use "
                    "{\"kind\": \"enumerated\"|\"count\", ...}");
  }
  require_object(j, where + "/availability");
  const std::string kind = get_string(j, "kind", where, true);
  if (kind == "unknown" || kind == "na") {
    reject_unknown_keys(j, where, {"kind"});
    return kind == "na" ? Availability::not_applicable() : Availability::unknown();
  }
  if (kind == "enumerated") {
    reject_unknown_keys(j, where, {"kind", "level"});
    if (!j.contains("level")) {
      semantic(where, "enumerated availability requires 'level'");
    }
    const std::int64_t level = get_integer(j.at("level"), where + "/level");
    if (level < 0 || level > 3) {
      semantic(where, "enumerated level must be 0..3, got " + std::to_string(level));
    }
    return Availability::enumerated(static_cast<int>(level));
  }
  if (kind == "count" || kind == "at_least") {
    reject_unknown_keys(j, where, {"kind", "n"});
    if (!j.contains("n")) {
      semantic(where, "'" + kind + "' availability requires 'n'");
    }
    const std::int64_t n = get_integer(j.at("n"), where + "/n");
    if (kind == "count") {
      if (n < 0) {
        semantic(where, "count must be non-negative, got " + std::to_string(n));
      }
      return Availability::count(n);
    }
    if (n < 1) {
      semantic(where, "at_least bound must be positive, got " + std::to_string(n));
    }
    return Availability::at_least(n);
  }
  semantic(where, "bad availability kind '" + kind + "'");
}

EvidenceRecord parse_evidence_record(const json& j, const std::string& where) {
  require_object(j, where);
  EvidenceRecord rec;
  rec.id = get_string(j, "id", where, true);
  const std::string kind_token = get_string(j, "kind", where, true);
  auto kind = evidence_kind_from_string(kind_token);
  if (!kind) {
    semantic(where, "bad evidence kind '" + kind_token + "'");
  }
  rec.kind = *kind;
  rec.source = get_string(j, "source", where, true);
  rec.date = get_string(j, "date", where, true);

  const std::string section = get_string(j, "section", where, false);
  const std::string item = get_string(j, "item", where, false);
  if (!section.empty() || !item.empty()) {
    if (section.empty() || item.empty()) {
      semantic(where, "'section' and 'item' must be given together");
    }
    rec.item_ref = {section, item};
  }

  switch (rec.kind) {
    case EvidenceKind::kSearch: {
      reject_unknown_keys(j, where, {"id", "kind", "source", "date", "section",
                                     "item", "query", "result_count", "relevance"});
      rec.query = get_string(j, "query", where, true);
      if (!j.contains("result_count")) {
        semantic(where, "search evidence requires 'result_count'");
      }
      rec.result_count = get_integer(j.at("result_count"), where + "/result_count");
      if (rec.result_count < 0) {
        semantic(where, "result_count must be non-negative");
      }
      const std::string rel = get_string(j, "relevance", where, true);
      auto relevance = relevance_from_string(rel);
      if (!relevance) {
        semantic(where, "bad relevance '" + rel + "'");
      }
      rec.relevance = *relevance;
      break;
    }
    case EvidenceKind::kInterview:
      reject_unknown_keys(j, where, {"id", "kind", "source", "date", "section",
                                     "item", "subject", "response"});
      rec.subject = get_string(j, "subject", where, true);
      rec.response = get_string(j, "response", where, true);
      break;
    case EvidenceKind::kCatalog:
    case EvidenceKind::kPriori:
      reject_unknown_keys(j, where, {"id", "kind", "source", "date", "section",
                                     "item", "summary", "approx_size"});
      rec.summary = get_string(j, "summary", where, true);
      if (j.contains("approx_size")) {
        const std::int64_t size = get_integer(j.at("approx_size"), where + "/approx_size");
        if (size < 0) {
          semantic(where, "approx_size must be non-negative");
        }
        rec.approx_size = size;
      }
      break;
  }
  return rec;
}

json availability_to_json(const Availability& av) {
  json j = json::object();
  switch (av.kind) {
    case Availability::Kind::kUnknown:
      j["kind"] = "unknown";
      break;
    case Availability::Kind::kNotApplicable:
      j["kind"] = "na";
      break;
    case Availability::Kind::kEnumerated:
      j["kind"] = "enumerated";
      j["level"] = av.level;
      break;
    case Availability::Kind::kCount:
      j["kind"] = "count";
      j["n"] = av.n;
      break;
    case Availability::Kind::kAtLeastCount:
      j["kind"] = "at_least";
      j["n"] = av.n;
      break;
  }
  return j;
}

json framework_to_json(const Framework& fw) {
  json j = json::object();
  j["id"] = fw.id;
  json sections = json::array();
  for (const auto& section : fw.sections) {
    json sj = json::object();
    sj["name"] = section.name;
    sj["core"] = section.core;
    json items = json::array();
    for (const auto& item : section.items) {
      json ij = json::object();
      ij["name"] = item.name;
      if (!item.description.empty()) {
        ij["description"] = item.description;
      }
      if (item.measurement_hint != MeasurementHint::kEither) {
        ij["measurement_hint"] =
            item.measurement_hint == MeasurementHint::kCount ? "count" : "enumerated";
      }
      items.push_back(std::move(ij));
    }
    sj["items"] = std::move(items);
    sections.push_back(std::move(sj));
  }
  j["sections"] = std::move(sections);
  return j;
}

json evidence_to_json(const EvidenceRecord& rec) {
  json j = json::object();
  j["id"] = rec.id;
  j["kind"] = std::string(to_string(rec.kind));
  j["source"] = rec.source;
  j["date"] = rec.date;
  switch (rec.kind) {
    case EvidenceKind::kSearch:
      j["query"] = rec.query;
      j["result_count"] = rec.result_count;
      j["relevance"] = std::string(to_string(rec.relevance));
      break;
    case EvidenceKind::kInterview:
      j["subject"] = rec.subject;
      j["response"] = rec.response;
      break;
    case EvidenceKind::kCatalog:
    case EvidenceKind::kPriori:
      j["summary"] = rec.summary;
      if (rec.approx_size.has_value()) {
        j["approx_size"] = *rec.approx_size;
      }
      break;
  }
  if (rec.item_ref.has_value()) {
    j["section"] = rec.item_ref->first;
    j["item"] = rec.item_ref->second;
  }
  return j;
}

// Stable-sorts sections and items into framework order; names the framework
// does not know keep their relative order after the known ones.
void canonicalize_order(Assessment& a) {
  const Framework* fw = nullptr;
  try {
    fw = &resolve_framework(a);
  } catch (const Error&) {
    return;
  }

  std::unordered_map<std::string, size_t> section_rank;
  for (size_t i = 0; i < fw->sections.size(); ++i) {
    section_rank[normalize_name(fw->sections[i].name)] = i;
  }
  auto rank_of = [](const std::unordered_map<std::string, size_t>& ranks,
                    const std::string& key) {
    auto it = ranks.find(key);
    return it == ranks.end() ? std::numeric_limits<size_t>::max() : it->second;
  };
  std::stable_sort(a.sections.begin(), a.sections.end(),
                   [&](const SectionAssessment& lhs, const SectionAssessment& rhs) {
                     return rank_of(section_rank, canonical_item_key(lhs.name)) <
                            rank_of(section_rank, canonical_item_key(rhs.name));
                   });

  for (auto& section : a.sections) {
    const SectionDef* def = lookup_section(*fw, section.name);
    if (def == nullptr) {
      continue;
    }
    std::unordered_map<std::string, size_t> item_rank;
    for (size_t i = 0; i < def->items.size(); ++i) {
      item_rank[normalize_name(def->items[i].name)] = i;
    }
    std::stable_sort(section.items.begin(), section.items.end(),
                     [&](const ItemAssessment& lhs, const ItemAssessment& rhs) {
                       return rank_of(item_rank, canonical_item_key(lhs.name)) <
                              rank_of(item_rank, canonical_item_key(rhs.name));
                     });
  }
}

}  // namespace

Assessment parse_assessment(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
  require_object(doc, "document");
  reject_unknown_keys(doc, "document",
                      {"dhuraf_version", "framework", "subject", "sections", "evidence"});

  const std::string version = get_string(doc, "dhuraf_version", "document", true);
  if (version != kDocumentVersion) {
    semantic("document", "unsupported dhuraf_version '" + version + "'");
  }

  Assessment a;
  auto fw = doc.find("framework");
  if (fw == doc.end()) {
    semantic("document", "missing required key 'framework'");
  }
  if (fw->is_string()) {
    a.framework_id = fw->get<std::string>();
  } else {
    a.inline_framework = parse_framework_object(*fw, "framework");
    a.framework_id = a.inline_framework->id;
  }

  auto subject = doc.find("subject");
  if (subject == doc.end()) {
    semantic("document", "missing required key 'subject'");
  }
  require_object(*subject, "subject");
  reject_unknown_keys(*subject, "subject",
                      {"community", "language", "region", "assessor", "date"});
  a.subject.community = get_string(*subject, "community", "subject", true);
  a.subject.language = get_string(*subject, "language", "subject", true);
  a.subject.region = get_string(*subject, "region", "subject", false);
  a.subject.assessor = get_string(*subject, "assessor", "subject", false);
  a.subject.date = get_string(*subject, "date", "subject", true);

  if (auto sections = doc.find("sections"); sections != doc.end()) {
    if (!sections->is_array()) {
      semantic("sections", "must be an array");
    }
    for (const auto& sj : *sections) {
      require_object(sj, "sections");
      reject_unknown_keys(sj, "sections", {"name", "items"});
      SectionAssessment section;
      section.name = get_string(sj, "name", "sections", true);
      const std::string spath = "sections/" + section.name;
      if (auto items = sj.find("items"); items != sj.end()) {
        if (!items->is_array()) {
          semantic(spath, "'items' must be an array");
        }
        for (const auto& ij : *items) {
          require_object(ij, spath + "/items");
          reject_unknown_keys(ij, spath + "/items",
                              {"name", "importance", "availability", "notes", "evidence"});
          ItemAssessment item;
          item.name = get_string(ij, "name", spath + "/items", true);
          const std::string ipath = spath + "/" + item.name;
          if (ij.contains("importance")) {
            item.importance = parse_importance(ij.at("importance"), ipath);
          }
          if (ij.contains("availability")) {
            item.availability = parse_availability(ij.at("availability"), ipath);
          }
          item.notes = get_string(ij, "notes", ipath, false);
          if (auto refs = ij.find("evidence"); refs != ij.end()) {
            if (!refs->is_array()) {
              semantic(ipath, "'evidence' must be an array of id strings");
            }
            for (const auto& ref : *refs) {
              if (!ref.is_string()) {
                semantic(ipath, "evidence refs must be strings");
              }
              item.evidence_refs.push_back(ref.get<std::string>());
            }
          }
          section.items.push_back(std::move(item));
        }
      }
      a.sections.push_back(std::move(section));
    }
  }

  if (auto evidence = doc.find("evidence"); evidence != doc.end()) {
    if (!evidence->is_array()) {
      semantic("evidence", "must be an array");
    }
    std::unordered_set<std::string> ids;
    size_t index = 0;
    for (const auto& ej : *evidence) {
      EvidenceRecord rec =
          parse_evidence_record(ej, "evidence[" + std::to_string(index) + "]");
      if (!ids.insert(rec.id).second) {
        semantic("evidence", "duplicate evidence id '" + rec.id + "'");
      }
      a.evidence.push_back(std::move(rec));
      ++index;
    }
  }
  return a;
}

std::string serialize_assessment(const Assessment& a) {
  Assessment ordered = a;
  canonicalize_order(ordered);

  json doc = json::object();
  doc["dhuraf_version"] = std::string(kDocumentVersion);
  if (ordered.inline_framework.has_value()) {
    doc["framework"] = framework_to_json(*ordered.inline_framework);
  } else {
    doc["framework"] = ordered.framework_id;
  }

  json subject = json::object();
  subject["community"] = ordered.subject.community;
  subject["language"] = ordered.subject.language;
  if (!ordered.subject.region.empty()) {
    subject["region"] = ordered.subject.region;
  }
  if (!ordered.subject.assessor.empty()) {
    subject["assessor"] = ordered.subject.assessor;
  }
  subject["date"] = ordered.subject.date;
  doc["subject"] = std::move(subject);

  json sections = json::array();
  for (const auto& section : ordered.sections) {
    json sj = json::object();
    sj["name"] = section.name;
    json items = json::array();
    for (const auto& item : section.items) {
      json ij = json::object();
      ij["name"] = item.name;
      ij["importance"] =
          item.importance.undecided() ? json(nullptr) : json(item.importance.degree);
      ij["availability"] = availability_to_json(item.availability);
      if (!item.notes.empty()) {
        ij["notes"] = item.notes;
      }
      if (!item.evidence_refs.empty()) {
        ij["evidence"] = item.evidence_refs;
      }
      items.push_back(std::move(ij));
    }
    sj["items"] = std::move(items);
    sections.push_back(std::move(sj));
  }
  doc["sections"] = std::move(sections);

  json evidence = json::array();
  for (const auto& rec : ordered.evidence) {
    evidence.push_back(evidence_to_json(rec));
  }
  doc["evidence"] = std::move(evidence);

  return doc.dump(2) + "\n";
}

std::vector<Violation> validate_assessment(const Assessment& a, const Framework& fw) {
  std::vector<Violation> out;

  if (!a.inline_framework.has_value() &&
      normalize_name(a.framework_id) != normalize_name(kCanonicalFrameworkId) &&
      normalize_name(a.framework_id) != normalize_name(fw.id)) {
    out.push_back({"framework", "unknown-framework",
                   "framework id '" + a.framework_id + "' does not resolve"});
  }
  if (a.inline_framework.has_value()) {
    for (auto violation : validate_framework(*a.inline_framework)) {
      violation.path = "framework/" + violation.path;
      out.push_back(std::move(violation));
    }
  }

  if (a.subject.community.empty()) {
    out.push_back({"subject/community", "empty-field", "community must be non-empty"});
  }
  if (a.subject.language.empty()) {
    out.push_back({"subject/language", "empty-field", "language must be non-empty"});
  }
  if (!is_iso_date(a.subject.date)) {
    out.push_back({"subject/date", "bad-date",
                   "'" + a.subject.date + "' is not an ISO-8601 date"});
  }

  std::unordered_set<std::string> evidence_ids;
  for (const auto& rec : a.evidence) {
    const std::string path = "evidence/" + rec.id;
    if (!evidence_ids.insert(rec.id).second) {
      out.push_back({path, "duplicate-evidence-id",
                     "evidence id '" + rec.id + "' is not unique"});
    }
    if (!is_iso_date(rec.date)) {
      out.push_back({path, "bad-date", "'" + rec.date + "' is not an ISO-8601 date"});
    }
    if (rec.item_ref.has_value() &&
        lookup_item(fw, rec.item_ref->first, rec.item_ref->second) == nullptr) {
      out.push_back({path, "unknown-evidence-item",
                     "item_ref '" + rec.item_ref->first + "/" + rec.item_ref->second +
                         "' is not in the framework"});
    }
  }

  std::unordered_set<std::string> section_keys;
  for (const auto& section : a.sections) {
    const std::string spath = "sections/" + section.name;
    if (!section_keys.insert(canonical_item_key(section.name)).second) {
      out.push_back({spath, "duplicate-section-name",
                     "section '" + section.name + "' appears more than once"});
    }
    const SectionDef* def = lookup_section(fw, section.name);
    if (def == nullptr) {
      out.push_back({spath, "unknown-section",
                     "section '" + section.name + "' is not in the framework"});
    }
    std::unordered_set<std::string> item_keys;
    for (const auto& item : section.items) {
      const std::string ipath = spath + "/" + item.name;
      if (!item_keys.insert(canonical_item_key(item.name)).second) {
        out.push_back({ipath, "duplicate-item-name",
                       "item '" + item.name + "' appears more than once in '" +
                           section.name + "'"});
      }
      if (def != nullptr && lookup_item(fw, section.name, item.name) == nullptr) {
        out.push_back({ipath, "unknown-item",
                       "item '" + item.name + "' is not in section '" + section.name +
                           "'"});
      }
      std::unordered_set<std::string> seen_refs;
      for (const auto& ref : item.evidence_refs) {
        if (!seen_refs.insert(ref).second) {
          out.push_back({ipath, "duplicate-evidence-ref",
                         "evidence id '" + ref + "' referenced twice"});
        }
        if (evidence_ids.find(ref) == evidence_ids.end()) {
          out.push_back({ipath, "dangling-evidence",
                         "evidence id '" + ref + "' is not in the ledger"});
        }
      }
    }
  }
  return out;
}

Framework parse_framework(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed framework document: ") + e.what());
  }
  return parse_framework_object(doc, "framework");
}

}  // namespace dhuraf
