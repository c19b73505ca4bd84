#include "dhuraf/report.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dhuraf/errors.hpp"

namespace dhuraf {

namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) {
    return cell;
  }
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

const ItemAssessment* item_for(const Assessment& a, const std::string& section,
                               const std::string& item) {
  return find_item(a, section, item);
}

std::string render_markdown(const Assessment& a, const Framework& fw) {
  std::string out;
  out += "| Sections | Importance | Availability |\n";
  out += "| --- | --- | --- |\n";
  for (const auto& section : fw.sections) {
    out += "| **" + section.name + "** |  |  |\n";
    for (const auto& def : section.items) {
      const ItemAssessment* item = item_for(a, section.name, def.name);
      const std::string importance = item ? render_importance(item->importance) : "";
      const std::string availability = item ? render_availability(item->availability) : "";
      out += "| " + def.name + " | " + importance + " | " + availability + " |\n";
    }
  }
  return out;
}

std::string render_csv(const Assessment& a, const Framework& fw) {
  std::string out = "Sections,Importance,Availability\r\n";
  for (const auto& section : fw.sections) {
    out += csv_escape(section.name) + ",,\r\n";
    for (const auto& def : section.items) {
      const ItemAssessment* item = item_for(a, section.name, def.name);
      const std::string importance = item ? render_importance(item->importance) : "";
      const std::string availability = item ? render_availability(item->availability) : "";
      out += csv_escape(def.name) + "," + csv_escape(importance) + "," +
             csv_escape(availability) + "\r\n";
    }
  }
  return out;
}

std::string render_json(const Assessment& a, const Framework& fw) {
  using json = nlohmann::ordered_json;
  json doc = json::object();
  doc["framework"] = fw.id;
  json subject = json::object();
  subject["community"] = a.subject.community;
  subject["language"] = a.subject.language;
  subject["date"] = a.subject.date;
  doc["subject"] = std::move(subject);

  json sections = json::array();
  for (const auto& section : fw.sections) {
    json sj = json::object();
    sj["name"] = section.name;
    json items = json::array();
    for (const auto& def : section.items) {
      const ItemAssessment* item = item_for(a, section.name, def.name);
      json ij = json::object();
      ij["name"] = def.name;
      if (item == nullptr || item->importance.undecided()) {
        ij["importance"] = nullptr;
      } else {
        ij["importance"] = item->importance.degree;
      }
      json av = json::object();
      const Availability availability =
          item != nullptr ? item->availability : Availability::unknown();
      switch (availability.kind) {
        case Availability::Kind::kUnknown:
          av["kind"] = "unknown";
          break;
        case Availability::Kind::kNotApplicable:
          av["kind"] = "na";
          break;
        case Availability::Kind::kEnumerated:
          av["kind"] = "enumerated";
          av["level"] = availability.level;
          break;
        case Availability::Kind::kCount:
          av["kind"] = "count";
          av["n"] = availability.n;
          break;
        case Availability::Kind::kAtLeastCount:
          av["kind"] = "at_least";
          av["n"] = availability.n;
          break;
      }
      ij["availability"] = std::move(av);
      ij["rendered"] = render_availability(availability);
      items.push_back(std::move(ij));
    }
    sj["items"] = std::move(items);
    sections.push_back(std::move(sj));
  }
  doc["sections"] = std::move(sections);
  return doc.dump(2) + "\n";
}

}  // namespace

std::string render_importance(const Importance& imp) {
  return std::string(static_cast<size_t>(imp.degree), '+');
}

std::string render_availability(const Availability& av) {
  switch (av.kind) {
    case Availability::Kind::kUnknown:
      return "";
    case Availability::Kind::kNotApplicable:
      return "NA";
    case Availability::Kind::kEnumerated:
      return std::to_string(av.level);
    case Availability::Kind::kCount:
      return std::to_string(av.n);
    case Availability::Kind::kAtLeastCount:
      return std::to_string(av.n) + "+";
  }
  return "";
}

std::string render_indicator_table(const Assessment& a, const Framework& fw,
                                   TableFormat format) {
  switch (format) {
    case TableFormat::kMarkdown:
      return render_markdown(a, fw);
    case TableFormat::kCsv:
      return render_csv(a, fw);
    case TableFormat::kJson:
      return render_json(a, fw);
  }
  throw Error("invalid table format");
}

std::vector<GapEntry> gap_report(const Assessment& a, const Framework& fw,
                                 const Ruleset& r) {
  std::vector<GapEntry> scored;
  std::vector<GapEntry> unassessed;
  for (const auto& section : fw.sections) {
    for (const auto& def : section.items) {
      GapEntry entry;
      entry.section = section.name;
      entry.item = def.name;
      const ItemAssessment* item = item_for(a, section.name, def.name);
      if (item != nullptr) {
        entry.importance_degree = item->importance.degree;
        const NormalizedLevel level = normalize_availability(item->availability, r);
        if (level.is_known()) {
          entry.normalized_level = level.level;
          entry.gap_score = entry.importance_degree * (3 - level.level);
          scored.push_back(std::move(entry));
          continue;
        }
      }
      unassessed.push_back(std::move(entry));
    }
  }
  // Descending by gap; stable sort keeps ties in framework order.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const GapEntry& lhs, const GapEntry& rhs) {
                     return lhs.gap_score > rhs.gap_score;
                   });
  scored.insert(scored.end(), std::make_move_iterator(unassessed.begin()),
                std::make_move_iterator(unassessed.end()));
  return scored;
}

ComparisonReport compare(const Assessment& a, const Assessment& b,
                         const Framework& fw, const Ruleset& r) {
  if (normalize_name(a.framework_id) != normalize_name(b.framework_id)) {
    throw Error("framework mismatch: '" + a.framework_id + "' vs '" +
                b.framework_id + "'");
  }

  ComparisonReport report;
  report.subjects = {a.subject, b.subject};

  const Classification ca = classify(a, fw, r);
  const Classification cb = classify(b, fw, r);
  report.categories = {ca.category, cb.category};

  for (size_t i = 0; i < ca.section_scores.size(); ++i) {
    report.sections.push_back({ca.section_scores[i].name, ca.section_scores[i].score,
                               cb.section_scores[i].score});
  }

  auto level_of = [&](const Assessment& assessment, const std::string& section,
                      const std::string& item) -> std::optional<int> {
    const ItemAssessment* found = item_for(assessment, section, item);
    if (found == nullptr) {
      return std::nullopt;
    }
    const NormalizedLevel level = normalize_availability(found->availability, r);
    if (!level.is_known()) {
      return std::nullopt;
    }
    return level.level;
  };

  // The union of items present in either assessment, in framework order.
  for (const auto& section : fw.sections) {
    for (const auto& def : section.items) {
      const bool in_a = item_for(a, section.name, def.name) != nullptr;
      const bool in_b = item_for(b, section.name, def.name) != nullptr;
      if (!in_a && !in_b) {
        continue;
      }
      report.items.push_back({section.name, def.name,
                              level_of(a, section.name, def.name),
                              level_of(b, section.name, def.name)});
    }
  }
  return report;
}

}  // namespace dhuraf
