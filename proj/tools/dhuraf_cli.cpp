// dhuraf: readiness-assessment CLI.
//
// Assessments flow through a pipeline (init -> evidence -> classify ->
// report), so everything lives behind one binary with subcommands.
// Exit codes: 0 success, 1 semantic/validation failure, 2 parse/IO/usage.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dhuraf/document.hpp"
#include "dhuraf/errors.hpp"
#include "dhuraf/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct CliConfig {
  std::string ruleset_path;
  std::string format = "plain";
  bool explain = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw dhuraf::Error("cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw dhuraf::Error("cannot write '" + path + "'");
  }
  out << content;
}

std::string today_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::chrono::year_month_day ymd{
      std::chrono::floor<std::chrono::days>(now)};
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()));
  return buffer;
}

dhuraf::RulesetConfig load_config(const CliConfig& config) {
  if (config.ruleset_path.empty()) {
    return {};
  }
  return dhuraf::load_ruleset_overrides(read_file(config.ruleset_path));
}

dhuraf::Assessment load_assessment(const std::string& path) {
  return dhuraf::parse_assessment(read_file(path));
}

// Validates against the resolved framework; on violations prints diagnostics
// to stderr and returns false.
bool check_valid(const dhuraf::Assessment& a, const dhuraf::Framework& fw,
                 const std::string& path) {
  const auto violations = dhuraf::validate_assessment(a, fw);
  if (violations.empty()) {
    return true;
  }
  for (const auto& violation : violations) {
    std::cerr << path << ": " << violation.path << ": [" << violation.rule << "] "
              << violation.message << "\n";
  }
  return false;
}

dhuraf::Availability parse_availability_token(const std::string& token) {
  const auto colon = token.find(':');
  const std::string kind = token.substr(0, colon);
  const std::string value =
      colon == std::string::npos ? "" : token.substr(colon + 1);
  auto to_number = [&]() -> std::int64_t {
    try {
      size_t used = 0;
      const std::int64_t n = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return n;
    } catch (const std::exception&) {
      throw dhuraf::Error("bad availability value '" + value + "' in '" + token + "'");
    }
  };
  if (kind == "unknown") return dhuraf::Availability::unknown();
  if (kind == "na") return dhuraf::Availability::not_applicable();
  if (kind == "enumerated") {
    const std::int64_t level = to_number();
    if (level < 0 || level > 3) {
      throw dhuraf::Error("enumerated level must be 0..3 in '" + token + "'");
    }
    return dhuraf::Availability::enumerated(static_cast<int>(level));
  }
  if (kind == "count") {
    const std::int64_t n = to_number();
    if (n < 0) throw dhuraf::Error("count must be non-negative in '" + token + "'");
    return dhuraf::Availability::count(n);
  }
  if (kind == "at_least") {
    const std::int64_t n = to_number();
    if (n < 1) throw dhuraf::Error("at_least bound must be positive in '" + token + "'");
    return dhuraf::Availability::at_least(n);
  }
  throw dhuraf::Error("bad availability kind in '" + token +
                      "' (want unknown|na|enumerated:K|count:N|at_least:N)");
}

dhuraf::AvailabilityOverride parse_override(const std::string& spec) {
  const auto eq = spec.find('=');
  const auto slash = spec.find('/');
  if (eq == std::string::npos || slash == std::string::npos || slash > eq) {
    throw dhuraf::Error("bad --set value '" + spec +
                        "' (want \"Section/Item=kind:value\")");
  }
  return {spec.substr(0, slash), spec.substr(slash + 1, eq - slash - 1),
          parse_availability_token(spec.substr(eq + 1))};
}

void print_classification(const dhuraf::Classification& result, bool explain) {
  std::cout << dhuraf::to_string(result.category) << "\n";
  if (!explain) {
    return;
  }
  std::cout << "\nSection scores:\n";
  for (const auto& entry : result.section_scores) {
    std::cout << "  " << entry.name << ": ";
    if (entry.score.has_value()) {
      std::cout << *entry.score;
    } else {
      std::cout << "unknown";
    }
    if (entry.core) {
      std::cout << " (core)";
    }
    std::cout << "\n";
  }
  std::cout << "Core sections with evidence: " << result.core_evidence_count
            << "; mean core score: " << result.mean_core_score << "\n";
  std::cout << "\nTrace:\n";
  for (const auto& entry : result.trace) {
    std::cout << "  [" << entry.outcome << "] " << entry.rule << ": "
              << entry.operands << "\n";
  }
}

std::string gap_table(const std::vector<dhuraf::GapEntry>& entries,
                      const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& entry : entries) {
      nlohmann::ordered_json ej;
      ej["section"] = entry.section;
      ej["item"] = entry.item;
      ej["importance"] = entry.importance_degree;
      if (entry.normalized_level.has_value()) {
        ej["level"] = *entry.normalized_level;
        ej["gap"] = entry.gap_score;
      } else {
        ej["level"] = nullptr;
        ej["gap"] = nullptr;
      }
      doc.push_back(std::move(ej));
    }
    return doc.dump(2) + "\n";
  }
  if (format == "csv") {
    out << "Section,Item,Importance,Level,Gap\r\n";
    for (const auto& entry : entries) {
      out << entry.section << "," << entry.item << "," << entry.importance_degree
          << ",";
      if (entry.normalized_level.has_value()) {
        out << *entry.normalized_level << "," << entry.gap_score;
      } else {
        out << ",";
      }
      out << "\r\n";
    }
    return out.str();
  }
  if (format == "markdown") {
    out << "| Section | Item | Importance | Level | Gap |\n";
    out << "| --- | --- | --- | --- | --- |\n";
    for (const auto& entry : entries) {
      out << "| " << entry.section << " | " << entry.item << " | "
          << entry.importance_degree << " | ";
      if (entry.normalized_level.has_value()) {
        out << *entry.normalized_level << " | " << entry.gap_score;
      } else {
        out << " | unassessed";
      }
      out << " |\n";
    }
    return out.str();
  }
  // plain
  for (const auto& entry : entries) {
    out << entry.section << "/" << entry.item << ": importance "
        << entry.importance_degree << ", ";
    if (entry.normalized_level.has_value()) {
      out << "level " << *entry.normalized_level << ", gap " << entry.gap_score;
    } else {
      out << "unassessed";
    }
    out << "\n";
  }
  return out.str();
}

std::string comparison_text(const dhuraf::ComparisonReport& report,
                            const std::string& format) {
  const std::string name_a = report.subjects.first.community;
  const std::string name_b = report.subjects.second.community;
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["subjects"] = {name_a, name_b};
    doc["categories"] = {std::string(dhuraf::to_string(report.categories.first)),
                         std::string(dhuraf::to_string(report.categories.second))};
    nlohmann::ordered_json sections = nlohmann::ordered_json::array();
    for (const auto& entry : report.sections) {
      nlohmann::ordered_json sj;
      sj["name"] = entry.name;
      sj["score_a"] = entry.score_a ? nlohmann::ordered_json(*entry.score_a)
                                    : nlohmann::ordered_json(nullptr);
      sj["score_b"] = entry.score_b ? nlohmann::ordered_json(*entry.score_b)
                                    : nlohmann::ordered_json(nullptr);
      sections.push_back(std::move(sj));
    }
    doc["sections"] = std::move(sections);
    nlohmann::ordered_json items = nlohmann::ordered_json::array();
    for (const auto& entry : report.items) {
      nlohmann::ordered_json ij;
      ij["section"] = entry.section;
      ij["item"] = entry.item;
      ij["level_a"] = entry.level_a ? nlohmann::ordered_json(*entry.level_a)
                                    : nlohmann::ordered_json(nullptr);
      ij["level_b"] = entry.level_b ? nlohmann::ordered_json(*entry.level_b)
                                    : nlohmann::ordered_json(nullptr);
      items.push_back(std::move(ij));
    }
    doc["items"] = std::move(items);
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  auto level_cell = [](const std::optional<int>& level) {
    return level ? std::to_string(*level) : std::string();
  };
  if (format == "markdown") {
    out << "| | " << name_a << " | " << name_b << " |\n";
    out << "| --- | --- | --- |\n";
    out << "| **Category** | " << dhuraf::to_string(report.categories.first) << " | "
        << dhuraf::to_string(report.categories.second) << " |\n";
    for (const auto& entry : report.sections) {
      out << "| **" << entry.name << "** | ";
      if (entry.score_a) out << *entry.score_a;
      out << " | ";
      if (entry.score_b) out << *entry.score_b;
      out << " |\n";
    }
    for (const auto& entry : report.items) {
      out << "| " << entry.section << "/" << entry.item << " | "
          << level_cell(entry.level_a) << " | " << level_cell(entry.level_b) << " |\n";
    }
    return out.str();
  }
  // plain
  out << "Category: " << dhuraf::to_string(report.categories.first) << " vs "
      << dhuraf::to_string(report.categories.second) << "\n";
  for (const auto& entry : report.sections) {
    out << entry.name << ": ";
    if (entry.score_a) out << *entry.score_a; else out << "unknown";
    out << " vs ";
    if (entry.score_b) out << *entry.score_b; else out << "unknown";
    out << "\n";
  }
  return out.str();
}

dhuraf::Framework load_framework_arg(const std::string& framework_arg) {
  if (dhuraf::normalize_name(framework_arg) ==
      dhuraf::normalize_name(dhuraf::kCanonicalFrameworkId)) {
    return dhuraf::canonical_framework();
  }
  // Anything else is a path to a framework document.
  dhuraf::Framework fw = dhuraf::parse_framework(read_file(framework_arg));
  if (auto violations = dhuraf::validate_framework(fw); !violations.empty()) {
    throw dhuraf::SemanticError("invalid framework: " + violations.front().path +
                                ": " + violations.front().message);
  }
  return fw;
}

void emit_document(const dhuraf::Assessment& a, const std::string& path,
                   bool in_place) {
  const std::string text = dhuraf::serialize_assessment(a);
  if (in_place) {
    write_file(path, text);
  } else {
    std::cout << text;
  }
}

std::pair<std::string, std::string> split_item_path(const std::string& spec) {
  const auto slash = spec.find('/');
  if (slash == std::string::npos) {
    throw dhuraf::Error("bad item path '" + spec + "' (want \"Section/Item\")");
  }
  return {spec.substr(0, slash), spec.substr(slash + 1)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DHuRAF readiness assessment tool"};
  app.require_subcommand(1);

  CliConfig config;

  // --- init ---
  auto* init = app.add_subcommand("init", "Emit a blank assessment document");
  std::string init_framework{dhuraf::kCanonicalFrameworkId};
  std::string init_community, init_language, init_region, init_assessor;
  std::string init_date = today_iso();
  init->add_option("--framework", init_framework,
                   "Framework id or path to a framework document");
  init->add_option("--community", init_community, "Community name")->required();
  init->add_option("--language", init_language, "Language name")->required();
  init->add_option("--region", init_region, "Region");
  init->add_option("--assessor", init_assessor, "Assessor");
  init->add_option("--date", init_date, "Assessment date (ISO-8601)");

  // --- validate ---
  auto* validate = app.add_subcommand("validate", "Validate an assessment document");
  std::string validate_path;
  validate->add_option("file", validate_path, "Assessment document")->required();

  // --- classify ---
  auto* classify = app.add_subcommand("classify", "Classify readiness");
  std::string classify_path;
  classify->add_option("file", classify_path, "Assessment document")->required();
  classify->add_flag("--explain", config.explain, "Print the classification trace");

  // --- report ---
  auto* report = app.add_subcommand("report", "Render the indicator table");
  std::string report_path;
  std::string report_format = "markdown";
  report->add_option("file", report_path, "Assessment document")->required();
  report->add_option("--format", report_format, "markdown|csv|json");

  // --- gaps ---
  auto* gaps = app.add_subcommand("gaps", "Ranked importance-vs-availability gaps");
  std::string gaps_path;
  std::string gaps_format = "markdown";
  gaps->add_option("file", gaps_path, "Assessment document")->required();
  gaps->add_option("--format", gaps_format, "markdown|csv|json|plain");

  // --- compare ---
  auto* compare_cmd = app.add_subcommand("compare", "Compare two assessments");
  std::string compare_a, compare_b;
  std::string compare_format = "plain";
  compare_cmd->add_option("a", compare_a, "First assessment")->required();
  compare_cmd->add_option("b", compare_b, "Second assessment")->required();
  compare_cmd->add_option("--format", compare_format, "markdown|json|plain");

  // --- what-if ---
  auto* whatif = app.add_subcommand("what-if", "Reclassify with availability overrides");
  std::string whatif_path;
  std::vector<std::string> whatif_sets;
  whatif->add_option("file", whatif_path, "Assessment document")->required();
  whatif->add_option("--set", whatif_sets, "Override \"Section/Item=kind:value\"")
      ->required();
  whatif->add_flag("--explain", config.explain, "Print the classification trace");

  // --- evidence ---
  auto* evidence = app.add_subcommand("evidence", "Evidence ledger operations");
  evidence->require_subcommand(1);

  auto* ev_import = evidence->add_subcommand("import", "Import a search-log CSV");
  std::string import_csv, import_into;
  bool import_in_place = false;
  ev_import->add_option("csv", import_csv, "Search log CSV")->required();
  ev_import->add_option("--into", import_into, "Assessment to extend");
  ev_import->add_flag("--in-place", import_in_place, "Rewrite the --into file");

  auto* ev_add = evidence->add_subcommand("add", "Add one evidence record");
  std::string add_into, add_id, add_kind, add_source, add_date = today_iso();
  std::string add_item, add_query, add_relevance = "na", add_subject, add_response,
              add_summary;
  std::int64_t add_count = 0;
  std::optional<std::int64_t> add_size;
  bool add_in_place = false;
  ev_add->add_option("--into", add_into, "Assessment to extend")->required();
  ev_add->add_option("--id", add_id, "Evidence id")->required();
  ev_add->add_option("--kind", add_kind, "search|interview|catalog|priori")->required();
  ev_add->add_option("--source", add_source, "Source")->required();
  ev_add->add_option("--date", add_date, "Observation date (ISO-8601)");
  ev_add->add_option("--item", add_item, "Item path \"Section/Item\"")->required();
  ev_add->add_option("--query", add_query, "Search query");
  ev_add->add_option("--count", add_count, "Search result count");
  ev_add->add_option("--relevance", add_relevance, "high|partly|none|na");
  ev_add->add_option("--subject", add_subject, "Interview subject");
  ev_add->add_option("--response", add_response, "Interview response");
  ev_add->add_option("--summary", add_summary, "Catalog/priori summary");
  ev_add->add_option("--size", add_size, "Approximate holdings size");
  ev_add->add_flag("--in-place", add_in_place, "Rewrite the --into file");

  auto* ev_suggest =
      evidence->add_subcommand("suggest", "Suggest a level from attached evidence");
  std::string suggest_path, suggest_item;
  ev_suggest->add_option("file", suggest_path, "Assessment document")->required();
  ev_suggest->add_option("--item", suggest_item, "Item path \"Section/Item\"")
      ->required();

  app.add_option("--ruleset", config.ruleset_path,
                 "JSON file with partial ruleset overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const dhuraf::RulesetConfig rules = load_config(config);

    if (init->parsed()) {
      const dhuraf::Framework fw = load_framework_arg(init_framework);
      dhuraf::Assessment a;
      if (fw.id == dhuraf::kCanonicalFrameworkId) {
        a.framework_id = fw.id;
      } else {
        a.inline_framework = fw;
        a.framework_id = fw.id;
      }
      a.subject = {init_community, init_language, init_region, init_assessor,
                   init_date};
      for (const auto& section : fw.sections) {
        dhuraf::SectionAssessment sa;
        sa.name = section.name;
        for (const auto& item : section.items) {
          sa.items.push_back({item.name, dhuraf::Importance::undecided_value(),
                              dhuraf::Availability::unknown(), "", {}});
        }
        a.sections.push_back(std::move(sa));
      }
      std::cout << dhuraf::serialize_assessment(a);
      return kExitOk;
    }

    if (validate->parsed()) {
      const dhuraf::Assessment a = load_assessment(validate_path);
      const dhuraf::Framework& fw = dhuraf::resolve_framework(a);
      if (!check_valid(a, fw, validate_path)) {
        return kExitValidation;
      }
      std::cout << "OK\n";
      return kExitOk;
    }

    if (classify->parsed()) {
      const dhuraf::Assessment a = load_assessment(classify_path);
      const dhuraf::Framework& fw = dhuraf::resolve_framework(a);
      if (!check_valid(a, fw, classify_path)) {
        return kExitValidation;
      }
      print_classification(dhuraf::classify(a, fw, rules.ruleset), config.explain);
      return kExitOk;
    }

    if (report->parsed()) {
      const dhuraf::Assessment a = load_assessment(report_path);
      const dhuraf::Framework& fw = dhuraf::resolve_framework(a);
      if (!check_valid(a, fw, report_path)) {
        return kExitValidation;
      }
      dhuraf::TableFormat format;
      if (report_format == "markdown") {
        format = dhuraf::TableFormat::kMarkdown;
      } else if (report_format == "csv") {
        format = dhuraf::TableFormat::kCsv;
      } else if (report_format == "json") {
        format = dhuraf::TableFormat::kJson;
      } else {
        std::cerr << "invalid format '" << report_format << "'\n";
        return kExitUsage;
      }
      std::cout << dhuraf::render_indicator_table(a, fw, format);
      return kExitOk;
    }

    if (gaps->parsed()) {
      const dhuraf::Assessment a = load_assessment(gaps_path);
      const dhuraf::Framework& fw = dhuraf::resolve_framework(a);
      if (!check_valid(a, fw, gaps_path)) {
        return kExitValidation;
      }
      if (gaps_format != "markdown" && gaps_format != "csv" &&
          gaps_format != "json" && gaps_format != "plain") {
        std::cerr << "invalid format '" << gaps_format << "'\n";
        return kExitUsage;
      }
      std::cout << gap_table(dhuraf::gap_report(a, fw, rules.ruleset), gaps_format);
      return kExitOk;
    }

    if (compare_cmd->parsed()) {
      const dhuraf::Assessment a = load_assessment(compare_a);
      const dhuraf::Assessment b = load_assessment(compare_b);
      const dhuraf::Framework& fw = dhuraf::resolve_framework(a);
      bool ok = check_valid(a, fw, compare_a);
      ok = check_valid(b, fw, compare_b) && ok;
      if (!ok) {
        return kExitValidation;
      }
      if (compare_format != "markdown" && compare_format != "json" &&
          compare_format != "plain") {
        std::cerr << "invalid format '" << compare_format << "'\n";
        return kExitUsage;
      }
      std::cout << comparison_text(dhuraf::compare(a, b, fw, rules.ruleset),
                                   compare_format);
      return kExitOk;
    }

    if (whatif->parsed()) {
      const dhuraf::Assessment a = load_assessment(whatif_path);
      const dhuraf::Framework& fw = dhuraf::resolve_framework(a);
      if (!check_valid(a, fw, whatif_path)) {
        return kExitValidation;
      }
      std::vector<dhuraf::AvailabilityOverride> overrides;
      for (const auto& spec : whatif_sets) {
        overrides.push_back(parse_override(spec));
      }
      print_classification(dhuraf::what_if(a, overrides, fw, rules.ruleset),
                           config.explain);
      return kExitOk;
    }

    if (ev_import->parsed()) {
      const std::vector<dhuraf::EvidenceRecord> records =
          dhuraf::import_search_log(read_file(import_csv));
      if (import_into.empty()) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& rec : records) {
          nlohmann::ordered_json rj;
          rj["id"] = rec.id;
          rj["source"] = rec.source;
          rj["query"] = rec.query;
          rj["result_count"] = rec.result_count;
          rj["relevance"] = std::string(dhuraf::to_string(rec.relevance));
          rj["date"] = rec.date;
          doc.push_back(std::move(rj));
        }
        std::cout << doc.dump(2) << "\n";
        return kExitOk;
      }
      dhuraf::Assessment a = load_assessment(import_into);
      // Renumber past existing imports so ids stay unique.
      size_t serial = 0;
      for (const auto& rec : a.evidence) {
        if (rec.id.rfind("ev-search-", 0) == 0) ++serial;
      }
      for (dhuraf::EvidenceRecord rec : records) {
        rec.id = "ev-search-" + std::to_string(++serial);
        if (rec.item_ref.has_value()) {
          a = dhuraf::attach_evidence(a, rec, *rec.item_ref);
        } else {
          a.evidence.push_back(std::move(rec));
        }
      }
      emit_document(a, import_into, import_in_place);
      return kExitOk;
    }

    if (ev_add->parsed()) {
      dhuraf::Assessment a = load_assessment(add_into);
      dhuraf::EvidenceRecord rec;
      rec.id = add_id;
      auto kind = dhuraf::evidence_kind_from_string(add_kind);
      if (!kind) {
        std::cerr << "bad evidence kind '" << add_kind << "'\n";
        return kExitUsage;
      }
      rec.kind = *kind;
      rec.source = add_source;
      rec.date = add_date;
      rec.query = add_query;
      rec.result_count = add_count;
      if (auto relevance = dhuraf::relevance_from_string(add_relevance)) {
        rec.relevance = *relevance;
      } else {
        std::cerr << "bad relevance '" << add_relevance << "'\n";
        return kExitUsage;
      }
      rec.subject = add_subject;
      rec.response = add_response;
      rec.summary = add_summary;
      rec.approx_size = add_size;
      const auto item_path = split_item_path(add_item);
      rec.item_ref = item_path;
      emit_document(dhuraf::attach_evidence(a, rec, item_path), add_into,
                    add_in_place);
      return kExitOk;
    }

    if (ev_suggest->parsed()) {
      const dhuraf::Assessment a = load_assessment(suggest_path);
      const auto item_path = split_item_path(suggest_item);
      const auto suggestion =
          dhuraf::suggest_availability(a, item_path, rules.visibility, rules.ruleset);
      if (!suggestion.has_value()) {
        std::cout << "no suggestion: no quantitative evidence attached\n";
      } else {
        std::cout << "level " << suggestion->level.level << ": "
                  << suggestion->rationale << "\n";
      }
      return kExitOk;
    }
  } catch (const dhuraf::InsufficientDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const dhuraf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
