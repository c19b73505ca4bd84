// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// eight hold. Kept free of any test framework so the output stays readable.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dhuraf/document.hpp"
#include "dhuraf/errors.hpp"
#include "dhuraf/evidence.hpp"
#include "dhuraf/report.hpp"
#include "dhuraf/scoring.hpp"
#include "test_util.hpp"

using namespace dhuraf;
using namespace dhuraf::testutil;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

Assessment uniform(const Availability& availability) {
  Assessment a;
  a.framework_id = kCanonicalFrameworkId;
  a.subject = {"C", "L", "", "", "2020-01-01"};
  for (const auto& section : canonical_framework().sections) {
    SectionAssessment sa{section.name, {}};
    for (const auto& item : section.items) {
      sa.items.push_back(
          {item.name, Importance::undecided_value(), availability, "", {}});
    }
    a.sections.push_back(std::move(sa));
  }
  return a;
}

// --- criterion 1: fixture regression ---
Check fixture_regression() {
  Check c;
  const Framework& fw = canonical_framework();
  const Ruleset r = default_ruleset();
  const auto kurdish = classify(parse_assessment(read_fixture("kurdish.dhuraf")), fw, r);
  const auto gaelic = classify(parse_assessment(read_fixture("gaelic.dhuraf")), fw, r);
  c.expect(kurdish.category == ReadinessCategory::kVoid,
           "kurdish classified " + std::string(to_string(kurdish.category)));
  c.expect(gaelic.category == ReadinessCategory::kInfancy,
           "gaelic classified " + std::string(to_string(gaelic.category)));
  return c;
}

// --- criterion 2: visibility anchors ---
Check visibility_anchors() {
  Check c;
  c.expect(visibility_level({331000, 351100}).level == 2,
           "mean of 331000/351100 not level 2");
  c.expect(visibility_level({2220000}).level == 3, "2220000 not level 3");
  return c;
}

// --- criterion 3: interview reproduction (N = 10) ---
Check interview_reproduction() {
  Check c;
  std::vector<InterviewResponse> responses;
  for (int i = 0; i < 10; ++i) {
    responses.push_back({"r" + std::to_string(i), "Familiarity with DH", "Not at all"});
  }
  for (int i = 0; i < 7; ++i) {
    responses.push_back(
        {"r" + std::to_string(i), "Role of digital resources", "Significant"});
  }
  for (int i = 7; i < 10; ++i) {
    responses.push_back(
        {"r" + std::to_string(i), "Role of digital resources", "Not significant"});
  }
  for (int i = 0; i < 6; ++i) {
    responses.push_back({"r" + std::to_string(i), "Main obstacle", "Lack of resources"});
  }
  for (int i = 6; i < 10; ++i) {
    responses.push_back({"r" + std::to_string(i), "Main obstacle", "Lack of awareness"});
  }
  const InterviewDistribution dist = interview_distribution(responses);
  const double expected[] = {100.0, 70.0, 30.0, 60.0, 40.0};
  c.expect(dist.rows.size() == 5,
           "expected 5 rows, got " + std::to_string(dist.rows.size()));
  for (size_t i = 0; i < dist.rows.size() && i < 5; ++i) {
    c.expect(dist.rows[i].percent == expected[i],
             dist.rows[i].subject + "/" + dist.rows[i].response_class + " = " +
                 std::to_string(dist.rows[i].percent));
  }
  return c;
}

// --- criterion 4: search-log import ---
Check search_log_import() {
  Check c;
  const std::pair<const char*, size_t> files[] = {
      {"search_logs/kurdish_dh.csv", 6},         {"search_logs/generic_dh.csv", 5},
      {"search_logs/kurdistan_universities.csv", 10}, {"search_logs/gaelic_dh.csv", 6},
      {"search_logs/uk_universities.csv", 7},
  };
  std::map<std::pair<std::string, std::string>, std::int64_t> counts;
  size_t total = 0;
  for (const auto& [name, expected] : files) {
    const auto records = import_search_log(read_fixture(name));
    c.expect(records.size() == expected,
             std::string(name) + ": " + std::to_string(records.size()) + " rows");
    total += records.size();
    for (const auto& rec : records) counts[{rec.source, rec.query}] = rec.result_count;
  }
  c.expect(total == 34, "total rows " + std::to_string(total));
  c.expect(counts[{"Google", "digital humanities + Kurdish"}] == 12400,
           "Kurdish Google count off");
  c.expect(counts[{"Google Scholar", "digital humanities + Gaelic"}] == 2320,
           "Gaelic Google Scholar count off");
  c.expect(counts[{"Google", "digital humanities"}] == 2011500,
           "generic Google count off");
  return c;
}

// --- criterion 5: golden table renders ---
Check golden_tables() {
  Check c;
  const Framework& fw = canonical_framework();
  const Assessment kurdish = parse_assessment(read_fixture("kurdish.dhuraf"));
  const Assessment gaelic = parse_assessment(read_fixture("gaelic.dhuraf"));
  c.expect(render_indicator_table(kurdish, fw, TableFormat::kMarkdown) ==
               read_fixture("golden/kurdish_table.md"),
           "kurdish markdown differs from golden file");
  c.expect(render_indicator_table(gaelic, fw, TableFormat::kMarkdown) ==
               read_fixture("golden/gaelic_table.md"),
           "gaelic markdown differs from golden file");
  return c;
}

// --- criterion 6: property suite ---
Check property_suite() {
  Check c;
  const Framework& fw = canonical_framework();
  const Ruleset r = default_ruleset();

  auto category_of = [&](const Assessment& a) -> std::optional<ReadinessCategory> {
    try {
      return classify(a, fw, r).category;
    } catch (const InsufficientDataError&) {
      return std::nullopt;
    }
  };

  // (a) monotonicity under single-item raises, >= 10000 cases.
  {
    Rng rng(1);
    int checked = 0;
    while (checked < 10000 && c.ok) {
      Assessment a = random_assessment(rng, fw, 0.9);
      a.framework_id = kCanonicalFrameworkId;
      a.inline_framework.reset();
      const auto before = category_of(a);
      if (!before) continue;
      std::vector<std::pair<size_t, size_t>> raisable;
      for (size_t s = 0; s < a.sections.size(); ++s) {
        for (size_t i = 0; i < a.sections[s].items.size(); ++i) {
          const Availability& av = a.sections[s].items[i].availability;
          if (av.kind == Availability::Kind::kEnumerated && av.level < 3) {
            raisable.push_back({s, i});
          }
        }
      }
      if (raisable.empty()) continue;
      const auto [s, i] = raisable[static_cast<size_t>(
          rng.range(0, static_cast<int>(raisable.size()) - 1))];
      ItemAssessment& item = a.sections[s].items[i];
      item.availability = Availability::enumerated(item.availability.level + 1);
      const auto after = category_of(a);
      c.expect(after.has_value() && *after >= *before,
               "monotonicity violated at case " + std::to_string(checked));
      ++checked;
    }
    c.expect(checked == 10000 || !c.ok, "generator starved");
  }

  // (b) parse/serialize round-trip, >= 1000 documents.
  {
    Rng rng(2);
    for (int i = 0; i < 1000 && c.ok; ++i) {
      const Framework gen_fw = rng.chance(0.7) ? fw : random_framework(rng);
      const Assessment a = random_assessment(rng, gen_fw, 0.8);
      const std::string once = serialize_assessment(a);
      const std::string twice = serialize_assessment(parse_assessment(once));
      c.expect(once == twice, "round-trip mismatch at case " + std::to_string(i));
    }
  }

  // (c) unknown-neutrality: inserting Unknown items changes nothing, >= 1000.
  {
    Rng rng(3);
    int checked = 0;
    while (checked < 1000 && c.ok) {
      Assessment a = random_assessment(rng, fw, 0.6);
      a.framework_id = kCanonicalFrameworkId;
      a.inline_framework.reset();
      const auto before = category_of(a);
      if (!before) continue;
      const Classification base = classify(a, fw, r);

      // Insert every absent framework item with Unknown availability.
      Assessment padded = a;
      for (const auto& section : fw.sections) {
        SectionAssessment* target = nullptr;
        for (auto& sa : padded.sections) {
          if (normalize_name(sa.name) == normalize_name(section.name)) target = &sa;
        }
        if (target == nullptr) {
          padded.sections.push_back({section.name, {}});
          target = &padded.sections.back();
        }
        for (const auto& item : section.items) {
          if (find_item(padded, section.name, item.name) == nullptr) {
            target->items.push_back({item.name, Importance::undecided_value(),
                                     Availability::unknown(), "", {}});
          }
        }
      }
      const Classification full = classify(padded, fw, r);
      c.expect(full.category == base.category,
               "category changed at case " + std::to_string(checked));
      for (size_t i = 0; i < base.section_scores.size(); ++i) {
        c.expect(base.section_scores[i].score == full.section_scores[i].score,
                 "section score changed at case " + std::to_string(checked));
      }
      ++checked;
    }
  }

  // (d) gap coverage over both fixtures.
  for (const char* name : {"kurdish.dhuraf", "gaelic.dhuraf"}) {
    const Assessment a = parse_assessment(read_fixture(name));
    const auto gaps = gap_report(a, fw, r);
    c.expect(gaps.size() == 26, std::string(name) + ": gap report size " +
                                    std::to_string(gaps.size()));
    std::map<std::pair<std::string, std::string>, int> seen;
    for (const auto& g : gaps) ++seen[{g.section, g.item}];
    c.expect(seen.size() == 26, std::string(name) + ": duplicate gap entries");
  }
  return c;
}

// --- criterion 7: count boundary exactness ---
Check boundary_exactness() {
  Check c;
  const Ruleset r = default_ruleset();
  const std::pair<std::int64_t, int> table[] = {{5, 1}, {6, 2}, {50, 2}, {51, 3}};
  for (const auto& [n, level] : table) {
    const NormalizedLevel got = normalize_availability(Availability::count(n), r);
    c.expect(got.is_known() && got.level == level,
             "Count(" + std::to_string(n) + ") -> " + std::to_string(got.level));
  }
  return c;
}

// --- criterion 8: trivial extremes ---
Check trivial_extremes() {
  Check c;
  const Framework& fw = canonical_framework();
  const Ruleset r = default_ruleset();
  c.expect(classify(uniform(Availability::enumerated(3)), fw, r).category ==
               ReadinessCategory::kFlourished,
           "all-3 not Flourished");
  c.expect(classify(uniform(Availability::enumerated(0)), fw, r).category ==
               ReadinessCategory::kVoid,
           "all-0 not Void");
  bool threw = false;
  try {
    (void)classify(uniform(Availability::unknown()), fw, r);
  } catch (const InsufficientDataError&) {
    threw = true;
  }
  c.expect(threw, "all-Unknown did not raise insufficient-data");
  return c;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Check()>> criteria[] = {
      {"1 fixture regression (Kurdish=Void, Gaelic=Infancy)", fixture_regression},
      {"2 visibility anchors (levels 2 and 3)", visibility_anchors},
      {"3 interview reproduction (100/70/30/60/40%)", interview_reproduction},
      {"4 search-log import (all table rows, exact counts)", search_log_import},
      {"5 golden table renders (byte-for-byte)", golden_tables},
      {"6 property suite (monotone/round-trip/unknown-neutral/gap coverage)",
       property_suite},
      {"7 count boundary exactness (5->1, 6->2, 50->2, 51->3)", boundary_exactness},
      {"8 trivial extremes (Flourished/Void/insufficient-data)", trivial_extremes},
  };

  int failures = 0;
  for (const auto& [label, fn] : criteria) {
    Check result;
    try {
      result = fn();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("unexpected exception: ") + e.what();
    }
    if (result.ok) {
      std::printf("PASS  criterion %s\n", label);
    } else {
      std::printf("FAIL  criterion %s -- %s\n", label, result.detail.c_str());
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
