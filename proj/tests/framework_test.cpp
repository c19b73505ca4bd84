#include <doctest.h>

#include "dhuraf/framework.hpp"

using namespace dhuraf;

TEST_CASE("canonical framework shape") {
  const Framework& fw = canonical_framework();
  CHECK(fw.id == kCanonicalFrameworkId);
  REQUIRE(fw.sections.size() == 6);

  size_t total_items = 0;
  size_t core_sections = 0;
  for (const auto& section : fw.sections) {
    total_items += section.items.size();
    if (section.core) ++core_sections;
  }
  CHECK(total_items == 26);
  CHECK(core_sections == 4);

  CHECK(fw.sections[0].name == "DHuBase");
  CHECK(fw.sections[1].name == "Tools");
  CHECK(fw.sections[2].name == "Language");
  CHECK(fw.sections[3].name == "Digital Media");
  CHECK(fw.sections[4].name == "Education");
  CHECK(fw.sections[5].name == "Research");

  CHECK(fw.sections[0].core);
  CHECK(fw.sections[1].core);
  CHECK_FALSE(fw.sections[2].core);
  CHECK_FALSE(fw.sections[3].core);
  CHECK(fw.sections[4].core);
  CHECK(fw.sections[5].core);

  CHECK(fw.sections[0].items.size() == 3);
  CHECK(fw.sections[1].items.size() == 3);
  CHECK(fw.sections[2].items.size() == 3);
  CHECK(fw.sections[3].items.size() == 8);
  CHECK(fw.sections[4].items.size() == 5);

  const auto& research = fw.sections[5];
  REQUIRE(research.items.size() == 4);
  CHECK(research.items.back().name == "Cumulative Fund");
}

TEST_CASE("canonical framework is referentially constant") {
  CHECK(canonical_framework() == canonical_framework());
  CHECK(&canonical_framework() == &canonical_framework());
}

TEST_CASE("canonical framework validates cleanly") {
  CHECK(validate_framework(canonical_framework()).empty());
}

TEST_CASE("validate_framework reports broken invariants") {
  SUBCASE("duplicate section names, case-insensitive") {
    Framework fw{"x", {{"Tools", false, {{"A", "", MeasurementHint::kEither}}},
                       {"tools", false, {{"B", "", MeasurementHint::kEither}}}}};
    const auto violations = validate_framework(fw);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "duplicate-section-name");
  }
  SUBCASE("empty section") {
    Framework fw{"x", {{"Empty", false, {}}}};
    const auto violations = validate_framework(fw);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "empty-section");
  }
  SUBCASE("no sections") {
    Framework fw{"x", {}};
    const auto violations = validate_framework(fw);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "empty-framework");
  }
  SUBCASE("duplicate item names within a section") {
    Framework fw{"x", {{"S", false, {{"Item", "", MeasurementHint::kEither},
                                     {" item ", "", MeasurementHint::kEither}}}}};
    const auto violations = validate_framework(fw);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "duplicate-item-name");
  }
}

TEST_CASE("lookup_item matching") {
  const Framework& fw = canonical_framework();

  const ItemDef* computability = lookup_item(fw, "Language", "Computability");
  REQUIRE(computability != nullptr);
  CHECK(computability->name == "Computability");

  SUBCASE("case-insensitive, whitespace-normalized") {
    CHECK(lookup_item(fw, "language", " computability ") == computability);
    CHECK(lookup_item(fw, "LANGUAGE", "COMPUTABILITY") == computability);
  }
  SUBCASE("absent item") {
    CHECK(lookup_item(fw, "Language", "Grammar Checker") == nullptr);
    CHECK(lookup_item(fw, "Nonexistent", "Computability") == nullptr);
  }
  SUBCASE("singular project spellings resolve via the alias table") {
    const ItemDef* finished = lookup_item(fw, "Research", "Project-Finished");
    REQUIRE(finished != nullptr);
    CHECK(finished->name == "Projects-Finished");
    CHECK(lookup_item(fw, "Research", "Project-Ongoing") != nullptr);
    CHECK(lookup_item(fw, "Research", "Project-Canceled") != nullptr);
  }
}

TEST_CASE("normalize_name collapses case and whitespace") {
  CHECK(normalize_name("  Online   Catalog ") == "online catalog");
  CHECK(normalize_name("BLARK Status") == "blark status");
  CHECK(normalize_name("") == "");
  CHECK(normalize_name("   ") == "");
}
