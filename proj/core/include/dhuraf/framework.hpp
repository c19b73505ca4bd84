#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dhuraf {

/// What kind of availability value an item is expected to carry.
enum class MeasurementHint {
  kCount,       // an exact or lower-bound number
  kEnumerated,  // the 0..3 scale only
  kEither,
};

struct ItemDef {
  std::string name;
  std::string description;
  MeasurementHint measurement_hint = MeasurementHint::kEither;

  bool operator==(const ItemDef&) const = default;
};

struct SectionDef {
  std::string name;
  // Whether the section directly evidences DH activity. Core sections drive
  // the Void rule in the classifier.
  bool core = false;
  std::vector<ItemDef> items;

  bool operator==(const SectionDef&) const = default;
};

struct Framework {
  std::string id;
  std::vector<SectionDef> sections;

  bool operator==(const Framework&) const = default;
};

/// One broken rule, reported as data rather than an exception.
struct Violation {
  std::string path;     // e.g. "sections/Tools/items/Online Catalog"
  std::string rule;     // stable rule id, e.g. "duplicate-section-name"
  std::string message;  // human-readable detail
};

inline constexpr std::string_view kCanonicalFrameworkId = "dhuraf-canonical-v1";

/// The fixed canonical framework: 6 sections, 26 items, core flag on
/// DHuBase/Tools/Education/Research. Referentially constant.
const Framework& canonical_framework();

/// Empty iff all Framework/SectionDef/ItemDef invariants hold.
std::vector<Violation> validate_framework(const Framework& fw);

/// Case-insensitive, whitespace-collapsing name key. "  Online  Catalog " and
/// "online catalog" map to the same key.
std::string normalize_name(std::string_view name);

/// normalize_name plus the alias table for known spelling variants
/// ("Project-Finished" -> "Projects-Finished").
std::string canonical_item_key(std::string_view name);

/// Name matching is case-insensitive and whitespace-normalized; item lookup
/// additionally resolves aliases. Returns nullptr when not found.
const SectionDef* lookup_section(const Framework& fw, std::string_view section_name);
const ItemDef* lookup_item(const Framework& fw, std::string_view section_name,
                           std::string_view item_name);

}  // namespace dhuraf
