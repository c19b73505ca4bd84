#include "dhuraf/framework.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace dhuraf {

namespace {

ItemDef count_item(std::string name, std::string description) {
  return {std::move(name), std::move(description), MeasurementHint::kCount};
}

ItemDef enum_item(std::string name, std::string description) {
  return {std::move(name), std::move(description), MeasurementHint::kEnumerated};
}

ItemDef either_item(std::string name, std::string description) {
  return {std::move(name), std::move(description), MeasurementHint::kEither};
}

Framework build_canonical() {
  Framework fw;
  fw.id = std::string(kCanonicalFrameworkId);

  fw.sections.push_back(SectionDef{
      "DHuBase",
      true,
      {
          either_item("Digitized Books", "The number or the amount of digitized books."),
          either_item("Digitized Photo Archives",
                      "The number or the amount of digitized photo archives."),
          either_item("Digitized Sound Archives",
                      "The number or the amount of digitized sound archives."),
      }});

  fw.sections.push_back(SectionDef{
      "Tools",
      true,
      {
          enum_item("Digital Asset Management System",
                    "Language- or culture-dependent systems for managing digital assets."),
          enum_item("Online Catalog",
                    "Online catalogs specialized for the target community, language, or culture."),
          enum_item("Video and Film Analyzer",
                    "Tools for analyzing videos and films specialized for the community, "
                    "e.g. subtitled films in the target language."),
      }});

  fw.sections.push_back(SectionDef{
      "Language",
      false,
      {
          enum_item("Visibility on the Internet",
                    "How visible the language is, quantifiable via page counts for "
                    "sample keywords."),
          enum_item("Computability",
                    "Whether the language is computable and how rich its language "
                    "technology is."),
          enum_item("BLARK Status",
                    "Whether a BLARK (or similar resource kit) exists for the language."),
      }});

  fw.sections.push_back(SectionDef{
      "Digital Media",
      false,
      {
          count_item("News Agency", "News agencies as sources of mass digital content."),
          count_item("News Agency Website",
                     "News agency websites as sources of mass digital content."),
          count_item("Satellite TV", "Satellite TV channels as sources of digital graphics."),
          count_item("Satellite TV Website",
                     "Satellite TV websites as sources of digital content."),
          count_item("Local TV",
                     "Local TV as a window to cultural material, convertible to digital."),
          either_item("Social Media", "The existence of social media and their magnitude."),
          either_item("Blog", "The number or the amount of blogs."),
          either_item("Wiki", "The number or the amount of wikis."),
      }});

  fw.sections.push_back(SectionDef{
      "Education",
      true,
      {
          either_item("Academic Awareness",
                      "Awareness of DH among academics, inferred quantitatively or via "
                      "interviews and questionnaires."),
          count_item("Active Institution", "The number of active institutions in DH."),
          count_item("Academic Program-UG",
                     "The number of DH-related programs at undergraduate level."),
          count_item("Academic Program-Master",
                     "The number of DH-related programs at master level."),
          count_item("Academic Program-PhD",
                     "The number of DH-related programs at doctorate level."),
      }});

  fw.sections.push_back(SectionDef{
      "Research",
      true,
      {
          count_item("Projects-Finished", "The number of accomplished projects."),
          count_item("Projects-Ongoing", "The number of ongoing projects."),
          count_item("Projects-Canceled", "The number of canceled projects."),
          either_item("Cumulative Fund",
                      "The cumulative amount spent in DH research to date."),
      }});

  return fw;
}

// Spelling variants that appear in published indicator tables, keyed and
// valued in normalized form.
const std::unordered_map<std::string, std::string>& alias_table() {
  static const std::unordered_map<std::string, std::string> kAliases = {
      {"project-finished", "projects-finished"},
      {"project-ongoing", "projects-ongoing"},
      {"project-canceled", "projects-canceled"},
      {"digital medeia", "digital media"},
      {"social media (twitter, facebook, ...)", "social media"},
  };
  return kAliases;
}

}  // namespace

const Framework& canonical_framework() {
  static const Framework kCanonical = build_canonical();
  return kCanonical;
}

std::string normalize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  bool pending_space = false;
  for (unsigned char c : name) {
    if (std::isspace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::string canonical_item_key(std::string_view name) {
  std::string key = normalize_name(name);
  const auto& aliases = alias_table();
  if (auto it = aliases.find(key); it != aliases.end()) {
    return it->second;
  }
  return key;
}

std::vector<Violation> validate_framework(const Framework& fw) {
  std::vector<Violation> out;
  if (fw.sections.empty()) {
    out.push_back({"sections", "empty-framework", "framework has no sections"});
  }
  std::unordered_set<std::string> section_keys;
  for (const auto& section : fw.sections) {
    const std::string path = "sections/" + section.name;
    if (!section_keys.insert(normalize_name(section.name)).second) {
      out.push_back({path, "duplicate-section-name",
                     "section name '" + section.name + "' is not unique"});
    }
    if (section.items.empty()) {
      out.push_back({path, "empty-section", "section has no items"});
    }
    std::unordered_set<std::string> item_keys;
    for (const auto& item : section.items) {
      if (!item_keys.insert(normalize_name(item.name)).second) {
        out.push_back({path + "/items/" + item.name, "duplicate-item-name",
                       "item name '" + item.name + "' is not unique within '" +
                           section.name + "'"});
      }
    }
  }
  return out;
}

const SectionDef* lookup_section(const Framework& fw, std::string_view section_name) {
  const std::string key = canonical_item_key(section_name);
  for (const auto& section : fw.sections) {
    if (normalize_name(section.name) == key) {
      return &section;
    }
  }
  return nullptr;
}

const ItemDef* lookup_item(const Framework& fw, std::string_view section_name,
                           std::string_view item_name) {
  const SectionDef* section = lookup_section(fw, section_name);
  if (section == nullptr) {
    return nullptr;
  }
  const std::string key = canonical_item_key(item_name);
  for (const auto& item : section->items) {
    if (normalize_name(item.name) == key) {
      return &item;
    }
  }
  return nullptr;
}

}  // namespace dhuraf
