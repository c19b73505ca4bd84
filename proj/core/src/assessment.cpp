#include "dhuraf/assessment.hpp"

#include "dhuraf/errors.hpp"

namespace dhuraf {

const Framework& resolve_framework(const Assessment& a) {
  if (a.inline_framework.has_value()) {
    return *a.inline_framework;
  }
  if (normalize_name(a.framework_id) == normalize_name(kCanonicalFrameworkId)) {
    return canonical_framework();
  }
  throw UnknownPathError("unknown framework id: '" + a.framework_id + "'");
}

const ItemAssessment* find_item(const Assessment& a, std::string_view section,
                                std::string_view item) {
  const std::string section_key = canonical_item_key(section);
  const std::string item_key = canonical_item_key(item);
  for (const auto& s : a.sections) {
    if (canonical_item_key(s.name) != section_key) {
      continue;
    }
    for (const auto& it : s.items) {
      if (canonical_item_key(it.name) == item_key) {
        return &it;
      }
    }
  }
  return nullptr;
}

}  // namespace dhuraf
