#pragma once

namespace dhuraf {

/// An availability judgment normalized onto the 0..3 scale.
/// 0 not available, 1 available, 2 considerable, 3 vast.
struct NormalizedLevel {
  enum class Kind { kKnown, kUnknown, kNotApplicable };

  Kind kind = Kind::kUnknown;
  int level = 0;           // meaningful only when kind == kKnown
  bool lower_bound = false;  // level derived from an open-ended count ("10+")

  static NormalizedLevel known(int level, bool lower_bound = false) {
    return {Kind::kKnown, level, lower_bound};
  }
  static NormalizedLevel unknown() { return {Kind::kUnknown, 0, false}; }
  static NormalizedLevel not_applicable() {
    return {Kind::kNotApplicable, 0, false};
  }

  bool is_known() const { return kind == Kind::kKnown; }

  bool operator==(const NormalizedLevel&) const = default;
};

}  // namespace dhuraf
