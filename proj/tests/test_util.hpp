#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dhuraf/assessment.hpp"

namespace dhuraf::testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(DHURAF_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  return read_file(fixture_path(name));
}

// --- randomized-input generators (hand-rolled, deterministic seeds) ---

class Rng {
 public:
  explicit Rng(unsigned seed) : engine_(seed) {}

  int range(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::int64_t range64(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p;
  }

 private:
  std::mt19937 engine_;
};

inline Availability random_availability(Rng& rng) {
  switch (rng.range(0, 4)) {
    case 0: return Availability::unknown();
    case 1: return Availability::not_applicable();
    case 2: return Availability::enumerated(rng.range(0, 3));
    case 3: return Availability::count(rng.range64(0, 200));
    default: return Availability::at_least(rng.range64(1, 200));
  }
}

inline Importance random_importance(Rng& rng) {
  const int degree = rng.range(0, 3);
  return degree == 0 ? Importance::undecided_value() : Importance::level(degree);
}

inline Framework random_framework(Rng& rng) {
  Framework fw;
  fw.id = "random-fw";
  const int sections = rng.range(1, 6);
  for (int s = 0; s < sections; ++s) {
    SectionDef section;
    section.name = "Section " + std::to_string(s);
    section.core = rng.chance(0.5);
    const int items = rng.range(1, 6);
    for (int i = 0; i < items; ++i) {
      section.items.push_back({"Item " + std::to_string(i), "", MeasurementHint::kEither});
    }
    fw.sections.push_back(std::move(section));
  }
  return fw;
}

// A valid assessment over fw covering a random subset of its items.
// `coverage` is the chance each framework item appears.
inline Assessment random_assessment(Rng& rng, const Framework& fw,
                                    double coverage = 0.8) {
  Assessment a;
  if (fw.id == std::string(kCanonicalFrameworkId)) {
    a.framework_id = fw.id;
  } else {
    a.inline_framework = fw;
    a.framework_id = fw.id;
  }
  a.subject = {"Community", "Language", "", "", "2020-01-01"};
  for (const auto& section : fw.sections) {
    SectionAssessment sa;
    sa.name = section.name;
    for (const auto& item : section.items) {
      if (!rng.chance(coverage)) {
        continue;
      }
      ItemAssessment ia;
      ia.name = item.name;
      ia.importance = random_importance(rng);
      ia.availability = random_availability(rng);
      if (rng.chance(0.2)) {
        ia.notes = "note " + std::to_string(rng.range(0, 999));
      }
      sa.items.push_back(std::move(ia));
    }
    if (!sa.items.empty() || rng.chance(0.3)) {
      a.sections.push_back(std::move(sa));
    }
  }
  return a;
}

}  // namespace dhuraf::testutil
