#include <fstream>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "dhuraf/document.hpp"
#include "dhuraf/report.hpp"

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(DHURAF_FIXTURE_DIR) + "/" + name, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void BM_ParseAssessment(benchmark::State& state) {
  const std::string text = read_fixture("kurdish.dhuraf");
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhuraf::parse_assessment(text));
  }
}
BENCHMARK(BM_ParseAssessment);

void BM_SerializeAssessment(benchmark::State& state) {
  const auto a = dhuraf::parse_assessment(read_fixture("kurdish.dhuraf"));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhuraf::serialize_assessment(a));
  }
}
BENCHMARK(BM_SerializeAssessment);

void BM_Classify(benchmark::State& state) {
  const auto a = dhuraf::parse_assessment(read_fixture("gaelic.dhuraf"));
  const auto& fw = dhuraf::canonical_framework();
  const auto rules = dhuraf::default_ruleset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dhuraf::classify(a, fw, rules));
  }
}
BENCHMARK(BM_Classify);

void BM_RenderMarkdown(benchmark::State& state) {
  const auto a = dhuraf::parse_assessment(read_fixture("gaelic.dhuraf"));
  const auto& fw = dhuraf::canonical_framework();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        dhuraf::render_indicator_table(a, fw, dhuraf::TableFormat::kMarkdown));
  }
}
BENCHMARK(BM_RenderMarkdown);

}  // namespace

BENCHMARK_MAIN();
