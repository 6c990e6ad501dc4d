// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// non-zero when any criterion fails.

#include "archrecon/exporter.hpp"
#include "archrecon/matcher.hpp"
#include "archrecon/metrics.hpp"
#include "archrecon/pipeline.hpp"
#include "demo_model.hpp"
#include "oracles.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

using namespace archrecon;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = ARCHRECON_FIXTURES;
const std::string kBinary = ARCHRECON_BINARY;

enum class Outcome { Pass, Fail, Skip };

struct Verdict {
  Outcome outcome;
  std::string detail;
};

Verdict pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Verdict fail(std::string d) { return {Outcome::Fail, std::move(d)}; }

std::string tuple_text(const std::vector<std::size_t>& v) {
  return fmt::format("({})", fmt::join(v, ", "));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

Verdict example_oracle() {
  const std::vector<std::size_t> expected = {4, 3, 12, 5, 14, 4, 1};
  const std::set<std::pair<std::string, std::string>> expected_pairs = {
      {"T-1.1", "T-2.1"}, {"P-1.3", "P-2.1"}, {"P-2.3", "T-3.2"}, {"P-2.4", "P-4.1"}};
  const auto& L = testsupport::demo_labels();

  const auto start = std::chrono::steady_clock::now();
  const Analysis from_ir = analyze_model(testsupport::demo_system(), {});
  const Analysis from_source = analyze(kFixtures / "demo", {});
  const double elapsed = seconds_since(start);

  for (const auto* a : {&from_ir, &from_source}) {
    const char* which = a == &from_ir ? "model" : "sources";
    if (a->report.values() != expected) {
      return fail(fmt::format("{} gave {}", which, tuple_text(a->report.values())));
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& p : a->candidates) {
      auto x = testsupport::demo_label_of(p.first);
      auto y = testsupport::demo_label_of(p.second);
      pairs.emplace(std::min(x, y), std::max(x, y));
    }
    if (pairs != expected_pairs) return fail(fmt::format("{}: unexpected merge pairs", which));

    // exactly one relationship collapses: T-1.1 -> P-1.3 with T-2.1 -> P-2.1
    const auto img_a = a->resolution.map_relationship({L.at("T-1.1"), L.at("P-1.3"), "product"});
    const auto img_b = a->resolution.map_relationship({L.at("T-2.1"), L.at("P-2.1"), "product"});
    if (a->resolution.total_relationships() - a->resolution.merged_relationships().size() != 1 || !(img_a == img_b)) {
      return fail(fmt::format("{}: merged relationship differs", which));
    }
  }
  if (elapsed >= 1.0) return fail(fmt::format("took {:.3f}s", elapsed));
  return pass(fmt::format("{} from model and sources, 4 merge pairs, 1 merged relationship, {:.3f}s",
                          tuple_text(expected), elapsed));
}

// A system with `persistent` + `transient` entities of which exactly `merges`
// duplicate an earlier concept in another service.
SystemModel injected_system(std::size_t persistent, std::size_t transient, std::size_t merges) {
  const std::size_t total = persistent + transient;
  const std::size_t base = total - merges;
  SystemModel s;
  s.version_label = fmt::format("{}-{}", total, merges);
  const std::size_t services = 1 + (merges + base - 1) / base;
  for (std::size_t i = 0; i < services; ++i) {
    Microservice ms;
    ms.name = fmt::format("svc-{}", i);
    s.microservices.push_back(ms);
  }
  for (std::size_t n = 0; n < total; ++n) {
    const std::size_t concept_id = n < base ? n : (n - base) % base;
    const std::size_t service = n < base ? 0 : 1 + (n - base) / base;
    DataEntity e;
    e.owner = s.microservices[service].name;
    e.simple_name = fmt::format("Concept{}", concept_id);
    e.qualified_name = fmt::format("p{}.{}", n, e.simple_name);
    e.fields = {{"UUID", "id", false}, {"String", fmt::format("attr{}", concept_id), false}};
    if (n < persistent) {
      e.persistence = Persistence::Relational;
      s.microservices[service].persistent_entities.push_back(e);
    } else {
      e.persistence = Persistence::Transient;
      s.microservices[service].transient_entities.push_back(e);
    }
  }
  canonicalize(s);
  return s;
}

Verdict merge_identities() {
  std::mt19937 rng(1009);
  for (int round = 0; round < 200; ++round) {
    const auto s = testsupport::random_system(rng, 30);
    const auto pairs = find_merge_candidates(s, {});
    const auto r = build_resolution(s, pairs);
    const auto report = compute_report(s, r);
    const auto comp = testsupport::components(s, pairs);
    const std::size_t de = testsupport::component_count(comp);
    const std::size_t rde = testsupport::merged_undirected_relationship_count(s, comp);
    if (report.d1_persistent + report.d2_transient - report.d4_merge_entities != de ||
        r.merged_entities().size() != de) {
      return fail(fmt::format("round {}: entity identity broken", round));
    }
    if (report.d3_relationships - report.d5_merge_relationships != rde) {
      return fail(fmt::format("round {}: relationship identity broken", round));
    }
  }
  struct Instance {
    std::size_t d1, d2, d4, de;
  };
  for (const Instance& in : {Instance{31, 0, 11, 20}, Instance{27, 182, 139, 70}, Instance{27, 81, 32, 76}}) {
    const auto s = injected_system(in.d1, in.d2, in.d4);
    const auto r = build_resolution(s, find_merge_candidates(s, {}));
    const auto report = compute_report(s, r);
    if (report.d1_persistent != in.d1 || report.d2_transient != in.d2 || report.d4_merge_entities != in.d4 ||
        report.d1_persistent + report.d2_transient - report.d4_merge_entities != in.de ||
        report.supplemental.context_map_size != in.de) {
      return fail(fmt::format("{}-{} gave d4={} |DE|={}", in.d1 + in.d2, in.d4, report.d4_merge_entities,
                              report.supplemental.context_map_size));
    }
  }
  return pass("200 random systems; 31-11=20, 209-139=70, 108-32=76");
}

// Counts disagreements between match_call and the brute-force enumeration.
std::size_t matcher_mismatches(const SystemModel& system, std::size_t& cases) {
  std::size_t bad = 0;
  for (const auto& ms : system.microservices) {
    for (auto c : ms.calls) {
      c.resolved_target.reset();
      ++cases;
      const auto result = match_call(c, ms.name, system);
      const auto expected = testsupport::oracle_candidates(c, ms.name, system);
      if (result.matched.has_value() != !expected.empty() || result.candidates_considered != expected.size()) {
        ++bad;
        continue;
      }
      if (result.matched && std::find(expected.begin(), expected.end(), *result.matched) == expected.end()) ++bad;
    }
  }
  return bad;
}

Verdict matcher_equivalence() {
  std::size_t fixture_cases = 0;
  std::size_t mismatches = 0;
  std::size_t resolved = 0;
  for (const char* dir : {"demo", "corpus", "evolution/v1", "evolution/v2", "evolution/v3"}) {
    const auto a = analyze(kFixtures / dir, {});
    mismatches += matcher_mismatches(a.system, fixture_cases);
    // the stored resolution must be the oracle's verdict too
    for (const auto& ms : a.system.microservices) {
      for (const auto& c : ms.calls) {
        auto bare = c;
        bare.resolved_target.reset();
        if (c.resolved() == testsupport::oracle_candidates(bare, ms.name, a.system).empty()) ++mismatches;
        resolved += c.resolved();
      }
    }
  }
  std::mt19937 rng(424242);
  std::size_t random_cases = 0;
  while (random_cases < 500) mismatches += matcher_mismatches(testsupport::random_call_system(rng), random_cases);
  if (mismatches != 0) return fail(fmt::format("{} mismatches", mismatches));
  return pass(fmt::format("{} fixture calls ({} resolved), {} random calls, 0 mismatches", fixture_cases, resolved,
                          random_cases));
}

Verdict d3_evenness() {
  std::mt19937 rng(5150);
  std::size_t with_mutual = 0;
  for (int round = 0; round < 300; ++round) {
    const auto s = testsupport::random_system(rng);
    const auto mr = mirrored_relationships(s);
    if (mr.size() % 2 != 0) return fail(fmt::format("round {}: |MR| = {}", round, mr.size()));
    bool mutual = false;
    for (const auto& ms : s.microservices) {
      for (const auto* group : {&ms.persistent_entities, &ms.transient_entities}) {
        for (const auto& e : *group) {
          for (const auto& r : e.relationships) {
            const auto* dst = s.find_entity(r.destination);
            for (const auto& back : dst->relationships) mutual = mutual || back.destination == r.source;
          }
        }
      }
    }
    with_mutual += mutual;
    if (metric_d3(s) != testsupport::undirected_relationship_count(s)) {
      return fail(fmt::format("round {}: d3 {} vs {}", round, metric_d3(s), testsupport::undirected_relationship_count(s)));
    }
  }
  if (with_mutual == 0) return fail("generator produced no mutual pairs");
  return pass(fmt::format("300 random sets, {} with mutual pairs", with_mutual));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict determinism() {
  const fs::path base = fs::temp_directory_path() / "archrecon-acceptance-determinism";
  fs::remove_all(base);
  for (const char* run : {"a", "b"}) {
    const std::string cmd = fmt::format("\"{}\" analyze \"{}\" --out \"{}\" > /dev/null 2>&1", kBinary,
                                        (kFixtures / "corpus").string(), (base / run).string());
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return fail("analyze run failed");
  }
  for (const char* f : {"ir.json", "graph.json", "context-map.mmd", "timeline.csv"}) {
    const auto a = slurp(base / "a" / f);
    if (a.empty() || a != slurp(base / "b" / f)) return fail(fmt::format("{} differs", f));
  }
  fs::remove_all(base);
  return pass("ir.json, graph.json, context-map.mmd, timeline.csv byte-identical");
}

Verdict trainticket() {
  const char* root = std::getenv("TRAINTICKET_ROOT");
  struct Row {
    const char* tag;
    std::vector<std::size_t> table;  // S1, S2, D1..D5
  };
  const std::vector<Row> rows = {{"0.0.1", {46, 135, 31, 0, 0, 11, 0}},
                                 {"v0.2.0", {40, 91, 27, 182, 41, 139, 17}},
                                 {"v1.0.0", {43, 90, 27, 81, 43, 32, 19}}};
  if (root == nullptr) return {Outcome::Skip, "set TRAINTICKET_ROOT to a directory holding checkouts 0.0.1, v0.2.0, v1.0.0"};
  for (const auto& row : rows) {
    if (!fs::is_directory(fs::path(root) / row.tag)) {
      return {Outcome::Skip, fmt::format("checkout {} missing under {}", row.tag, root)};
    }
  }
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    const auto start = std::chrono::steady_clock::now();
    AnalysisOptions options;
    options.version_label = row.tag;
    const auto a = analyze(fs::path(root) / row.tag, options);
    const double elapsed = seconds_since(start);
    const auto got = a.report.values();
    const long d1_gap = static_cast<long>(got[2]) - static_cast<long>(row.table[2]);
    const bool row_ok = got[0] == row.table[0] && std::labs(d1_gap) <= 2 && elapsed < 60.0;
    ok = ok && row_ok;
    detail += fmt::format("{}{} {} vs table {} in {:.1f}s", detail.empty() ? "" : "; ", row.tag, tuple_text(got),
                          tuple_text(row.table), elapsed);
  }
  return {ok ? Outcome::Pass : Outcome::Fail, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"example-system oracle", example_oracle},
      {"merge identities", merge_identities},
      {"matcher oracle equivalence", matcher_equivalence},
      {"relationship evenness and reversal", d3_evenness},
      {"determinism", determinism},
      {"trainticket reproduction", trainticket},
  };
  bool failed = false;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const char* tag = v.outcome == Outcome::Pass ? "PASS" : v.outcome == Outcome::Fail ? "FAIL" : "SKIP";
    fmt::print("{} {}: {}\n", tag, name, v.detail);
    failed = failed || v.outcome == Outcome::Fail;
  }
  return failed ? 1 : 0;
}
