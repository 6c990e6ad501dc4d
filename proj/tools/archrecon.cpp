#include "archrecon/pipeline.hpp"

#include <CLI11.hpp>

#include <climits>
#include <iostream>
#include <set>

namespace fs = std::filesystem;
using namespace archrecon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string out = "archrecon-out";
  std::string profile = "spring-java";
  std::string profile_file;
  double name_sim = MergeThresholds{}.name;
  double field_sim = MergeThresholds{}.field;
  int coupling_threshold = -1;
  bool discover_only = false;
  bool report_unmatched = false;
  bool per_service = false;
  bool strict_response_only = false;
};

void add_common_flags(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--out", f.out, "Output directory for artifacts");
  auto* profile = cmd.add_option("--profile", f.profile, "Built-in language profile");
  auto* profile_file = cmd.add_option("--profile-file", f.profile_file, "Profile definition file (TOML)");
  profile->excludes(profile_file);
  cmd.add_option("--name-sim", f.name_sim, "Name similarity threshold for entity merging")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--field-sim", f.field_sim, "Field compatibility threshold for entity merging")->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--coupling-threshold", f.coupling_threshold,
                 "Flag graph nodes with more than N distinct dependencies")
      ->check(CLI::Range(0, INT_MAX));
  cmd.add_flag("--discover-only", f.discover_only, "Print discovered microservices and stop");
  cmd.add_flag("--report-unmatched", f.report_unmatched, "Print calls that matched no endpoint");
  cmd.add_flag("--per-service", f.per_service, "Also write a class diagram per microservice");
  cmd.add_flag("--strict-response-only", f.strict_response_only,
               "Only handler return types mark a class as transient entity");
}

// Returns false after printing the reason when the profile flags are unusable.
bool resolve_options(const CommonFlags& f, AnalysisOptions& options, ArtifactOptions& artifacts) {
  if (!f.profile_file.empty()) {
    try {
      options.profile = load_profile_file(f.profile_file);
    } catch (const InvalidProfile& e) {
      std::cerr << "error: " << e.what() << "\n";
      return false;
    }
  } else if (auto builtin = builtin_profile(f.profile)) {
    options.profile = *builtin;
  } else {
    std::cerr << "error: unknown profile '" << f.profile << "'\n";
    return false;
  }
  options.thresholds = {f.name_sim, f.field_sim};
  options.extraction.classify.strict_response_only = f.strict_response_only;
  if (f.coupling_threshold >= 0) artifacts.graph.coupling_threshold = static_cast<std::size_t>(f.coupling_threshold);
  artifacts.per_service = f.per_service;
  return true;
}

void print_diagnostics(const Diagnostics& diagnostics) {
  for (const auto& d : diagnostics) {
    std::cerr << "warning: " << to_string(d.kind) << " " << d.path << ": " << d.message << "\n";
  }
}

int run_analyze(const std::string& path, const CommonFlags& flags) {
  AnalysisOptions options;
  ArtifactOptions artifacts;
  if (!resolve_options(flags, options, artifacts)) return kExitUsage;
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    std::cerr << "error: not a directory: " << path << "\n";
    return kExitIo;
  }
  try {
    if (flags.discover_only) {
      DiscoveryResult found = discover(path);
      print_diagnostics(found.diagnostics);
      std::cout << format_manifests(found.manifests);
      return kExitOk;
    }
    Analysis analysis = analyze(path, options);
    print_diagnostics(analysis.diagnostics);
    const EvolutionTimeline timeline = build_timeline({analysis.report});
    write_artifacts(flags.out, analysis, &timeline, artifacts);
    std::cout << format_report_table({analysis.report});
    if (flags.report_unmatched) std::cout << format_unmatched(analysis.matches);
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

int run_evolve(const std::vector<std::string>& specs, const CommonFlags& flags) {
  AnalysisOptions options;
  ArtifactOptions artifacts;
  if (!resolve_options(flags, options, artifacts)) return kExitUsage;

  std::vector<std::pair<std::string, std::string>> versions;
  std::set<std::string> labels;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      std::cerr << "error: version spec must look like label=path: " << spec << "\n";
      return kExitUsage;
    }
    std::string label = spec.substr(0, eq);
    if (!labels.insert(label).second) {
      std::cerr << "error: " << DuplicateVersionLabel(label).what() << "\n";
      return kExitUsage;
    }
    versions.emplace_back(std::move(label), spec.substr(eq + 1));
  }

  try {
    std::vector<MetricsReport> reports;
    for (const auto& [label, path] : versions) {
      std::error_code ec;
      if (!fs::is_directory(path, ec)) {
        std::cerr << "error: not a directory: " << path << "\n";
        return kExitIo;
      }
      if (flags.discover_only) {
        std::cout << "# " << label << "\n" << format_manifests(discover(path).manifests);
        continue;
      }
      options.version_label = label;
      Analysis analysis = analyze(path, options);
      print_diagnostics(analysis.diagnostics);
      write_artifacts(fs::path(flags.out) / label, analysis, nullptr, artifacts);
      if (flags.report_unmatched) std::cout << "# " << label << "\n" << format_unmatched(analysis.matches);
      reports.push_back(analysis.report);
    }
    if (flags.discover_only) return kExitOk;
    const EvolutionTimeline timeline = build_timeline(reports);
    write_text_file(fs::path(flags.out) / "timeline.csv", export_timeline_csv(timeline));
    std::cout << format_report_table(timeline.reports);
    if (!timeline.deltas.empty()) std::cout << "\n" << format_delta_table(timeline);
    return kExitOk;
  } catch (const DuplicateVersionLabel& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reconstructs service and data views of a microservice system and reports evolution metrics"};
  app.require_subcommand(1);

  CommonFlags analyze_flags;
  std::string analyze_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze one checked-out version");
  analyze_cmd->add_option("path", analyze_path, "Repository root")->required();
  add_common_flags(*analyze_cmd, analyze_flags);

  CommonFlags evolve_flags;
  std::vector<std::string> specs;
  auto* evolve_cmd = app.add_subcommand("evolve", "Analyze several versions in order and report deltas");
  evolve_cmd->add_option("versions", specs, "Versions as label=path, oldest first")->required();
  add_common_flags(*evolve_cmd, evolve_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (analyze_cmd->parsed()) return run_analyze(analyze_path, analyze_flags);
  return run_evolve(specs, evolve_flags);
}
