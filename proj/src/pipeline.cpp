#include "archrecon/pipeline.hpp"

#include <future>

namespace fs = std::filesystem;

namespace archrecon {

Analysis analyze_model(SystemModel system, const AnalysisOptions& options) {
  Analysis a;
  ResolvedSystem resolved = resolve_system(std::move(system));
  a.system = canonicalized(std::move(resolved.model));
  a.matches = std::move(resolved.results);
  for (const auto& m : a.matches) {
    if (m.disposition == Disposition::Unresolved) {
      a.diagnostics.push_back({Diagnostic::Kind::UnmatchedCall, m.caller + "/" + m.origin,
                               std::string(to_string(m.http_method)) + " " + m.url_path});
    }
  }
  a.candidates = find_merge_candidates(a.system, options.thresholds, options.profile);
  a.resolution = build_resolution(a.system, a.candidates);
  a.context_map = build_context_map(a.system, a.resolution);
  a.report = compute_report(a.system, a.resolution);
  return a;
}

Analysis analyze(const fs::path& root, const AnalysisOptions& options) {
  DiscoveryResult discovery = discover(root);
  const fs::path base = fs::weakly_canonical(root);

  std::vector<std::future<ExtractedService>> jobs;
  for (const auto& m : discovery.manifests) {
    jobs.push_back(std::async(std::launch::async, [&options, m] {
      return extract_microservice(m.microservice_name, m.root_dir, options.profile, options.extraction);
    }));
  }

  SystemModel system;
  system.version_label = options.version_label.empty() ? base.filename().string() : options.version_label;
  Diagnostics diagnostics = std::move(discovery.diagnostics);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    ExtractedService extracted = jobs[i].get();
    extracted.microservice.source_root = discovery.manifests[i].root_dir.lexically_relative(base).generic_string();
    for (auto& d : extracted.diagnostics) {
      d.path = extracted.microservice.name + "/" + d.path;
      diagnostics.push_back(std::move(d));
    }
    system.microservices.push_back(std::move(extracted.microservice));
  }

  Analysis a = analyze_model(std::move(system), options);
  a.manifests = std::move(discovery.manifests);
  diagnostics.insert(diagnostics.end(), a.diagnostics.begin(), a.diagnostics.end());
  a.diagnostics = std::move(diagnostics);
  return a;
}

void write_artifacts(const fs::path& out, const Analysis& analysis, const EvolutionTimeline* timeline,
                     const ArtifactOptions& options) {
  write_text_file(out / "ir.json", export_ir(analysis.system, analysis.resolution));
  write_text_file(out / "graph.json", export_graph(analysis.system, options.graph));
  write_text_file(out / "context-map.mmd", export_context_map_mermaid(analysis.context_map));
  if (timeline != nullptr) write_text_file(out / "timeline.csv", export_timeline_csv(*timeline));
  if (options.per_service) {
    for (const auto& ms : analysis.system.microservices) {
      write_text_file(out / "services" / (ms.name + ".mmd"), export_service_mermaid(ms));
    }
  }
}

}  // namespace archrecon
