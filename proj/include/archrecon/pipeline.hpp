#pragma once

#include "archrecon/discovery.hpp"
#include "archrecon/exporter.hpp"
#include "archrecon/extractor.hpp"
#include "archrecon/matcher.hpp"
#include "archrecon/merger.hpp"
#include "archrecon/metrics.hpp"
#include "archrecon/profile.hpp"

#include <filesystem>
#include <string>

namespace archrecon {

struct AnalysisOptions {
  LanguageProfile profile = spring_java_profile();
  MergeThresholds thresholds;
  ExtractionOptions extraction;
  std::string version_label;  ///< defaults to the root directory name
};

struct Analysis {
  std::vector<ProjectManifest> manifests;
  SystemModel system;  ///< calls resolved
  std::vector<MatchResult> matches;
  std::vector<CandidatePair> candidates;
  MergeResolution resolution;
  ContextMap context_map;
  MetricsReport report;
  Diagnostics diagnostics;
};

/// Discovery, extraction, matching, merging and metrics for one checkout.
Analysis analyze(const std::filesystem::path& root, const AnalysisOptions& options);

/// Builds everything downstream of extraction for an in-memory model.
Analysis analyze_model(SystemModel system, const AnalysisOptions& options);

struct ArtifactOptions {
  GraphOptions graph;
  bool per_service = false;
};

/// Writes ir.json, graph.json, context-map.mmd and (when given) timeline.csv
/// into `out`. Throws WriteFailure.
void write_artifacts(const std::filesystem::path& out, const Analysis& analysis,
                     const EvolutionTimeline* timeline, const ArtifactOptions& options);

}  // namespace archrecon
