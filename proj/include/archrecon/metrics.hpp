#pragma once

#include "archrecon/merger.hpp"
#include "archrecon/model.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace archrecon {

struct SupplementalCounts {
  std::size_t relational = 0;
  std::size_t non_relational = 0;
  std::size_t unmatched_calls = 0;
  std::size_t context_map_size = 0;

  friend bool operator==(const SupplementalCounts&, const SupplementalCounts&) = default;
};

struct MetricsReport {
  std::string version_label;
  std::size_t s1_microservices = 0;
  std::size_t s2_connections = 0;
  std::size_t d1_persistent = 0;
  std::size_t d2_transient = 0;
  std::size_t d3_relationships = 0;
  std::size_t d4_merge_entities = 0;
  std::size_t d5_merge_relationships = 0;
  SupplementalCounts supplemental;

  /// (S1, S2, D1, D2, D3, D4, D5)
  std::vector<std::size_t> values() const;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

std::size_t metric_s1(const SystemModel& system);
std::size_t metric_s2(const SystemModel& system);
std::size_t metric_d1(const SystemModel& system);
std::size_t metric_d2(const SystemModel& system);

/// MR: every relationship together with its reverse, keyed on the
/// (source, destination) entity pair.
std::set<std::pair<EntityKey, EntityKey>> mirrored_relationships(const SystemModel& system);

/// |MR| / 2
std::size_t metric_d3(const SystemModel& system);
std::size_t metric_d4(const SystemModel& system, const MergeResolution& resolution);
/// D3 minus the merged relationships counted the same undirected way.
std::size_t metric_d5(const SystemModel& system, const MergeResolution& resolution);

MetricsReport compute_report(const SystemModel& system, const MergeResolution& resolution);

struct MetricsDelta {
  std::string from;
  std::string to;
  std::vector<long long> values;  ///< signed differences, metric order
};

struct EvolutionTimeline {
  std::vector<MetricsReport> reports;
  std::vector<MetricsDelta> deltas;  ///< between consecutive reports
};

/// Throws DuplicateVersionLabel; requires at least one report.
EvolutionTimeline build_timeline(std::vector<MetricsReport> reports);

/// Aligned text table, one column per version.
std::string format_report_table(const std::vector<MetricsReport>& reports);
std::string format_delta_table(const EvolutionTimeline& timeline);

}  // namespace archrecon
