#pragma once

#include "archrecon/merger.hpp"
#include "archrecon/metrics.hpp"
#include "archrecon/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace archrecon {

inline constexpr std::string_view kSchemaVersion = "1";

/// IR document: sorted keys, two-space indent, LF endings.
std::string export_ir(const SystemModel& system, const MergeResolution& resolution);

/// Reads a document written by export_ir back into a model. Throws
/// MalformedDocument.
SystemModel import_ir(std::string_view document);

struct GraphOptions {
  std::optional<std::size_t> coupling_threshold;  ///< flags nodes with more distinct dependencies
};

/// Service graph for the viewer: nodes with dependency counts, links with
/// call multiplicities.
std::string export_graph(const SystemModel& system, GraphOptions options = {});

std::string export_context_map_mermaid(const ContextMap& map);

/// Pre-merge class diagram of one microservice.
std::string export_service_mermaid(const Microservice& microservice);

std::string export_timeline_csv(const EvolutionTimeline& timeline);

/// Writes text to a file, creating parent directories. Throws WriteFailure.
void write_text_file(const std::filesystem::path& file, std::string_view text);

}  // namespace archrecon
