#pragma once

#include "archrecon/errors.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace archrecon {

enum class Evidence { ComposeService, BuildManifest, Both };

std::string_view to_string(Evidence evidence);

struct ProjectManifest {
  std::string microservice_name;
  std::filesystem::path root_dir;
  Evidence evidence = Evidence::BuildManifest;

  friend bool operator==(const ProjectManifest&, const ProjectManifest&) = default;
};

struct ComposeService {
  std::string name;
  std::optional<std::filesystem::path> build_context;  ///< absent for image-only services
};

/// Services of a compose document in declaration order. Relative build
/// contexts are returned as written. Throws MalformedDocument.
std::vector<ComposeService> parse_compose(const std::filesystem::path& file);

struct DiscoveryResult {
  std::vector<ProjectManifest> manifests;  ///< sorted by name
  Diagnostics diagnostics;
};

/// Finds standalone microservice projects below `root`: compose services
/// whose build context is a subdirectory, plus immediate subdirectories with
/// a build manifest and an application entry point. Throws RootNotFound.
DiscoveryResult discover(const std::filesystem::path& root);

/// `<name>\t<root_dir>\t<evidence>` per manifest.
std::string format_manifests(const std::vector<ProjectManifest>& manifests);

}  // namespace archrecon
