#include "archrecon/discovery.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;

namespace archrecon {

std::string_view to_string(Evidence evidence) {
  switch (evidence) {
    case Evidence::ComposeService: return "COMPOSE_SERVICE";
    case Evidence::BuildManifest: return "BUILD_MANIFEST";
    case Evidence::Both: return "BOTH";
  }
  return "BUILD_MANIFEST";
}

std::string_view to_string(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::UnreadableManifest: return "unreadable-manifest";
    case Diagnostic::Kind::UnparseableSource: return "unparseable-source";
    case Diagnostic::Kind::ConflictingMapping: return "conflicting-mapping";
    case Diagnostic::Kind::UnmatchedCall: return "unmatched-call";
  }
  return "unknown";
}

namespace {

std::optional<fs::path> build_context_of(const YAML::Node& service) {
  if (!service.IsMap()) return std::nullopt;
  const YAML::Node build = service["build"];
  if (!build) return std::nullopt;
  if (build.IsScalar()) return fs::path(build.as<std::string>());
  if (build.IsMap()) {
    const YAML::Node context = build["context"];
    if (context && context.IsScalar()) return fs::path(context.as<std::string>());
    // build: {dockerfile: ...} without a context builds from the compose directory
    return fs::path(".");
  }
  return std::nullopt;
}

bool looks_like_service(const YAML::Node& node) {
  return node.IsMap() && (node["build"] || node["image"]);
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_hidden_or_vendored(const fs::path& dir) {
  const std::string name = dir.filename().string();
  return name.empty() || name.front() == '.' || name == "node_modules" || name == "target" ||
         name == "build";
}

bool is_compose_file(const fs::path& file) {
  const std::string name = file.filename().string();
  if (!name.starts_with("docker-compose")) return false;
  return file.extension() == ".yml" || file.extension() == ".yaml";
}

std::vector<fs::path> find_compose_files(const fs::path& root) {
  std::vector<fs::path> found;
  std::error_code ec;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    const auto& entry = *it;
    if (entry.is_directory()) {
      if (it.depth() >= 2 || is_hidden_or_vendored(entry.path())) it.disable_recursion_pending();
      continue;
    }
    if (entry.is_regular_file() && is_compose_file(entry.path())) found.push_back(entry.path());
  }
  std::sort(found.begin(), found.end());
  return found;
}

bool file_contains_any(const fs::path& file, std::initializer_list<std::string_view> needles) {
  const std::string text = read_file(file);
  return std::any_of(needles.begin(), needles.end(),
                     [&](std::string_view n) { return text.find(n) != std::string::npos; });
}

bool any_source_contains(const fs::path& dir, std::initializer_list<std::string_view> extensions,
                         std::initializer_list<std::string_view> needles) {
  std::error_code ec;
  fs::recursive_directory_iterator it(dir, fs::directory_options::skip_permission_denied, ec);
  for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_directory() && is_hidden_or_vendored(it->path())) {
      it.disable_recursion_pending();
      continue;
    }
    if (!it->is_regular_file()) continue;
    const std::string ext = it->path().extension().string();
    if (std::find(extensions.begin(), extensions.end(), ext) == extensions.end()) continue;
    if (file_contains_any(it->path(), needles)) return true;
  }
  return false;
}

// A build manifest alone is not enough: libraries and shared modules carry
// one too. The directory must also declare something runnable.
bool has_application_entry_point(const fs::path& dir) {
  if (fs::exists(dir / "pom.xml") || fs::exists(dir / "build.gradle") ||
      fs::exists(dir / "build.gradle.kts")) {
    return any_source_contains(dir, {".java", ".kt"},
                               {"@SpringBootApplication", "static void main(", "fun main("});
  }
  if (fs::exists(dir / "requirements.txt") || fs::exists(dir / "setup.py") ||
      fs::exists(dir / "pyproject.toml")) {
    if (fs::exists(dir / "app.py") || fs::exists(dir / "main.py") ||
        fs::exists(dir / "__main__.py")) {
      return true;
    }
    return any_source_contains(dir, {".py"}, {"__main__"});
  }
  if (fs::exists(dir / "package.json")) {
    return file_contains_any(dir / "package.json", {"\"start\"", "\"main\""});
  }
  if (fs::exists(dir / "go.mod")) {
    return any_source_contains(dir, {".go"}, {"package main"});
  }
  return false;
}

fs::path normalized_dir(const fs::path& p) {
  std::error_code ec;
  fs::path out = fs::weakly_canonical(p, ec);
  if (ec) out = p.lexically_normal();
  return out;
}

bool strictly_inside(const fs::path& dir, const fs::path& root) {
  const fs::path rel = dir.lexically_relative(root);
  if (rel.empty() || rel == ".") return false;
  return *rel.begin() != "..";
}

}  // namespace

std::vector<ComposeService> parse_compose(const fs::path& file) {
  YAML::Node doc;
  try {
    doc = YAML::LoadFile(file.string());
  } catch (const YAML::Exception& e) {
    throw MalformedDocument(file, e.what());
  }
  if (!doc || doc.IsNull()) return {};
  if (!doc.IsMap()) throw MalformedDocument(file, "top level is not a mapping");

  YAML::Node services = doc["services"];
  bool legacy_layout = false;
  if (!services) {
    // version 1 layout: services sit at the top level
    services = doc;
    legacy_layout = true;
  } else if (services.IsNull()) {
    return {};
  } else if (!services.IsMap()) {
    throw MalformedDocument(file, "'services' is not a mapping");
  }

  std::vector<ComposeService> out;
  for (const auto& entry : services) {
    if (legacy_layout && !looks_like_service(entry.second)) continue;
    ComposeService svc;
    try {
      svc.name = entry.first.as<std::string>();
      svc.build_context = build_context_of(entry.second);
    } catch (const YAML::Exception& e) {
      throw MalformedDocument(file, e.what());
    }
    out.push_back(std::move(svc));
  }
  return out;
}

DiscoveryResult discover(const fs::path& root_in) {
  std::error_code ec;
  if (!fs::is_directory(root_in, ec)) throw RootNotFound(root_in);
  const fs::path root = normalized_dir(root_in);

  DiscoveryResult result;
  std::map<std::string, ProjectManifest> by_name;
  std::map<fs::path, std::string> name_by_dir;

  for (const auto& compose : find_compose_files(root)) {
    std::vector<ComposeService> services;
    try {
      services = parse_compose(compose);
    } catch (const MalformedDocument& e) {
      result.diagnostics.push_back(
          {Diagnostic::Kind::UnreadableManifest, compose.string(), e.what()});
      continue;
    }
    for (const auto& svc : services) {
      if (!svc.build_context || by_name.contains(svc.name)) continue;
      const fs::path dir = normalized_dir(compose.parent_path() / *svc.build_context);
      if (!strictly_inside(dir, root) || !fs::is_directory(dir, ec)) continue;
      by_name.emplace(svc.name, ProjectManifest{svc.name, dir, Evidence::ComposeService});
      name_by_dir.emplace(dir, svc.name);
    }
  }

  std::vector<fs::path> subdirs;
  for (fs::directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
       !ec && it != fs::directory_iterator(); it.increment(ec)) {
    if (it->is_directory() && !is_hidden_or_vendored(it->path())) subdirs.push_back(it->path());
  }
  std::sort(subdirs.begin(), subdirs.end());
  for (const auto& sub : subdirs) {
    const fs::path dir = normalized_dir(sub);
    bool runnable = false;
    try {
      runnable = has_application_entry_point(dir);
    } catch (const fs::filesystem_error& e) {
      result.diagnostics.push_back({Diagnostic::Kind::UnreadableManifest, dir.string(), e.what()});
    }
    if (!runnable) continue;
    if (auto hit = name_by_dir.find(dir); hit != name_by_dir.end()) {
      by_name.at(hit->second).evidence = Evidence::Both;
      continue;
    }
    const std::string name = dir.filename().string();
    if (by_name.contains(name)) continue;
    by_name.emplace(name, ProjectManifest{name, dir, Evidence::BuildManifest});
  }

  for (auto& [name, manifest] : by_name) result.manifests.push_back(std::move(manifest));
  return result;
}

std::string format_manifests(const std::vector<ProjectManifest>& manifests) {
  std::string out;
  for (const auto& m : manifests) {
    out += m.microservice_name;
    out += '\t';
    out += m.root_dir.string();
    out += '\t';
    out += to_string(m.evidence);
    out += '\n';
  }
  return out;
}

}  // namespace archrecon
