#pragma once

#include "archrecon/model.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace archrecon {

/// Annotation that declares an endpoint. Without a fixed method the HTTP
/// method is read from the annotation's `method` attribute.
struct EndpointMarker {
  std::string annotation;
  std::optional<HttpMethod> method;
};

/// Client invocation that issues an HTTP request. Without a fixed method the
/// method is read from the argument at `method_arg`.
struct CallMarker {
  std::string invocation;
  std::optional<HttpMethod> method;
  std::size_t url_arg = 0;
  std::optional<std::size_t> method_arg;
};

struct PersistenceMarker {
  std::string annotation;
  Persistence flavor = Persistence::Relational;
};

/// Framework conventions the extractor relies on.
struct LanguageProfile {
  std::string name;
  std::vector<std::string> source_extensions;
  std::vector<std::string> controller_markers;
  std::vector<EndpointMarker> endpoint_markers;
  std::vector<CallMarker> call_markers;
  std::vector<std::string> client_types;
  std::vector<PersistenceMarker> persistence_markers;
  std::vector<std::string> data_class_markers;
  std::vector<std::string> path_variable_markers;
  std::vector<std::string> query_parameter_markers;
  std::vector<std::string> body_markers;
  std::vector<std::string> collection_types;
  std::map<std::string, std::string> type_synonyms;
  bool accessor_bearing_transients = true;

  const EndpointMarker* endpoint_marker(std::string_view annotation) const;
  const CallMarker* call_marker(std::string_view invocation) const;
  const PersistenceMarker* persistence_marker(std::string_view annotation) const;
  bool is_collection_type(std::string_view type) const;
  std::string canonical_type(std::string_view type) const;
};

/// The built-in Spring Boot / Java profile.
LanguageProfile spring_java_profile();

/// Looks up a built-in profile by name.
std::optional<LanguageProfile> builtin_profile(std::string_view name);

/// Reads a profile from a TOML-shaped file. Throws InvalidProfile.
LanguageProfile load_profile_file(const std::filesystem::path& file);
LanguageProfile parse_profile(std::string_view text, const std::string& origin = "<profile>");

/// Throws InvalidProfile when a marker list is empty or repeats a name.
void validate_profile(const LanguageProfile& profile);

}  // namespace archrecon
