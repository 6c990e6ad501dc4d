#pragma once

#include "archrecon/errors.hpp"
#include "archrecon/model.hpp"
#include "archrecon/profile.hpp"
#include "archrecon/source_scanner.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace archrecon {

/// Placeholder for URL pieces that are only known at run time.
inline constexpr std::string_view kDynamicSegment = "{*}";

struct RawCall {
  HttpMethod http_method = HttpMethod::Get;
  std::string url_expression;  ///< literal text with "{*}" for dynamic pieces
  std::string return_type;
  std::string origin;          ///< file:line

  friend bool operator==(const RawCall&, const RawCall&) = default;
};

/// Endpoints declared by controller-marked classes. A second handler for a
/// method and normalized path already taken is dropped and reported as a
/// ConflictingMapping diagnostic.
std::vector<Endpoint> extract_endpoints(const std::vector<ClassSketch>& sketches,
                                        const LanguageProfile& profile, Diagnostics& diagnostics);
std::vector<Endpoint> extract_endpoints(const std::vector<ClassSketch>& sketches,
                                        const LanguageProfile& profile);

/// One RawCall per client invocation site on a variable of a client type.
std::vector<RawCall> extract_calls(const std::vector<ClassSketch>& sketches, const LanguageProfile& profile);

/// Host of an absolute URL expression, without port; empty when the host is
/// not a literal.
std::string url_host(std::string_view url_expression);

CallSite to_call_site(const RawCall& raw);

struct ClassifyOptions {
  bool strict_response_only = false;  ///< only handler return types mark a class transient
};

struct ClassifiedEntities {
  std::vector<DataEntity> persistent;
  std::vector<DataEntity> transient_;
};

/// Splits sketches into persistent entities (by persistence marker), transient
/// entities (data-class or accessor-bearing classes used in endpoint
/// signatures), and everything else (dropped). Relationships are left empty.
ClassifiedEntities classify_entities(const std::vector<ClassSketch>& sketches,
                                     const std::vector<Endpoint>& endpoints,
                                     const LanguageProfile& profile, const std::string& owner,
                                     ClassifyOptions options = {});

/// Relationships among the entities of one microservice: one per field whose
/// (element) type names another entity of the same set.
std::vector<Relationship> extract_relationships(const std::vector<DataEntity>& entities);

/// Runs every extraction step for one microservice. Calls are unresolved.
struct ExtractionOptions {
  ClassifyOptions classify;
};

struct ExtractedService {
  Microservice microservice;
  std::vector<RawCall> raw_calls;
  Diagnostics diagnostics;
};

ExtractedService extract_microservice(const std::string& name, const std::filesystem::path& root,
                                      const LanguageProfile& profile, ExtractionOptions options = {});

}  // namespace archrecon
