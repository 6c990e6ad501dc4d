#pragma once

#include "archrecon/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace archrecon {

/// Wildcard segment of a canonical path template.
inline constexpr std::string_view kWildcard = "*";

/// Canonical path template: scheme and host removed, query dropped, duplicate
/// and trailing slashes collapsed, placeholders turned into "*", literal
/// segments lowercased. "http://svc/Stations/{id}/" gives "/stations/*".
std::string normalize_path(std::string_view raw);

std::vector<std::string> path_segments(std::string_view canonical);

/// Segment-wise match where "*" on either side matches exactly one segment.
bool paths_match(std::string_view canonical_a, std::string_view canonical_b);

std::size_t wildcard_count(std::string_view canonical);

enum class Disposition { Resolved, Unresolved, AmbiguousResolved };

std::string_view to_string(Disposition disposition);

struct MatchResult {
  std::string caller;
  std::string origin;
  HttpMethod http_method = HttpMethod::Get;
  std::string url_path;
  std::optional<EndpointRef> matched;
  std::size_t candidates_considered = 0;
  Disposition disposition = Disposition::Unresolved;
};

/// Resolves one call made by `caller` against the endpoints of every other
/// microservice (only the hinted one when the hint names a known service).
MatchResult match_call(const CallSite& call, std::string_view caller, const SystemModel& system);

struct ResolvedSystem {
  SystemModel model;
  std::vector<MatchResult> results;  ///< ordered by (caller, origin)
};

ResolvedSystem resolve_system(SystemModel system);

/// `<caller>\t<method>\t<path>` per unresolved call.
std::string format_unmatched(const std::vector<MatchResult>& results);

}  // namespace archrecon
