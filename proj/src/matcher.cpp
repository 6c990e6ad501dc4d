#include "archrecon/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <tuple>

namespace archrecon {

std::string normalize_path(std::string_view raw) {
  std::string_view rest = raw;
  for (std::string_view scheme : {"http://", "https://"}) {
    if (rest.starts_with(scheme)) {
      rest.remove_prefix(scheme.size());
      const auto slash = rest.find('/');
      rest = slash == std::string_view::npos ? std::string_view() : rest.substr(slash);
      break;
    }
  }
  // an unknown host expression ahead of the first slash
  if (rest.starts_with("{*}/")) rest.remove_prefix(3);
  rest = rest.substr(0, rest.find_first_of("?#"));

  std::string out;
  for (const auto& segment : path_segments(rest)) {
    out += '/';
    if (segment.find('{') != std::string::npos) {
      out += kWildcard;
      continue;
    }
    for (char c : segment) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out.empty() ? "/" : out;
}

std::vector<std::string> path_segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (end > start) out.emplace_back(path.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

bool paths_match(std::string_view a, std::string_view b) {
  const auto sa = path_segments(a);
  const auto sb = path_segments(b);
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i] != sb[i] && sa[i] != kWildcard && sb[i] != kWildcard) return false;
  }
  return true;
}

std::size_t wildcard_count(std::string_view canonical) {
  const auto segments = path_segments(canonical);
  return static_cast<std::size_t>(std::count(segments.begin(), segments.end(), kWildcard));
}

std::string_view to_string(Disposition disposition) {
  switch (disposition) {
    case Disposition::Resolved: return "RESOLVED";
    case Disposition::Unresolved: return "UNRESOLVED";
    case Disposition::AmbiguousResolved: return "AMBIGUOUS_RESOLVED";
  }
  return "UNRESOLVED";
}

MatchResult match_call(const CallSite& call, std::string_view caller, const SystemModel& system) {
  MatchResult result;
  result.caller = std::string(caller);
  result.origin = call.origin;
  result.http_method = call.http_method;
  result.url_path = call.url_path;

  const Microservice* hinted = nullptr;
  if (call.target_hint && *call.target_hint != caller) hinted = system.find(*call.target_hint);

  struct Candidate {
    const Microservice* service;
    const Endpoint* endpoint;
    std::size_t wildcards;
    std::size_t parameter_gap;
  };
  std::vector<Candidate> candidates;
  const std::string call_path = normalize_path(call.url_path);
  for (const auto& ms : system.microservices) {
    if (ms.name == caller || (hinted != nullptr && &ms != hinted)) continue;
    for (const auto& ep : ms.endpoints) {
      if (ep.http_method != call.http_method) continue;
      const std::string ep_path = normalize_path(ep.url_path);
      if (!paths_match(ep_path, call_path)) continue;
      const std::size_t gap = ep.parameters.size() > call.parameters.size()
                                  ? ep.parameters.size() - call.parameters.size()
                                  : call.parameters.size() - ep.parameters.size();
      candidates.push_back({&ms, &ep, wildcard_count(ep_path), gap});
    }
  }
  result.candidates_considered = candidates.size();
  if (candidates.empty()) return result;

  auto rank = [](const Candidate& c) {
    return std::tuple(c.wildcards, c.parameter_gap, c.service->name, c.endpoint->url_path);
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& x, const Candidate& y) { return rank(x) < rank(y); });
  const Candidate& best = candidates.front();
  const bool tied = candidates.size() > 1 && candidates[1].wildcards == best.wildcards;
  result.matched = EndpointRef{best.service->name, best.endpoint->http_method, best.endpoint->url_path};
  result.disposition = tied ? Disposition::AmbiguousResolved : Disposition::Resolved;
  return result;
}

ResolvedSystem resolve_system(SystemModel system) {
  ResolvedSystem out;
  for (auto& ms : system.microservices) {
    for (auto& call : ms.calls) call.resolved_target.reset();
  }
  for (auto& ms : system.microservices) {
    for (auto& call : ms.calls) {
      MatchResult r = match_call(call, ms.name, system);
      call.resolved_target = r.matched;
      out.results.push_back(std::move(r));
    }
  }
  std::stable_sort(out.results.begin(), out.results.end(), [](const MatchResult& a, const MatchResult& b) {
    return std::tie(a.caller, a.origin) < std::tie(b.caller, b.origin);
  });
  out.model = std::move(system);
  return out;
}

std::string format_unmatched(const std::vector<MatchResult>& results) {
  std::string out;
  for (const auto& r : results) {
    if (r.disposition != Disposition::Unresolved) continue;
    out += r.caller + "\t" + std::string(to_string(r.http_method)) + "\t" + r.url_path + "\n";
  }
  return out;
}

}  // namespace archrecon
