#include "archrecon/model.hpp"

#include "archrecon/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace archrecon {

std::string_view to_string(HttpMethod method) {
  switch (method) {
    case HttpMethod::Get: return "GET";
    case HttpMethod::Post: return "POST";
    case HttpMethod::Put: return "PUT";
    case HttpMethod::Delete: return "DELETE";
    case HttpMethod::Patch: return "PATCH";
  }
  return "GET";
}

std::string_view to_string(Persistence persistence) {
  switch (persistence) {
    case Persistence::Relational: return "RELATIONAL";
    case Persistence::NonRelational: return "NON_RELATIONAL";
    case Persistence::Transient: return "TRANSIENT";
  }
  return "TRANSIENT";
}

std::optional<HttpMethod> parse_http_method(std::string_view text) {
  for (auto m : {HttpMethod::Get, HttpMethod::Post, HttpMethod::Put, HttpMethod::Delete,
                 HttpMethod::Patch}) {
    const auto name = to_string(m);
    if (name.size() == text.size() &&
        std::equal(name.begin(), name.end(), text.begin(), [](char a, char b) {
          return a == std::toupper(static_cast<unsigned char>(b));
        })) {
      return m;
    }
  }
  return std::nullopt;
}

std::optional<Persistence> parse_persistence(std::string_view text) {
  for (auto p : {Persistence::Relational, Persistence::NonRelational, Persistence::Transient}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string to_string(const EntityKey& key) { return key.owner + ":" + key.qualified_name; }

const Microservice* SystemModel::find(std::string_view name) const {
  for (const auto& ms : microservices) {
    if (ms.name == name) return &ms;
  }
  return nullptr;
}

const DataEntity* SystemModel::find_entity(const EntityKey& key) const {
  const Microservice* ms = find(key.owner);
  if (ms == nullptr) return nullptr;
  for (const auto* group : {&ms->persistent_entities, &ms->transient_entities}) {
    for (const auto& e : *group) {
      if (e.qualified_name == key.qualified_name) return &e;
    }
  }
  return nullptr;
}

namespace {

auto endpoint_key(const Endpoint& e) {
  return std::tie(e.url_path, e.http_method, e.return_type, e.parameters, e.request_type,
                  e.declaring_unit);
}

auto call_key(const CallSite& c) {
  return std::tie(c.origin, c.url_path, c.http_method, c.target_hint, c.return_type, c.parameters,
                  c.resolved_target);
}

void canonicalize(DataEntity& entity) {
  std::sort(entity.fields.begin(), entity.fields.end(),
            [](const Field& a, const Field& b) { return std::tie(a.name, a.type_name, a.is_collection) < std::tie(b.name, b.type_name, b.is_collection); });
  std::sort(entity.relationships.begin(), entity.relationships.end());
}

void canonicalize(std::vector<DataEntity>& entities) {
  for (auto& e : entities) canonicalize(e);
  std::sort(entities.begin(), entities.end(), [](const DataEntity& a, const DataEntity& b) {
    return a.key() < b.key();
  });
}

}  // namespace

void canonicalize(SystemModel& model) {
  for (auto& ms : model.microservices) {
    std::sort(ms.endpoints.begin(), ms.endpoints.end(),
              [](const Endpoint& a, const Endpoint& b) { return endpoint_key(a) < endpoint_key(b); });
    std::sort(ms.calls.begin(), ms.calls.end(),
              [](const CallSite& a, const CallSite& b) { return call_key(a) < call_key(b); });
    canonicalize(ms.persistent_entities);
    canonicalize(ms.transient_entities);
  }
  std::sort(model.microservices.begin(), model.microservices.end(),
            [](const Microservice& a, const Microservice& b) { return a.name < b.name; });
}

SystemModel canonicalized(SystemModel model) {
  canonicalize(model);
  return model;
}

bool equivalent(const SystemModel& a, const SystemModel& b) {
  return canonicalized(a) == canonicalized(b);
}

std::vector<Violation> validate_system(const SystemModel& model) {
  std::vector<Violation> out;
  auto report = [&out](std::string element, std::string invariant) {
    out.push_back({std::move(element), std::move(invariant)});
  };

  std::set<std::string> names;
  std::set<std::string> duplicate_names;
  for (const auto& ms : model.microservices) {
    if (!names.insert(ms.name).second && duplicate_names.insert(ms.name).second) {
      report(ms.name, "microservice names must be unique within the system");
    }
  }

  for (const auto& ms : model.microservices) {
    std::set<std::pair<HttpMethod, std::string>> seen_endpoints;
    for (const auto& ep : ms.endpoints) {
      const std::string where = ms.name + " " + std::string(to_string(ep.http_method)) + " " + ep.url_path;
      const std::string normalized = normalize_path(ep.url_path);
      if (!seen_endpoints.emplace(ep.http_method, normalized).second) {
        report(where, "endpoint (method, normalized path) must be unique within a microservice");
      }
      if (normalized.empty() || normalized.front() != '/') {
        report(where, "endpoint path must begin with '/' after normalization");
      }
      for (const auto& p : ep.parameters) {
        if (p.name.empty()) report(where, "parameter names must be non-empty");
      }
    }

    for (const auto& call : ms.calls) {
      const std::string where = ms.name + " call at " + call.origin;
      for (const auto& p : call.parameters) {
        if (p.name.empty()) report(where, "parameter names must be non-empty");
      }
      if (!call.resolved_target) continue;
      const auto& target = *call.resolved_target;
      if (target.microservice == ms.name) {
        report(where, "a call must not resolve to its own microservice");
      }
      if (model.find(target.microservice) == nullptr) {
        report(where, "resolved call target must name a microservice of the system");
      }
    }

    std::map<std::string, int> entity_seen;
    for (const auto* group : {&ms.persistent_entities, &ms.transient_entities}) {
      for (const auto& entity : *group) ++entity_seen[entity.qualified_name];
    }
    for (const auto& [qname, count] : entity_seen) {
      if (count > 1) {
        report(ms.name + ":" + qname,
               "an entity must appear exactly once across persistent and transient sets");
      }
    }

    auto check_entities = [&](const std::vector<DataEntity>& group, bool persistent) {
      for (const auto& entity : group) {
        const std::string where = to_string(entity.key());
        if (entity.owner != ms.name) report(where, "entity owner must be its microservice");
        if ((entity.persistence == Persistence::Transient) == persistent) {
          report(where, "entity persistence must agree with the set holding it");
        }
        std::set<std::string> field_names;
        for (const auto& f : entity.fields) {
          if (f.name.empty()) report(where, "field names must be non-empty");
          if (!field_names.insert(f.name).second) {
            report(where + "." + f.name, "field names must be unique within an entity");
          }
        }
        for (const auto& r : entity.relationships) {
          const std::string rel = where + " -[" + r.via_field + "]-> " + to_string(r.destination);
          if (r.source != entity.key()) report(rel, "relationship source must be its holding entity");
          if (!field_names.contains(r.via_field)) {
            report(rel, "relationship source must own a field named via_field");
          }
          if (model.find_entity(r.destination) == nullptr) {
            report(rel, "relationship destination must exist in the system");
          }
          if (r.destination == r.source) {
            report(rel, "relationship must connect two distinct entities");
          }
        }
      }
    };
    check_entities(ms.persistent_entities, true);
    check_entities(ms.transient_entities, false);
  }
  return out;
}

}  // namespace archrecon
