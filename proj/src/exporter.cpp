#include "archrecon/exporter.hpp"

#include "archrecon/errors.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <set>

using json = nlohmann::json;

namespace archrecon {

namespace {

std::string dump(const json& doc) {
  return doc.dump(2, ' ', false, json::error_handler_t::replace) + "\n";
}

json parameters_json(const std::vector<Parameter>& params) {
  json out = json::array();
  for (const auto& p : params) out.push_back({{"name", p.name}, {"type", p.type_name}});
  return out;
}

json fields_json(const std::vector<Field>& fields) {
  json out = json::array();
  for (const auto& f : fields) out.push_back({{"collection", f.is_collection}, {"name", f.name}, {"type", f.type_name}});
  return out;
}

json entity_json(const DataEntity& e) {
  json rels = json::array();
  for (const auto& r : e.relationships) {
    rels.push_back({{"destination", r.destination.qualified_name},
                    {"destination_owner", r.destination.owner},
                    {"via_field", r.via_field}});
  }
  return {{"name", e.simple_name},
          {"qualified_name", e.qualified_name},
          {"persistence", to_string(e.persistence)},
          {"fields", fields_json(e.fields)},
          {"relationships", std::move(rels)}};
}

json optional_text(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

std::string export_ir(const SystemModel& input, const MergeResolution& resolution) {
  const SystemModel system = canonicalized(input);
  json services = json::array();
  for (const auto& ms : system.microservices) {
    json endpoints = json::array();
    for (const auto& ep : ms.endpoints) {
      endpoints.push_back({{"method", to_string(ep.http_method)},
                           {"path", ep.url_path},
                           {"return_type", ep.return_type},
                           {"parameters", parameters_json(ep.parameters)},
                           {"request_type", ep.request_type},
                           {"declaring_unit", ep.declaring_unit}});
    }
    json calls = json::array();
    for (const auto& c : ms.calls) {
      calls.push_back({{"method", to_string(c.http_method)},
                       {"path", c.url_path},
                       {"target", c.resolved_target ? json(c.resolved_target->microservice) : json(nullptr)},
                       {"endpoint_path", c.resolved_target ? json(c.resolved_target->url_path) : json(nullptr)},
                       {"origin", c.origin},
                       {"target_hint", optional_text(c.target_hint)},
                       {"return_type", c.return_type},
                       {"parameters", parameters_json(c.parameters)}});
    }
    json persistent = json::array();
    for (const auto& e : ms.persistent_entities) persistent.push_back(entity_json(e));
    json transient_entities = json::array();
    for (const auto& e : ms.transient_entities) transient_entities.push_back(entity_json(e));
    services.push_back({{"name", ms.name},
                        {"source_root", ms.source_root},
                        {"endpoints", std::move(endpoints)},
                        {"calls", std::move(calls)},
                        {"persistent_entities", std::move(persistent)},
                        {"transient_entities", std::move(transient_entities)}});
  }

  const ContextMap map = build_context_map(system, resolution);
  json map_entities = json::array();
  for (const auto& ce : map.entities) {
    json absorbed = json::array();
    for (const auto& k : ce.absorbed) absorbed.push_back(to_string(k));
    map_entities.push_back({{"name", ce.entity.simple_name},
                            {"qualified_name", ce.entity.qualified_name},
                            {"owner", ce.entity.owner},
                            {"persistence", to_string(ce.entity.persistence)},
                            {"fields", fields_json(ce.entity.fields)},
                            {"absorbed", std::move(absorbed)}});
  }
  json map_relationships = json::array();
  for (const auto& r : map.relationships) {
    map_relationships.push_back({{"source", to_string(r.source)},
                                 {"destination", to_string(r.destination)},
                                 {"via_field", r.via_field}});
  }

  json doc = {{"schema_version", kSchemaVersion},
              {"version_label", system.version_label},
              {"microservices", std::move(services)},
              {"context_map", {{"entities", std::move(map_entities)}, {"relationships", std::move(map_relationships)}}},
              {"merge_audit", merge_audit(resolution)}};
  return dump(doc);
}

namespace {

std::vector<Parameter> read_parameters(const json& arr) {
  std::vector<Parameter> out;
  for (const auto& p : arr) out.push_back({p.at("type").get<std::string>(), p.at("name").get<std::string>()});
  return out;
}

HttpMethod read_method(const json& j) {
  auto m = parse_http_method(j.get<std::string>());
  if (!m) throw std::invalid_argument("unknown HTTP method " + j.get<std::string>());
  return *m;
}

DataEntity read_entity(const json& j, const std::string& owner) {
  DataEntity e;
  e.simple_name = j.at("name").get<std::string>();
  e.qualified_name = j.at("qualified_name").get<std::string>();
  e.owner = owner;
  auto p = parse_persistence(j.at("persistence").get<std::string>());
  if (!p) throw std::invalid_argument("unknown persistence " + j.at("persistence").get<std::string>());
  e.persistence = *p;
  for (const auto& f : j.at("fields")) {
    e.fields.push_back({f.at("type").get<std::string>(), f.at("name").get<std::string>(), f.at("collection").get<bool>()});
  }
  for (const auto& r : j.at("relationships")) {
    e.relationships.push_back({e.key(),
                               {r.at("destination_owner").get<std::string>(), r.at("destination").get<std::string>()},
                               r.at("via_field").get<std::string>()});
  }
  return e;
}

}  // namespace

SystemModel import_ir(std::string_view document) {
  try {
    const json doc = json::parse(document);
    if (doc.at("schema_version").get<std::string>() != kSchemaVersion) {
      throw MalformedDocument("<ir>", "unsupported schema_version " + doc.at("schema_version").dump());
    }
    SystemModel model;
    model.version_label = doc.at("version_label").get<std::string>();
    for (const auto& m : doc.at("microservices")) {
      Microservice ms;
      ms.name = m.at("name").get<std::string>();
      ms.source_root = m.value("source_root", "");
      for (const auto& e : m.at("endpoints")) {
        Endpoint ep;
        ep.http_method = read_method(e.at("method"));
        ep.url_path = e.at("path").get<std::string>();
        ep.return_type = e.at("return_type").get<std::string>();
        ep.parameters = read_parameters(e.at("parameters"));
        ep.request_type = e.value("request_type", "");
        ep.declaring_unit = e.value("declaring_unit", "");
        ms.endpoints.push_back(std::move(ep));
      }
      for (const auto& c : m.at("calls")) {
        CallSite call;
        call.http_method = read_method(c.at("method"));
        call.url_path = c.at("path").get<std::string>();
        call.origin = c.at("origin").get<std::string>();
        if (c.contains("target_hint") && !c.at("target_hint").is_null()) {
          call.target_hint = c.at("target_hint").get<std::string>();
        }
        call.return_type = c.value("return_type", "");
        if (c.contains("parameters")) call.parameters = read_parameters(c.at("parameters"));
        if (!c.at("target").is_null()) {
          call.resolved_target = EndpointRef{c.at("target").get<std::string>(), call.http_method,
                                             c.at("endpoint_path").get<std::string>()};
        }
        ms.calls.push_back(std::move(call));
      }
      for (const auto& e : m.at("persistent_entities")) ms.persistent_entities.push_back(read_entity(e, ms.name));
      for (const auto& e : m.at("transient_entities")) ms.transient_entities.push_back(read_entity(e, ms.name));
      model.microservices.push_back(std::move(ms));
    }
    canonicalize(model);
    return model;
  } catch (const json::exception& e) {
    throw MalformedDocument("<ir>", e.what());
  } catch (const std::invalid_argument& e) {
    throw MalformedDocument("<ir>", e.what());
  }
}

std::string export_graph(const SystemModel& system, GraphOptions options) {
  std::map<std::pair<std::string, std::string>, std::size_t> links;
  std::map<std::string, std::set<std::string>> dependencies;
  std::map<std::string, std::set<std::string>> dependents;
  for (const auto& ms : system.microservices) {
    for (const auto& c : ms.calls) {
      if (!c.resolved_target) continue;
      const std::string& target = c.resolved_target->microservice;
      ++links[{ms.name, target}];
      dependencies[ms.name].insert(target);
      dependents[target].insert(ms.name);
    }
  }

  std::vector<std::string> names;
  for (const auto& ms : system.microservices) names.push_back(ms.name);
  std::sort(names.begin(), names.end());

  json nodes = json::array();
  for (const auto& name : names) {
    const std::size_t deps = dependencies[name].size();
    json node = {{"id", name}, {"name", name}, {"dependency_count", deps}, {"dependents_count", dependents[name].size()}};
    if (options.coupling_threshold) node["over_threshold"] = deps > *options.coupling_threshold;
    nodes.push_back(std::move(node));
  }
  json link_array = json::array();
  for (const auto& [pair, count] : links) {
    link_array.push_back({{"source", pair.first}, {"target", pair.second}, {"call_count", count}});
  }
  json doc = {{"schema_version", kSchemaVersion}, {"nodes", std::move(nodes)}, {"links", std::move(link_array)}};
  if (options.coupling_threshold) doc["coupling_threshold"] = *options.coupling_threshold;
  return dump(doc);
}

namespace {

std::string mermaid_identifier(std::string_view s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(out.begin(), '_');
  return out;
}

std::string mermaid_type(const Field& f) {
  std::string type;
  for (char c : f.type_name) type += (c == '<' || c == '>') ? '~' : (c == ' ' ? '_' : c);
  return f.is_collection ? "List~" + type + "~" : type;
}

// Class ids are simple names unless two entities share one; those get the
// owner appended.
std::map<EntityKey, std::string> class_ids(const std::vector<const DataEntity*>& entities) {
  std::map<std::string, std::size_t> uses;
  for (const auto* e : entities) ++uses[mermaid_identifier(e->simple_name)];
  std::map<EntityKey, std::string> ids;
  for (const auto* e : entities) {
    std::string id = mermaid_identifier(e->simple_name);
    if (uses[id] > 1) id += "_" + mermaid_identifier(e->owner);
    ids.emplace(e->key(), std::move(id));
  }
  return ids;
}

std::string class_diagram(const std::vector<const DataEntity*>& entities, const std::vector<Relationship>& relationships) {
  const auto ids = class_ids(entities);
  std::vector<std::pair<std::string, const DataEntity*>> blocks;
  for (const auto* e : entities) blocks.emplace_back(ids.at(e->key()), e);
  std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::string out = "classDiagram\n";
  for (const auto& [id, e] : blocks) {
    if (e->fields.empty()) {
      out += "class " + id + "\n";
      continue;
    }
    out += "class " + id + " {\n";
    for (const auto& f : e->fields) out += "  " + mermaid_type(f) + " " + f.name + "\n";
    out += "}\n";
  }
  std::vector<std::string> lines;
  for (const auto& r : relationships) {
    auto s = ids.find(r.source);
    auto d = ids.find(r.destination);
    if (s == ids.end() || d == ids.end()) continue;
    lines.push_back(s->second + " --> " + d->second + " : " + r.via_field + "\n");
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out += l;
  return out;
}

}  // namespace

std::string export_context_map_mermaid(const ContextMap& map) {
  std::vector<const DataEntity*> entities;
  for (const auto& ce : map.entities) entities.push_back(&ce.entity);
  return class_diagram(entities, map.relationships);
}

std::string export_service_mermaid(const Microservice& ms) {
  std::vector<const DataEntity*> entities;
  std::vector<Relationship> relationships;
  for (const auto* group : {&ms.persistent_entities, &ms.transient_entities}) {
    for (const auto& e : *group) {
      entities.push_back(&e);
      relationships.insert(relationships.end(), e.relationships.begin(), e.relationships.end());
    }
  }
  return class_diagram(entities, relationships);
}

std::string export_timeline_csv(const EvolutionTimeline& timeline) {
  auto csv_field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  };
  std::string out = "version,s1,s2,d1,d2,d3,d4,d5\n";
  for (const auto& r : timeline.reports) {
    out += csv_field(r.version_label);
    for (std::size_t v : r.values()) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

void write_text_file(const std::filesystem::path& file, std::string_view text) {
  std::error_code ec;
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path(), ec);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw WriteFailure(file);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw WriteFailure(file);
}

}  // namespace archrecon
