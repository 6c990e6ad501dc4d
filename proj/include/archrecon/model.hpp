#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace archrecon {

enum class HttpMethod { Get, Post, Put, Delete, Patch };

enum class Persistence { Relational, NonRelational, Transient };

std::string_view to_string(HttpMethod method);
std::string_view to_string(Persistence persistence);
std::optional<HttpMethod> parse_http_method(std::string_view text);
std::optional<Persistence> parse_persistence(std::string_view text);

/// Parameter of an endpoint or a call: declared type and name.
struct Parameter {
  std::string type_name;
  std::string name;

  friend auto operator<=>(const Parameter&, const Parameter&) = default;
};

struct Field {
  std::string type_name;  ///< element type when is_collection is set
  std::string name;
  bool is_collection = false;

  friend auto operator<=>(const Field&, const Field&) = default;
};

/// Identity of a data entity. Same-named entities in two microservices are
/// distinct until the merger says otherwise.
struct EntityKey {
  std::string owner;
  std::string qualified_name;

  friend auto operator<=>(const EntityKey&, const EntityKey&) = default;
};

std::string to_string(const EntityKey& key);

struct Relationship {
  EntityKey source;
  EntityKey destination;
  std::string via_field;

  friend auto operator<=>(const Relationship&, const Relationship&) = default;
};

struct DataEntity {
  std::string qualified_name;
  std::string simple_name;
  std::vector<Field> fields;
  std::vector<Relationship> relationships;  ///< outgoing only
  Persistence persistence = Persistence::Transient;
  std::string owner;

  EntityKey key() const { return {owner, qualified_name}; }

  friend bool operator==(const DataEntity&, const DataEntity&) = default;
};

struct Endpoint {
  std::string url_path;
  HttpMethod http_method = HttpMethod::Get;
  std::string return_type;
  std::vector<Parameter> parameters;  ///< path variables and query parameters, declared order
  std::string request_type;           ///< body type, empty when the handler takes none
  std::string declaring_unit;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Points at one endpoint of one microservice.
struct EndpointRef {
  std::string microservice;
  HttpMethod http_method = HttpMethod::Get;
  std::string url_path;

  friend auto operator<=>(const EndpointRef&, const EndpointRef&) = default;
};

struct CallSite {
  std::optional<std::string> target_hint;
  std::string url_path;
  HttpMethod http_method = HttpMethod::Get;
  std::string return_type;
  std::vector<Parameter> parameters;
  std::optional<EndpointRef> resolved_target;
  std::string origin;

  bool resolved() const { return resolved_target.has_value(); }

  friend bool operator==(const CallSite&, const CallSite&) = default;
};

struct Microservice {
  std::string name;
  std::vector<Endpoint> endpoints;
  std::vector<CallSite> calls;
  std::vector<DataEntity> persistent_entities;
  std::vector<DataEntity> transient_entities;
  std::string source_root;

  friend bool operator==(const Microservice&, const Microservice&) = default;
};

struct SystemModel {
  std::string version_label;
  std::vector<Microservice> microservices;

  const Microservice* find(std::string_view name) const;
  const DataEntity* find_entity(const EntityKey& key) const;

  friend bool operator==(const SystemModel&, const SystemModel&) = default;
};

/// Sorts every set-valued member by its natural key so that two models
/// holding the same sets compare equal and serialize identically.
/// Parameter lists keep their declared order.
void canonicalize(SystemModel& model);
SystemModel canonicalized(SystemModel model);

/// Equality under set semantics.
bool equivalent(const SystemModel& a, const SystemModel& b);

struct Violation {
  std::string element;
  std::string invariant;
};

std::vector<Violation> validate_system(const SystemModel& model);

}  // namespace archrecon
