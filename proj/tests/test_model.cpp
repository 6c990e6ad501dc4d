#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "archrecon/model.hpp"
#include "demo_model.hpp"

#include <algorithm>

using namespace archrecon;

namespace {

bool has_invariant(const std::vector<Violation>& v, std::string_view needle) {
  return std::any_of(v.begin(), v.end(),
                     [&](const Violation& x) { return x.invariant.find(needle) != std::string::npos; });
}

DataEntity plain(const std::string& owner, const std::string& qn, Persistence p) {
  DataEntity e;
  e.owner = owner;
  e.qualified_name = qn;
  e.simple_name = qn;
  e.persistence = p;
  return e;
}

}  // namespace

TEST_CASE("enum text round trips") {
  for (auto m : {HttpMethod::Get, HttpMethod::Post, HttpMethod::Put, HttpMethod::Delete, HttpMethod::Patch}) {
    CHECK(parse_http_method(to_string(m)) == m);
  }
  CHECK(parse_http_method("get") == HttpMethod::Get);
  CHECK_FALSE(parse_http_method("FETCH"));
  for (auto p : {Persistence::Relational, Persistence::NonRelational, Persistence::Transient}) {
    CHECK(parse_persistence(to_string(p)) == p);
  }
}

TEST_CASE("empty system is valid") { CHECK(validate_system(SystemModel{}).empty()); }

TEST_CASE("the example system is valid") {
  const auto violations = validate_system(testsupport::demo_system());
  for (const auto& v : violations) INFO(v.element << ": " << v.invariant);
  CHECK(violations.empty());
}

TEST_CASE("duplicate microservice names are reported once") {
  SystemModel s;
  s.microservices.resize(3);
  for (auto& ms : s.microservices) ms.name = "orders";
  const auto v = validate_system(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].element == "orders");
}

TEST_CASE("endpoint uniqueness uses the normalized path") {
  SystemModel s;
  Microservice ms;
  ms.name = "a";
  Endpoint e1;
  e1.url_path = "/orders/{id}";
  Endpoint e2;
  e2.url_path = "/Orders/{orderId}/";
  ms.endpoints = {e1, e2};
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "unique within a microservice"));

  s.microservices[0].endpoints[1].http_method = HttpMethod::Post;
  CHECK(validate_system(s).empty());
}

TEST_CASE("calls must not resolve to their own service or an unknown one") {
  SystemModel s;
  Microservice ms;
  ms.name = "a";
  CallSite c;
  c.url_path = "/x";
  c.resolved_target = EndpointRef{"a", HttpMethod::Get, "/x"};
  ms.calls = {c};
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "own microservice"));

  s.microservices[0].calls[0].resolved_target->microservice = "ghost";
  CHECK(has_invariant(validate_system(s), "name a microservice"));
}

TEST_CASE("entity placement and relationships are checked") {
  SystemModel s;
  Microservice ms;
  ms.name = "a";
  ms.persistent_entities = {plain("a", "Food", Persistence::Relational)};
  ms.transient_entities = {plain("a", "Food", Persistence::Transient)};
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "exactly once"));

  ms.transient_entities = {plain("a", "Menu", Persistence::Relational)};
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "agree with the set"));

  ms.transient_entities = {plain("b", "Menu", Persistence::Transient)};
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "owner"));

  ms.transient_entities = {plain("a", "Menu", Persistence::Transient)};
  ms.transient_entities[0].relationships.push_back({{"a", "Menu"}, {"a", "Food"}, "food"});
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "via_field"));

  ms.transient_entities[0].fields.push_back({"Food", "food", false});
  s.microservices = {ms};
  CHECK(validate_system(s).empty());

  ms.transient_entities[0].relationships[0].destination = {"a", "Drink"};
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "destination must exist"));

  ms.transient_entities[0].relationships[0].destination = {"a", "Menu"};
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "two distinct entities"));

  ms.transient_entities[0].relationships.clear();
  ms.transient_entities[0].fields.push_back({"String", "food", false});
  s.microservices = {ms};
  CHECK(has_invariant(validate_system(s), "field names must be unique"));
}

TEST_CASE("canonical form ignores insertion order") {
  auto a = testsupport::demo_system();
  auto b = a;
  std::reverse(b.microservices.begin(), b.microservices.end());
  for (auto& ms : b.microservices) {
    std::reverse(ms.persistent_entities.begin(), ms.persistent_entities.end());
    std::reverse(ms.endpoints.begin(), ms.endpoints.end());
  }
  CHECK_FALSE(a == b);
  CHECK(equivalent(a, b));
  CHECK(canonicalized(b) == a);
}

TEST_CASE("lookups") {
  const auto s = testsupport::demo_system();
  REQUIRE(s.find("ms-3") != nullptr);
  CHECK(s.find("ms-9") == nullptr);
  const auto* e = s.find_entity(testsupport::demo_labels().at("T-3.2"));
  REQUIRE(e != nullptr);
  CHECK(e->simple_name == "SupplierDto");
  CHECK(to_string(e->key()) == "ms-3:demo.ms3.model.SupplierDto");
}
