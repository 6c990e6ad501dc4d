#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "archrecon/errors.hpp"
#include "archrecon/profile.hpp"

using namespace archrecon;

TEST_CASE("built-in spring profile") {
  const auto p = spring_java_profile();
  CHECK(p.name == "spring-java");
  CHECK_NOTHROW(validate_profile(p));
  REQUIRE(p.endpoint_marker("GetMapping") != nullptr);
  CHECK(p.endpoint_marker("GetMapping")->method == HttpMethod::Get);
  CHECK_FALSE(p.endpoint_marker("RequestMapping")->method);
  CHECK(p.call_marker("exchange")->method_arg == 1u);
  CHECK(p.persistence_marker("Document")->flavor == Persistence::NonRelational);
  CHECK(p.persistence_marker("Table") == nullptr);
  CHECK(p.is_collection_type("List"));
  CHECK(p.is_collection_type("java.util.Set"));
  CHECK_FALSE(p.is_collection_type("Map"));
  CHECK(p.canonical_type("Integer") == "int");
  CHECK(p.canonical_type("java.lang.String") == "string");
  CHECK(p.canonical_type("UUID") == "uuid");
  CHECK(p.canonical_type("Food") == "food");
  CHECK(builtin_profile("spring-java").has_value());
  CHECK_FALSE(builtin_profile("django").has_value());
}

TEST_CASE("profile file extending the built-in") {
  const auto p = load_profile_file(std::string(ARCHRECON_FIXTURES) + "/profiles/graph-store.toml");
  CHECK(p.name == "spring-graph");
  REQUIRE(p.persistence_markers.size() == 3);
  CHECK(p.persistence_marker("Node")->flavor == Persistence::NonRelational);
  CHECK(p.data_class_markers == std::vector<std::string>{"Data", "Value"});
  CHECK(p.canonical_type("ObjectId") == "string");
  CHECK(p.canonical_type("Long") == "long");
  CHECK(p.call_marker("getForObject") != nullptr);
}

TEST_CASE("standalone profile") {
  const auto p = parse_profile(R"(
name = "tiny"
source_extensions = [".java"]
controller_markers = ["Api"]
client_types = ["Http"]
data_class_markers = ["Value"]
accessor_bearing_transients = false

[[endpoint]]
annotation = "Get"
method = "GET"

[[call]]
invocation = "send"
url_arg = 1
method_arg = 0

[[persistence]]
annotation = "Stored"
flavor = "RELATIONAL"
)");
  CHECK(p.name == "tiny");
  CHECK_FALSE(p.accessor_bearing_transients);
  CHECK(p.call_marker("send")->url_arg == 1u);
  CHECK(p.call_marker("send")->method_arg == 0u);
}

TEST_CASE("invalid profiles") {
  CHECK_THROWS_AS(parse_profile("name = \"x\"\n"), InvalidProfile);  // no source extensions
  CHECK_THROWS_AS(parse_profile("extends = \"cobol\"\n"), InvalidProfile);
  CHECK_THROWS_AS(parse_profile("extends = \"spring-java\"\nname = \n"), InvalidProfile);
  CHECK_THROWS_AS(parse_profile("extends = \"spring-java\"\n[[call]]\ninvocation = \"go\"\n"), InvalidProfile);
  CHECK_THROWS_AS(parse_profile("extends = \"spring-java\"\n[[endpoint]]\nannotation = \"A\"\n[[endpoint]]\nannotation = \"A\"\n"),
                  InvalidProfile);
  CHECK_THROWS_AS(parse_profile("extends = \"spring-java\"\n[[persistence]]\nannotation = \"A\"\nflavor = \"TRANSIENT\"\n"),
                  InvalidProfile);
  CHECK_THROWS_AS(load_profile_file("/nonexistent/profile.toml"), InvalidProfile);
}
