#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "archrecon/discovery.hpp"
#include "archrecon/errors.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace archrecon;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = ARCHRECON_FIXTURES;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("archrecon-disc-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& rel, const std::string& text) const {
    fs::create_directories((path / rel).parent_path());
    std::ofstream(path / rel) << text;
  }
};

}  // namespace

TEST_CASE("compose with nested build.context keys") {
  const auto services = parse_compose(kFixtures / "corpus/docker-compose.yml");
  std::vector<std::pair<std::string, std::string>> built;
  for (const auto& s : services) {
    if (s.build_context) built.emplace_back(s.name, s.build_context->string());
  }
  REQUIRE(built.size() == 4);
  CHECK(built[0] == std::pair<std::string, std::string>{"catalog-svc", "./catalog-svc"});
  CHECK(built[3] == std::pair<std::string, std::string>{"payment-svc", "./payments"});
  // the image-only database is listed without a context
  REQUIRE(services.size() == 5);
  CHECK(services[4].name == "catalog-db");
  CHECK_FALSE(services[4].build_context);
}

TEST_CASE("compose variants") {
  TempDir t;
  SUBCASE("scalar build") {
    t.write("c.yml", "services:\n  web:\n    build: ./web\n");
    const auto s = parse_compose(t.path / "c.yml");
    REQUIRE(s.size() == 1);
    CHECK(s[0].build_context == fs::path("./web"));
  }
  SUBCASE("build map without context defaults to the compose directory") {
    t.write("c.yml", "services:\n  web:\n    build:\n      dockerfile: Dockerfile.dev\n");
    CHECK(parse_compose(t.path / "c.yml")[0].build_context == fs::path("."));
  }
  SUBCASE("version one layout") {
    t.write("c.yml", "web:\n  build: web\ndb:\n  image: mysql\n");
    const auto s = parse_compose(t.path / "c.yml");
    REQUIRE(s.size() == 2);
    CHECK(s[0].name == "web");
    CHECK_FALSE(s[1].build_context);
  }
  SUBCASE("zero services") {
    t.write("c.yml", "version: '3'\nservices: {}\n");
    CHECK(parse_compose(t.path / "c.yml").empty());
  }
  SUBCASE("malformed") {
    t.write("c.yml", "services:\n  web: [unclosed\n");
    CHECK_THROWS_AS(parse_compose(t.path / "c.yml"), MalformedDocument);
    t.write("d.yml", "services: 12\n");
    CHECK_THROWS_AS(parse_compose(t.path / "d.yml"), MalformedDocument);
  }
}

TEST_CASE("fixture corpus discovery") {
  const auto result = discover(kFixtures / "corpus");
  REQUIRE(result.manifests.size() == 4);
  CHECK(result.diagnostics.empty());
  CHECK(result.manifests[0].microservice_name == "catalog-svc");
  CHECK(result.manifests[3].microservice_name == "payment-svc");
  CHECK(result.manifests[3].root_dir.filename() == "payments");
  for (const auto& m : result.manifests) CHECK(m.evidence == Evidence::Both);
}

TEST_CASE("missing root") {
  CHECK_THROWS_AS(discover(kFixtures / "no-such-dir"), RootNotFound);
}

TEST_CASE("a single module is one microservice") {
  TempDir t;
  t.write("svc/pom.xml", "<project/>");
  t.write("svc/src/main/java/App.java", "@SpringBootApplication public class App {}");
  const auto r = discover(t.path);
  REQUIRE(r.manifests.size() == 1);
  CHECK(r.manifests[0].microservice_name == "svc");
  CHECK(r.manifests[0].evidence == Evidence::BuildManifest);
}

TEST_CASE("libraries without an entry point are not microservices") {
  TempDir t;
  t.write("lib/pom.xml", "<project/>");
  t.write("lib/src/main/java/Util.java", "public class Util {}");
  t.write("py/requirements.txt", "flask\n");
  t.write("py/app.py", "print('hi')\n");
  t.write("node/package.json", "{\"scripts\": {\"start\": \"node index.js\"}}");
  t.write("gosvc/go.mod", "module x\n");
  t.write("gosvc/main.go", "package main\nfunc main() {}\n");
  const auto r = discover(t.path);
  std::vector<std::string> names;
  for (const auto& m : r.manifests) names.push_back(m.microservice_name);
  CHECK(names == std::vector<std::string>{"gosvc", "node", "py"});
}

TEST_CASE("compose only service, outside contexts and broken compose files") {
  TempDir t;
  t.write("deploy/docker-compose.yml",
          "services:\n  api:\n    build: ../api\n  escape:\n    build: ../../elsewhere\n  gone:\n    build: ./missing\n");
  t.write("api/Dockerfile", "FROM scratch\n");
  t.write("docker-compose.override.yml", "services: [oops\n");
  const auto r = discover(t.path);
  REQUIRE(r.manifests.size() == 1);
  CHECK(r.manifests[0].microservice_name == "api");
  CHECK(r.manifests[0].evidence == Evidence::ComposeService);
  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0].kind == Diagnostic::Kind::UnreadableManifest);
}

TEST_CASE("manifest listing") {
  const std::vector<ProjectManifest> m = {{"a", "/x/a", Evidence::Both}, {"b", "/x/b", Evidence::ComposeService}};
  CHECK(format_manifests(m) == "a\t/x/a\tBOTH\nb\t/x/b\tCOMPOSE_SERVICE\n");
}
