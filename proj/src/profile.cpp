#include "archrecon/profile.hpp"

#include "archrecon/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <variant>

namespace archrecon {

const EndpointMarker* LanguageProfile::endpoint_marker(std::string_view annotation) const {
  for (const auto& m : endpoint_markers) {
    if (m.annotation == annotation) return &m;
  }
  return nullptr;
}

const CallMarker* LanguageProfile::call_marker(std::string_view invocation) const {
  for (const auto& m : call_markers) {
    if (m.invocation == invocation) return &m;
  }
  return nullptr;
}

const PersistenceMarker* LanguageProfile::persistence_marker(std::string_view annotation) const {
  for (const auto& m : persistence_markers) {
    if (m.annotation == annotation) return &m;
  }
  return nullptr;
}

bool LanguageProfile::is_collection_type(std::string_view type) const {
  if (auto dot = type.rfind('.'); dot != std::string_view::npos) type.remove_prefix(dot + 1);
  return std::find(collection_types.begin(), collection_types.end(), type) != collection_types.end();
}

std::string LanguageProfile::canonical_type(std::string_view type) const {
  std::string simple(type);
  // java.lang.String and String are the same type
  if (simple.find('<') == std::string::npos) {
    if (auto dot = simple.rfind('.'); dot != std::string::npos) simple = simple.substr(dot + 1);
  }
  if (auto it = type_synonyms.find(simple); it != type_synonyms.end()) return it->second;
  std::string lowered;
  for (char c : simple) lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lowered;
}

LanguageProfile spring_java_profile() {
  LanguageProfile p;
  p.name = "spring-java";
  p.source_extensions = {".java"};
  p.controller_markers = {"RestController", "Controller"};
  p.endpoint_markers = {
      {"RequestMapping", std::nullopt},      {"GetMapping", HttpMethod::Get},
      {"PostMapping", HttpMethod::Post},     {"PutMapping", HttpMethod::Put},
      {"DeleteMapping", HttpMethod::Delete}, {"PatchMapping", HttpMethod::Patch},
  };
  p.call_markers = {
      {"getForObject", HttpMethod::Get, 0, std::nullopt},
      {"getForEntity", HttpMethod::Get, 0, std::nullopt},
      {"postForObject", HttpMethod::Post, 0, std::nullopt},
      {"postForEntity", HttpMethod::Post, 0, std::nullopt},
      {"put", HttpMethod::Put, 0, std::nullopt},
      {"delete", HttpMethod::Delete, 0, std::nullopt},
      {"exchange", std::nullopt, 0, 1},
  };
  p.client_types = {"RestTemplate"};
  p.persistence_markers = {{"Entity", Persistence::Relational},
                           {"Document", Persistence::NonRelational}};
  p.data_class_markers = {"Data"};
  p.path_variable_markers = {"PathVariable"};
  p.query_parameter_markers = {"RequestParam"};
  p.body_markers = {"RequestBody"};
  p.collection_types = {"List",    "Set",     "Collection", "ArrayList", "LinkedList",
                        "HashSet", "TreeSet", "Iterable",   "Queue",     "Deque"};
  p.type_synonyms = {
      {"int", "int"},         {"Integer", "int"},       {"long", "long"},
      {"Long", "long"},       {"short", "short"},       {"Short", "short"},
      {"byte", "byte"},       {"Byte", "byte"},         {"double", "double"},
      {"Double", "double"},   {"float", "float"},       {"Float", "float"},
      {"boolean", "boolean"}, {"Boolean", "boolean"},   {"char", "char"},
      {"Character", "char"},  {"String", "string"},     {"CharSequence", "string"},
      {"StringBuilder", "string"}, {"UUID", "uuid"},    {"Date", "date"},
      {"LocalDate", "date"},  {"LocalDateTime", "date"}, {"BigDecimal", "decimal"},
  };
  return p;
}

std::optional<LanguageProfile> builtin_profile(std::string_view name) {
  if (name == "spring-java") return spring_java_profile();
  return std::nullopt;
}

namespace {

void require_unique(const std::vector<std::string>& names, const std::string& list) {
  if (names.empty()) throw InvalidProfile("profile marker list '" + list + "' is empty");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw InvalidProfile("profile marker list '" + list + "' repeats '" + n + "'");
    }
  }
}

// Minimal reader for the TOML subset profile files use: comments, bare keys,
// strings, integers, booleans, string arrays, [table] and [[array-of-tables]].
using TomlValue = std::variant<std::string, long long, bool, std::vector<std::string>>;
using TomlTable = std::map<std::string, TomlValue>;

struct TomlDocument {
  TomlTable root;
  std::map<std::string, TomlTable> tables;
  std::map<std::string, std::vector<TomlTable>> table_arrays;
};

class TomlReader {
 public:
  TomlReader(std::string_view text, std::string origin) : text_(text), origin_(std::move(origin)) {}

  TomlDocument read() {
    TomlDocument doc;
    TomlTable* current = &doc.root;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        ++pos_;
        const bool array = !at_end() && peek() == '[';
        if (array) ++pos_;
        const std::string name = read_key();
        expect(']');
        if (array) expect(']');
        if (array) {
          auto& list = doc.table_arrays[name];
          list.emplace_back();
          current = &list.back();
        } else {
          current = &doc.tables[name];
        }
      } else {
        const std::string key = read_key();
        skip_spaces();
        expect('=');
        skip_spaces();
        (*current)[key] = read_value();
      }
      end_line();
    }
    return doc;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(std::min(pos_, text_.size())), '\n'));
    throw InvalidProfile(origin_ + ":" + std::to_string(line) + ": " + what);
  }

  void expect(char c) {
    skip_spaces();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_comment() {
    if (!at_end() && peek() == '#') {
      while (!at_end() && peek() != '\n') ++pos_;
    }
  }

  void skip_blank_lines() {
    while (true) {
      skip_spaces();
      skip_comment();
      if (!at_end() && peek() == '\n') {
        ++pos_;
        continue;
      }
      return;
    }
  }

  void end_line() {
    skip_spaces();
    skip_comment();
    if (at_end()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    ++pos_;
  }

  std::string read_key() {
    skip_spaces();
    if (!at_end() && peek() == '"') return read_string();
    std::string key;
    while (!at_end()) {
      const char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.') {
        key += c;
        ++pos_;
      } else {
        break;
      }
    }
    if (key.empty()) fail("expected a key");
    return key;
  }

  std::string read_string() {
    expect('"');
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
        continue;
      }
      out += c;
    }
    return out;
  }

  TomlValue read_value() {
    if (at_end()) fail("expected a value");
    if (peek() == '"') return read_string();
    if (peek() == '[') {
      ++pos_;
      std::vector<std::string> items;
      while (true) {
        skip_blank_lines();
        if (!at_end() && peek() == ']') {
          ++pos_;
          break;
        }
        items.push_back(read_string());
        skip_blank_lines();
        if (!at_end() && peek() == ',') {
          ++pos_;
          continue;
        }
        skip_blank_lines();
        expect(']');
        break;
      }
      return items;
    }
    std::string word;
    while (!at_end() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '#') {
      word += peek();
      ++pos_;
    }
    if (word == "true") return true;
    if (word == "false") return false;
    try {
      std::size_t used = 0;
      const long long n = std::stoll(word, &used);
      if (used == word.size()) return n;
    } catch (const std::exception&) {
    }
    fail("unsupported value '" + word + "'");
  }

  std::string_view text_;
  std::string origin_;
  std::size_t pos_ = 0;
};

template <typename T>
const T* get(const TomlTable& table, const std::string& key, const std::string& origin) {
  auto it = table.find(key);
  if (it == table.end()) return nullptr;
  const T* value = std::get_if<T>(&it->second);
  if (value == nullptr) throw InvalidProfile(origin + ": key '" + key + "' has the wrong type");
  return value;
}

HttpMethod method_named(const std::string& text, const std::string& origin) {
  auto m = parse_http_method(text);
  if (!m) throw InvalidProfile(origin + ": unknown HTTP method '" + text + "'");
  return *m;
}

std::size_t index_value(long long v, const std::string& origin) {
  if (v < 0) throw InvalidProfile(origin + ": argument positions must be non-negative");
  return static_cast<std::size_t>(v);
}

}  // namespace

void validate_profile(const LanguageProfile& profile) {
  std::vector<std::string> endpoint_names;
  for (const auto& m : profile.endpoint_markers) endpoint_names.push_back(m.annotation);
  std::vector<std::string> call_names;
  for (const auto& m : profile.call_markers) call_names.push_back(m.invocation);
  std::vector<std::string> persistence_names;
  for (const auto& m : profile.persistence_markers) persistence_names.push_back(m.annotation);
  require_unique(endpoint_names, "endpoint");
  require_unique(call_names, "call");
  require_unique(persistence_names, "persistence");
  require_unique(profile.data_class_markers, "data_class_markers");
  for (const auto& m : profile.call_markers) {
    if (!m.method && !m.method_arg) {
      throw InvalidProfile("call marker '" + m.invocation + "' has neither method nor method_arg");
    }
  }
  if (profile.source_extensions.empty()) throw InvalidProfile("profile has no source_extensions");
}

LanguageProfile parse_profile(std::string_view text, const std::string& origin) {
  const TomlDocument doc = TomlReader(text, origin).read();

  LanguageProfile profile;
  if (const auto* base = get<std::string>(doc.root, "extends", origin)) {
    auto builtin = builtin_profile(*base);
    if (!builtin) throw InvalidProfile(origin + ": unknown base profile '" + *base + "'");
    profile = *builtin;
  }
  if (const auto* name = get<std::string>(doc.root, "name", origin)) profile.name = *name;
  if (profile.name.empty()) throw InvalidProfile(origin + ": profile has no name");

  auto list = [&](const char* key, std::vector<std::string>& target) {
    if (const auto* v = get<std::vector<std::string>>(doc.root, key, origin)) target = *v;
  };
  list("source_extensions", profile.source_extensions);
  list("controller_markers", profile.controller_markers);
  list("client_types", profile.client_types);
  list("data_class_markers", profile.data_class_markers);
  list("path_variable_markers", profile.path_variable_markers);
  list("query_parameter_markers", profile.query_parameter_markers);
  list("body_markers", profile.body_markers);
  list("collection_types", profile.collection_types);
  if (const auto* v = get<bool>(doc.root, "accessor_bearing_transients", origin)) {
    profile.accessor_bearing_transients = *v;
  }

  if (auto it = doc.tables.find("type_synonyms"); it != doc.tables.end()) {
    for (const auto& [key, value] : it->second) {
      const auto* target = std::get_if<std::string>(&value);
      if (target == nullptr) throw InvalidProfile(origin + ": type synonym '" + key + "' is not a string");
      profile.type_synonyms[key] = *target;
    }
  }

  if (auto it = doc.table_arrays.find("endpoint"); it != doc.table_arrays.end()) {
    profile.endpoint_markers.clear();
    for (const auto& t : it->second) {
      const auto* annotation = get<std::string>(t, "annotation", origin);
      if (annotation == nullptr) throw InvalidProfile(origin + ": [[endpoint]] needs 'annotation'");
      EndpointMarker m{*annotation, std::nullopt};
      if (const auto* method = get<std::string>(t, "method", origin)) m.method = method_named(*method, origin);
      profile.endpoint_markers.push_back(m);
    }
  }
  if (auto it = doc.table_arrays.find("call"); it != doc.table_arrays.end()) {
    profile.call_markers.clear();
    for (const auto& t : it->second) {
      const auto* invocation = get<std::string>(t, "invocation", origin);
      if (invocation == nullptr) throw InvalidProfile(origin + ": [[call]] needs 'invocation'");
      CallMarker m{*invocation, std::nullopt, 0, std::nullopt};
      if (const auto* method = get<std::string>(t, "method", origin)) m.method = method_named(*method, origin);
      if (const auto* pos = get<long long>(t, "url_arg", origin)) m.url_arg = index_value(*pos, origin);
      if (const auto* pos = get<long long>(t, "method_arg", origin)) m.method_arg = index_value(*pos, origin);
      profile.call_markers.push_back(m);
    }
  }
  if (auto it = doc.table_arrays.find("persistence"); it != doc.table_arrays.end()) {
    profile.persistence_markers.clear();
    for (const auto& t : it->second) {
      const auto* annotation = get<std::string>(t, "annotation", origin);
      const auto* flavor = get<std::string>(t, "flavor", origin);
      if (annotation == nullptr || flavor == nullptr) {
        throw InvalidProfile(origin + ": [[persistence]] needs 'annotation' and 'flavor'");
      }
      auto p = parse_persistence(*flavor);
      if (!p || *p == Persistence::Transient) {
        throw InvalidProfile(origin + ": persistence flavor must be RELATIONAL or NON_RELATIONAL");
      }
      profile.persistence_markers.push_back({*annotation, *p});
    }
  }

  validate_profile(profile);
  return profile;
}

LanguageProfile load_profile_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InvalidProfile("cannot read profile file " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str(), file.string());
}

}  // namespace archrecon
