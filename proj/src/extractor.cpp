#include "archrecon/extractor.hpp"

#include "archrecon/matcher.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace archrecon {

namespace {

std::string locator(const std::string& file, int line) { return file + ":" + std::to_string(line); }

// Splits `a, b, {c, d}` style token lists at top-level commas.
std::vector<std::vector<Token>> split_top_level(const std::vector<Token>& tokens) {
  std::vector<std::vector<Token>> parts;
  std::vector<Token> current;
  int depth = 0;
  for (const auto& t : tokens) {
    if (t.is_symbol("(") || t.is_symbol("{") || t.is_symbol("[")) ++depth;
    if (t.is_symbol(")") || t.is_symbol("}") || t.is_symbol("]")) --depth;
    if (depth == 0 && t.is_symbol(",")) {
      parts.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(t);
  }
  if (!current.empty()) parts.push_back(std::move(current));
  return parts;
}

// Evaluates a string concatenation. Literals and known constants are kept,
// anything else becomes the dynamic placeholder.
std::string evaluate_string(const std::vector<Token>& tokens,
                            const std::map<std::string, std::string>& constants) {
  std::vector<std::vector<Token>> operands(1);
  int depth = 0;
  for (const auto& t : tokens) {
    if (t.is_symbol("(") || t.is_symbol("{") || t.is_symbol("[")) ++depth;
    if (t.is_symbol(")") || t.is_symbol("}") || t.is_symbol("]")) --depth;
    if (depth == 0 && t.is_symbol("+")) {
      operands.emplace_back();
      continue;
    }
    operands.back().push_back(t);
  }

  std::string out;
  auto append_dynamic = [&out] {
    if (!out.ends_with(kDynamicSegment)) out += kDynamicSegment;
  };
  for (const auto& op : operands) {
    if (op.size() == 1 && op[0].kind == Token::Kind::String) {
      out += op[0].text;
      continue;
    }
    // NAME, this.NAME or Type.NAME referring to a constant of this class
    if (!op.empty() && op.back().kind == Token::Kind::Identifier &&
        (op.size() == 1 || (op.size() == 3 && op[1].is_symbol(".")))) {
      if (auto it = constants.find(op.back().text); it != constants.end()) {
        out += it->second;
        continue;
      }
    }
    append_dynamic();
  }
  return out;
}

std::vector<std::string> annotation_strings(const Annotation& a, const ClassSketch& owner,
                                            std::initializer_list<std::string_view> keys) {
  for (auto key : keys) {
    const AnnotationArgument* arg = a.argument(key);
    if (arg == nullptr) continue;
    std::vector<Token> tokens = arg->tokens;
    if (!tokens.empty() && tokens.front().is_symbol("{") && tokens.back().is_symbol("}")) {
      tokens = std::vector<Token>(tokens.begin() + 1, tokens.end() - 1);
    }
    std::vector<std::string> values;
    for (const auto& part : split_top_level(tokens)) {
      values.push_back(evaluate_string(part, owner.string_constants));
    }
    return values;
  }
  return {};
}

std::vector<HttpMethod> annotation_methods(const Annotation& a) {
  std::vector<HttpMethod> out;
  const AnnotationArgument* arg = a.argument("method");
  if (arg == nullptr) return out;
  for (const auto& t : arg->tokens) {
    if (t.kind != Token::Kind::Identifier) continue;
    if (auto m = parse_http_method(t.text); m && std::find(out.begin(), out.end(), *m) == out.end()) {
      out.push_back(*m);
    }
  }
  return out;
}

std::string compose_path(const std::string& base, const std::string& sub) {
  std::string joined = base;
  if (!sub.empty()) joined += "/" + sub;
  std::string out;
  for (char c : joined) {
    if (c == '/' && out.ends_with('/')) continue;
    out += c;
  }
  if (out.empty() || out.front() != '/') out.insert(out.begin(), '/');
  if (out.size() > 1 && out.back() == '/') out.pop_back();
  return out;
}

bool has_any(const std::vector<Annotation>& annotations, const std::vector<std::string>& names) {
  return std::any_of(annotations.begin(), annotations.end(), [&](const Annotation& a) {
    return std::find(names.begin(), names.end(), a.name) != names.end();
  });
}

const Annotation* find_any(const std::vector<Annotation>& annotations,
                           const std::vector<std::string>& names) {
  for (const auto& a : annotations) {
    if (std::find(names.begin(), names.end(), a.name) != names.end()) return &a;
  }
  return nullptr;
}

std::string parameter_name(const Annotation& a, const ClassSketch& owner, const std::string& fallback) {
  auto names = annotation_strings(a, owner, {"value", "name"});
  if (!names.empty() && !names.front().empty() && names.front() != kDynamicSegment) return names.front();
  return fallback;
}

std::string lowercase(std::string_view s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

bool has_accessors(const ClassSketch& sketch) {
  std::set<std::string> accessor_names;
  for (const auto& m : sketch.methods) accessor_names.insert(m.name);
  return std::any_of(sketch.fields.begin(), sketch.fields.end(), [&](const Field& f) {
    const std::string suffix = capitalized(f.name);
    return accessor_names.contains("get" + suffix) || accessor_names.contains("set" + suffix) ||
           accessor_names.contains("is" + suffix);
  });
}

std::string package_of(const std::string& qualified) {
  const auto dot = qualified.rfind('.');
  return dot == std::string::npos ? std::string() : qualified.substr(0, dot);
}

}  // namespace

std::vector<Endpoint> extract_endpoints(const std::vector<ClassSketch>& sketches,
                                        const LanguageProfile& profile, Diagnostics& diagnostics) {
  std::vector<Endpoint> out;
  std::map<std::pair<HttpMethod, std::string>, std::string> taken;

  for (const auto& sketch : sketches) {
    if (!has_any(sketch.annotations, profile.controller_markers)) continue;

    std::vector<std::string> bases{""};
    for (const auto& a : sketch.annotations) {
      if (profile.endpoint_marker(a.name) == nullptr) continue;
      auto paths = annotation_strings(a, sketch, {"value", "path"});
      if (!paths.empty()) bases = paths;
      break;
    }

    for (const auto& method : sketch.methods) {
      for (const auto& a : method.annotations) {
        const EndpointMarker* marker = profile.endpoint_marker(a.name);
        if (marker == nullptr) continue;

        std::vector<HttpMethod> verbs;
        if (marker->method) verbs.push_back(*marker->method);
        else verbs = annotation_methods(a);
        if (verbs.empty()) verbs.push_back(HttpMethod::Get);

        auto subs = annotation_strings(a, sketch, {"value", "path"});
        if (subs.empty()) subs.emplace_back();

        Endpoint proto;
        proto.return_type = method.return_type;
        proto.declaring_unit = locator(sketch.file, method.line);
        for (const auto& p : method.parameters) {
          if (const Annotation* pv = find_any(p.annotations, profile.path_variable_markers)) {
            proto.parameters.push_back({p.type_name, parameter_name(*pv, sketch, p.name)});
          } else if (const Annotation* qp = find_any(p.annotations, profile.query_parameter_markers)) {
            proto.parameters.push_back({p.type_name, parameter_name(*qp, sketch, p.name)});
          } else if (has_any(p.annotations, profile.body_markers)) {
            proto.request_type = p.type_name;
          }
        }

        for (const auto& base : bases) {
          for (const auto& sub : subs) {
            for (HttpMethod verb : verbs) {
              Endpoint ep = proto;
              ep.http_method = verb;
              ep.url_path = compose_path(base, sub);
              auto [it, inserted] = taken.emplace(std::pair{verb, normalize_path(ep.url_path)}, ep.declaring_unit);
              if (!inserted) {
                diagnostics.push_back({Diagnostic::Kind::ConflictingMapping, sketch.file,
                                       std::string(to_string(verb)) + " " + ep.url_path + " at " +
                                           ep.declaring_unit + " conflicts with " + it->second});
                continue;
              }
              out.push_back(std::move(ep));
            }
          }
        }
      }
    }
  }
  return out;
}

std::vector<Endpoint> extract_endpoints(const std::vector<ClassSketch>& sketches,
                                        const LanguageProfile& profile) {
  Diagnostics ignored;
  return extract_endpoints(sketches, profile, ignored);
}

std::vector<RawCall> extract_calls(const std::vector<ClassSketch>& sketches, const LanguageProfile& profile) {
  std::vector<RawCall> out;
  for (const auto& sketch : sketches) {
    for (const auto& inv : sketch.invocations) {
      const CallMarker* marker = profile.call_marker(inv.method);
      if (marker == nullptr) continue;

      bool is_client = sketch.client_variables.contains(inv.receiver);
      const std::string receiver = lowercase(inv.receiver);
      for (const auto& type : profile.client_types) {
        if (receiver.find(lowercase(type)) != std::string::npos) is_client = true;
      }
      if (!is_client || marker->url_arg >= inv.arguments.size()) continue;

      std::optional<HttpMethod> verb = marker->method;
      if (!verb && marker->method_arg && *marker->method_arg < inv.arguments.size()) {
        for (const auto& t : inv.arguments[*marker->method_arg]) {
          if (t.kind != Token::Kind::Identifier) continue;
          if (auto m = parse_http_method(t.text)) verb = m;
        }
      }
      if (!verb) continue;

      RawCall call;
      call.http_method = *verb;
      call.url_expression = evaluate_string(inv.arguments[marker->url_arg], sketch.string_constants);
      call.origin = locator(sketch.file, inv.line);
      for (std::size_t i = marker->url_arg + 1; i < inv.arguments.size() && call.return_type.empty(); ++i) {
        const auto& arg = inv.arguments[i];
        if (arg.size() >= 3 && arg.back().is_word("class") && arg[arg.size() - 2].is_symbol(".")) {
          call.return_type = join_type(std::vector<Token>(arg.begin(), arg.end() - 2));
        }
        auto ref = std::find_if(arg.begin(), arg.end(), [](const Token& t) { return t.is_word("ParameterizedTypeReference"); });
        if (ref != arg.end() && ref + 1 != arg.end() && (ref + 1)->is_symbol("<")) {
          std::vector<Token> inner;
          int depth = 0;
          for (auto it = ref + 1; it != arg.end(); ++it) {
            if (it->is_symbol("<") && depth++ == 0) continue;
            if (it->is_symbol(">") && --depth == 0) break;
            inner.push_back(*it);
          }
          call.return_type = join_type(inner);
        }
      }
      out.push_back(std::move(call));
    }
  }
  return out;
}

std::string url_host(std::string_view url) {
  for (std::string_view scheme : {"http://", "https://"}) {
    if (!url.starts_with(scheme)) continue;
    url.remove_prefix(scheme.size());
    std::string_view host = url.substr(0, url.find_first_of("/?#"));
    if (auto at = host.rfind('@'); at != std::string_view::npos) host.remove_prefix(at + 1);
    host = host.substr(0, host.find(':'));
    if (host.find('{') != std::string_view::npos) return {};
    return std::string(host);
  }
  return {};
}

CallSite to_call_site(const RawCall& raw) {
  CallSite site;
  if (std::string host = url_host(raw.url_expression); !host.empty()) site.target_hint = host;
  site.url_path = normalize_path(raw.url_expression);
  site.http_method = raw.http_method;
  site.return_type = raw.return_type;
  site.origin = raw.origin;
  return site;
}

ClassifiedEntities classify_entities(const std::vector<ClassSketch>& sketches,
                                     const std::vector<Endpoint>& endpoints,
                                     const LanguageProfile& profile, const std::string& owner,
                                     ClassifyOptions options) {
  std::set<std::string> referenced;
  for (const auto& ep : endpoints) {
    for (auto& id : type_identifiers(ep.return_type)) referenced.insert(std::move(id));
    if (options.strict_response_only) continue;
    for (auto& id : type_identifiers(ep.request_type)) referenced.insert(std::move(id));
    for (const auto& p : ep.parameters) {
      for (auto& id : type_identifiers(p.type_name)) referenced.insert(std::move(id));
    }
  }

  ClassifiedEntities out;
  std::set<std::string> seen;
  for (const auto& sketch : sketches) {
    if (sketch.kind != TypeKind::Class && sketch.kind != TypeKind::Record) continue;
    if (seen.contains(sketch.qualified_name)) continue;

    std::optional<Persistence> persistence;
    for (const auto& a : sketch.annotations) {
      if (const PersistenceMarker* m = profile.persistence_marker(a.name)) {
        persistence = m->flavor;
        break;
      }
    }
    if (!persistence) {
      const bool data_class = has_any(sketch.annotations, profile.data_class_markers) ||
                              (profile.accessor_bearing_transients && has_accessors(sketch));
      if (!data_class || !referenced.contains(sketch.simple_name)) continue;
      persistence = Persistence::Transient;
    }

    DataEntity entity;
    entity.qualified_name = sketch.qualified_name;
    entity.simple_name = sketch.simple_name;
    entity.persistence = *persistence;
    entity.owner = owner;
    std::set<std::string> field_names;
    for (const auto& f : sketch.fields) {
      if (field_names.insert(f.name).second) entity.fields.push_back(f);
    }
    seen.insert(sketch.qualified_name);
    (*persistence == Persistence::Transient ? out.transient_ : out.persistent).push_back(std::move(entity));
  }
  return out;
}

std::vector<Relationship> extract_relationships(const std::vector<DataEntity>& entities) {
  std::map<std::string, std::vector<const DataEntity*>> by_simple_name;
  for (const auto& e : entities) by_simple_name[e.simple_name].push_back(&e);

  std::vector<Relationship> out;
  for (const auto& entity : entities) {
    for (const auto& field : entity.fields) {
      std::string type = field.type_name;
      if (type.find('<') != std::string::npos) continue;
      if (auto dot = type.rfind('.'); dot != std::string::npos) type = type.substr(dot + 1);
      auto it = by_simple_name.find(type);
      if (it == by_simple_name.end()) continue;

      // same-package entities win over same-named ones elsewhere
      auto rank = [&entity](const DataEntity* c) {
        return std::pair{package_of(c->qualified_name) != package_of(entity.qualified_name),
                         c->qualified_name};
      };
      const DataEntity* target = nullptr;
      for (const DataEntity* candidate : it->second) {
        if (candidate->key() == entity.key()) continue;
        if (target == nullptr || rank(candidate) < rank(target)) target = candidate;
      }
      if (target != nullptr) out.push_back({entity.key(), target->key(), field.name});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExtractedService extract_microservice(const std::string& name, const std::filesystem::path& root,
                                      const LanguageProfile& profile, ExtractionOptions options) {
  ExtractedService out;
  ScanResult scan = scan_classes(root, profile);
  out.diagnostics = std::move(scan.diagnostics);

  Microservice& ms = out.microservice;
  ms.name = name;
  ms.source_root = root.generic_string();
  ms.endpoints = extract_endpoints(scan.sketches, profile, out.diagnostics);
  out.raw_calls = extract_calls(scan.sketches, profile);
  for (const auto& raw : out.raw_calls) ms.calls.push_back(to_call_site(raw));

  auto classified = classify_entities(scan.sketches, ms.endpoints, profile, name, options.classify);
  std::vector<DataEntity> all = classified.persistent;
  all.insert(all.end(), classified.transient_.begin(), classified.transient_.end());
  const auto relationships = extract_relationships(all);
  auto attach = [&relationships](std::vector<DataEntity>& group) {
    for (auto& e : group) {
      for (const auto& r : relationships) {
        if (r.source == e.key()) e.relationships.push_back(r);
      }
    }
  };
  attach(classified.persistent);
  attach(classified.transient_);
  ms.persistent_entities = std::move(classified.persistent);
  ms.transient_entities = std::move(classified.transient_);
  return out;
}

}  // namespace archrecon
