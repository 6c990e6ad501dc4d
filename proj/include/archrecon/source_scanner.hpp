#pragma once

#include "archrecon/errors.hpp"
#include "archrecon/model.hpp"
#include "archrecon/profile.hpp"

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace archrecon {

class ScanError : public Error {
 public:
  ScanError(const std::string& file, int line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what) {}
};

struct Token {
  enum class Kind { Identifier, String, Char, Number, Symbol };
  Kind kind = Kind::Symbol;
  std::string text;  ///< string literals hold their unescaped content
  int line = 0;

  bool is(Kind k, std::string_view t) const { return kind == k && text == t; }
  bool is_symbol(std::string_view t) const { return is(Kind::Symbol, t); }
  bool is_word(std::string_view t) const { return is(Kind::Identifier, t); }
};

/// Splits Java-like source into tokens, dropping comments. Throws ScanError
/// on unterminated literals or comments.
std::vector<Token> tokenize(std::string_view source, const std::string& file = "<source>");

struct AnnotationArgument {
  std::string key;  ///< "value" for the positional form
  std::vector<Token> tokens;
};

struct Annotation {
  std::string name;  ///< last segment, `@org.x.Entity` is "Entity"
  std::vector<AnnotationArgument> arguments;

  const AnnotationArgument* argument(std::string_view key) const;
};

struct ParameterSketch {
  std::string type_name;
  std::string name;
  std::vector<Annotation> annotations;
};

/// `receiver.method(args...)` found anywhere inside a type declaration.
struct Invocation {
  std::string receiver;
  std::string method;
  std::vector<std::vector<Token>> arguments;
  int line = 0;
};

struct MethodSketch {
  std::string name;
  std::string return_type;
  std::vector<ParameterSketch> parameters;
  std::vector<Annotation> annotations;
  int line = 0;
};

enum class TypeKind { Class, Interface, Enum, Record, Annotation };

struct ClassSketch {
  std::string qualified_name;
  std::string simple_name;
  TypeKind kind = TypeKind::Class;
  std::vector<Annotation> annotations;
  std::vector<Field> fields;  ///< instance fields, collection element types unwrapped
  std::vector<MethodSketch> methods;
  std::vector<Invocation> invocations;
  std::map<std::string, std::string> string_constants;  ///< static final String fields
  std::set<std::string> client_variables;               ///< names declared with a client type
  std::string file;                                     ///< relative to the microservice root
  int line = 0;

  bool has_annotation(std::string_view name) const;
  const Annotation* annotation(std::string_view name) const;
  std::vector<std::string> annotation_names() const;
};

/// Top-level type declarations of one compilation unit. Throws ScanError.
std::vector<ClassSketch> scan_source(std::string_view source, const std::string& file,
                                     const LanguageProfile& profile);

struct ScanResult {
  std::vector<ClassSketch> sketches;
  Diagnostics diagnostics;
};

/// Scans every recognized source file below `ms_root` in path order. Test
/// sources are skipped; files that fail to scan become diagnostics.
ScanResult scan_classes(const std::filesystem::path& ms_root, const LanguageProfile& profile);

/// Concatenation of the given tokens as type text, `Map<String,List<Food>>`.
std::string join_type(const std::vector<Token>& tokens);

/// Every identifier mentioned in a type expression, `Response<List<Food>>`
/// gives {Response, List, Food}. Dotted names contribute their last segment.
std::vector<std::string> type_identifiers(std::string_view type_text);

}  // namespace archrecon
