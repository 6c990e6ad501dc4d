#include "archrecon/source_scanner.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace archrecon {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool is_ident_char(char c) {
  return is_ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

}  // namespace

std::vector<Token> tokenize(std::string_view src, const std::string& file) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  const std::size_t n = src.size();

  auto read_quoted = [&](char quote) {
    const int start_line = line;
    std::string text;
    ++i;
    while (true) {
      if (i >= n || src[i] == '\n') throw ScanError(file, start_line, "unterminated literal");
      const char c = src[i++];
      if (c == quote) break;
      if (c == '\\' && i < n) {
        const char e = src[i++];
        switch (e) {
          case 'n': text += '\n'; break;
          case 't': text += '\t'; break;
          case 'r': text += '\r'; break;
          default: text += e; break;
        }
        continue;
      }
      text += c;
    }
    return text;
  };

  while (i < n) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      const int start_line = line;
      i += 2;
      while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i + 1 >= n) throw ScanError(file, start_line, "unterminated comment");
      i += 2;
      continue;
    }
    if (src.substr(i, 3) == "\"\"\"") {
      const int start_line = line;
      i += 3;
      const std::size_t end = src.find("\"\"\"", i);
      if (end == std::string_view::npos) throw ScanError(file, start_line, "unterminated text block");
      std::string text(src.substr(i, end - i));
      line += static_cast<int>(std::count(text.begin(), text.end(), '\n'));
      if (!text.empty() && text.front() == '\n') text.erase(0, 1);
      out.push_back({Token::Kind::String, std::move(text), start_line});
      i = end + 3;
      continue;
    }
    if (c == '"') {
      out.push_back({Token::Kind::String, read_quoted('"'), line});
      continue;
    }
    if (c == '\'') {
      out.push_back({Token::Kind::Char, read_quoted('\''), line});
      continue;
    }
    if (is_ident_start(c)) {
      const std::size_t start = i;
      while (i < n && is_ident_char(src[i])) ++i;
      out.push_back({Token::Kind::Identifier, std::string(src.substr(start, i - start)), line});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = i;
      while (i < n && (is_ident_char(src[i]) || src[i] == '.')) ++i;
      out.push_back({Token::Kind::Number, std::string(src.substr(start, i - start)), line});
      continue;
    }
    if (src.substr(i, 3) == "...") {
      out.push_back({Token::Kind::Symbol, "...", line});
      i += 3;
      continue;
    }
    out.push_back({Token::Kind::Symbol, std::string(1, c), line});
    ++i;
  }
  return out;
}

const AnnotationArgument* Annotation::argument(std::string_view key) const {
  for (const auto& a : arguments) {
    if (a.key == key) return &a;
  }
  return nullptr;
}

bool ClassSketch::has_annotation(std::string_view name) const { return annotation(name) != nullptr; }

const Annotation* ClassSketch::annotation(std::string_view name) const {
  for (const auto& a : annotations) {
    if (a.name == name) return &a;
  }
  return nullptr;
}

std::vector<std::string> ClassSketch::annotation_names() const {
  std::vector<std::string> out;
  for (const auto& a : annotations) out.push_back(a.name);
  return out;
}

std::string join_type(const std::vector<Token>& tokens) {
  std::string out;
  bool previous_word = false;
  for (const auto& t : tokens) {
    const bool word = t.kind == Token::Kind::Identifier || t.kind == Token::Kind::Number;
    if (word && previous_word) out += ' ';
    if (t.is_symbol("?") && previous_word) out += ' ';
    out += t.text;
    previous_word = word || t.is_symbol("?");
  }
  return out;
}

std::vector<std::string> type_identifiers(std::string_view type_text) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      if (auto dot = current.rfind('.'); dot != std::string::npos) current = current.substr(dot + 1);
      if (!current.empty() && current != "extends" && current != "super") out.push_back(current);
      current.clear();
    }
  };
  for (char c : type_text) {
    if (is_ident_char(c) || c == '.') {
      current += c;
    } else {
      flush();
    }
  }
  flush();
  return out;
}

namespace {

const std::set<std::string, std::less<>> kModifiers = {
    "public", "protected", "private",  "static",   "final",    "abstract", "native",
    "synchronized", "transient", "volatile", "strictfp", "default", "sealed"};

const std::set<std::string, std::less<>> kTypeKeywords = {"class", "interface", "enum", "record"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string file, const LanguageProfile& profile)
      : t_(std::move(tokens)), file_(std::move(file)), profile_(profile) {}

  std::vector<ClassSketch> parse() {
    std::vector<ClassSketch> out;
    std::string package;
    while (!at_end()) {
      if (peek().is_word("package")) {
        ++pos_;
        package = read_dotted_name();
        expect_symbol(";");
        continue;
      }
      if (peek().is_word("import")) {
        skip_past(";");
        continue;
      }
      if (peek().is_symbol(";")) {
        ++pos_;
        continue;
      }
      Modifiers mods = parse_modifiers();
      if (at_end()) fail("dangling annotations or modifiers");
      auto kind = read_type_keyword();
      if (!kind) fail("expected a type declaration, found '" + peek().text + "'");
      out.push_back(parse_type_declaration(*kind, std::move(mods), package));
    }
    return out;
  }

 private:
  struct Modifiers {
    std::vector<Annotation> annotations;
    bool is_static = false;
  };

  bool at_end() const { return pos_ >= t_.size(); }

  const Token& peek(std::size_t ahead = 0) const {
    static const Token eof{Token::Kind::Symbol, "<eof>", 0};
    return pos_ + ahead < t_.size() ? t_[pos_ + ahead] : eof;
  }

  int line() const { return at_end() ? (t_.empty() ? 0 : t_.back().line) : peek().line; }

  [[noreturn]] void fail(const std::string& what) const { throw ScanError(file_, line(), what); }

  void expect_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) fail("expected '" + std::string(s) + "', found '" + peek().text + "'");
    ++pos_;
  }

  std::string expect_identifier() {
    if (peek().kind != Token::Kind::Identifier) fail("expected an identifier, found '" + peek().text + "'");
    return t_[pos_++].text;
  }

  std::string read_dotted_name() {
    std::string name = expect_identifier();
    while (peek().is_symbol(".") && peek(1).kind == Token::Kind::Identifier) {
      pos_ += 2;
      name += "." + t_[pos_ - 1].text;
    }
    return name;
  }

  void skip_past(std::string_view symbol) {
    while (!at_end() && !peek().is_symbol(symbol)) ++pos_;
    if (at_end()) fail("expected '" + std::string(symbol) + "'");
    ++pos_;
  }

  // Positioned on an opening bracket; returns the index one past its match.
  std::size_t matching(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < t_.size(); ++i) {
      const Token& tok = t_[i];
      if (tok.kind != Token::Kind::Symbol) continue;
      if (tok.text == "(" || tok.text == "{" || tok.text == "[") ++depth;
      if (tok.text == ")" || tok.text == "}" || tok.text == "]") {
        if (--depth == 0) return i + 1;
      }
    }
    throw ScanError(file_, t_[open].line, "unbalanced '" + t_[open].text + "'");
  }

  void skip_balanced() { pos_ = matching(pos_); }

  // Skips a `<...>` generic list; positioned on '<'.
  void skip_angles() {
    int depth = 0;
    while (!at_end()) {
      const Token& tok = t_[pos_++];
      if (tok.is_symbol("<")) ++depth;
      if (tok.is_symbol(">") && --depth == 0) return;
      if (tok.is_symbol("{") || tok.is_symbol(";")) fail("unterminated type arguments");
    }
    fail("unterminated type arguments");
  }

  std::optional<TypeKind> read_type_keyword() {
    if (peek().is_symbol("@") && peek(1).is_word("interface")) {
      pos_ += 2;
      return TypeKind::Annotation;
    }
    if (peek().kind != Token::Kind::Identifier) return std::nullopt;
    const std::string& w = peek().text;
    std::optional<TypeKind> kind;
    if (w == "class") kind = TypeKind::Class;
    if (w == "interface") kind = TypeKind::Interface;
    if (w == "enum") kind = TypeKind::Enum;
    // `record` is contextual: only a declaration when a name follows
    if (w == "record" && peek(1).kind == Token::Kind::Identifier) kind = TypeKind::Record;
    if (kind) ++pos_;
    return kind;
  }

  Annotation parse_annotation() {
    expect_symbol("@");
    Annotation a;
    std::string full = read_dotted_name();
    a.name = full.substr(full.rfind('.') == std::string::npos ? 0 : full.rfind('.') + 1);
    if (!peek().is_symbol("(")) return a;
    const std::size_t open = pos_;
    const std::size_t end = matching(open);
    std::vector<Token> current;
    int depth = 0;
    auto flush = [&] {
      if (current.empty()) return;
      AnnotationArgument arg;
      if (current.size() >= 2 && current[0].kind == Token::Kind::Identifier &&
          current[1].is_symbol("=") && !(current.size() > 2 && current[2].is_symbol("="))) {
        arg.key = current[0].text;
        arg.tokens.assign(current.begin() + 2, current.end());
      } else {
        arg.key = "value";
        arg.tokens = current;
      }
      a.arguments.push_back(std::move(arg));
      current.clear();
    };
    for (std::size_t i = open + 1; i + 1 < end; ++i) {
      const Token& tok = t_[i];
      if (tok.is_symbol("(") || tok.is_symbol("{") || tok.is_symbol("[")) ++depth;
      if (tok.is_symbol(")") || tok.is_symbol("}") || tok.is_symbol("]")) --depth;
      if (depth == 0 && tok.is_symbol(",")) {
        flush();
        continue;
      }
      current.push_back(tok);
    }
    flush();
    pos_ = end;
    return a;
  }

  Modifiers parse_modifiers() {
    Modifiers mods;
    while (!at_end()) {
      if (peek().is_symbol("@") && !peek(1).is_word("interface")) {
        mods.annotations.push_back(parse_annotation());
        continue;
      }
      if (peek().kind == Token::Kind::Identifier && kModifiers.contains(peek().text)) {
        if (peek().text == "static") mods.is_static = true;
        ++pos_;
        continue;
      }
      if (peek().is_word("non") && peek(1).is_symbol("-") && peek(2).is_word("sealed")) {
        pos_ += 3;
        continue;
      }
      break;
    }
    return mods;
  }

  // Type text as written, with generics and array dimensions.
  std::string parse_type() {
    const std::size_t start = pos_;
    if (peek().kind != Token::Kind::Identifier) fail("expected a type, found '" + peek().text + "'");
    while (true) {
      expect_identifier();
      if (peek().is_symbol("<")) skip_angles();
      if (peek().is_symbol(".") && peek(1).kind == Token::Kind::Identifier) {
        ++pos_;
        continue;
      }
      break;
    }
    while (peek().is_symbol("[") && peek(1).is_symbol("]")) pos_ += 2;
    if (peek().is_symbol("...")) ++pos_;
    std::vector<Token> slice(t_.begin() + static_cast<std::ptrdiff_t>(start),
                             t_.begin() + static_cast<std::ptrdiff_t>(pos_));
    std::string text = join_type(slice);
    if (text.ends_with("...")) text.replace(text.size() - 3, 3, "[]");
    return text;
  }

  std::vector<ParameterSketch> parse_parameters() {
    expect_symbol("(");
    std::vector<ParameterSketch> params;
    while (!peek().is_symbol(")")) {
      if (at_end()) fail("unterminated parameter list");
      ParameterSketch p;
      p.annotations = parse_modifiers().annotations;
      p.type_name = parse_type();
      // receiver parameter `Foo this`
      if (peek().is_word("this")) {
        ++pos_;
      } else {
        p.name = expect_identifier();
      }
      while (peek().is_symbol("[") && peek(1).is_symbol("]")) {
        pos_ += 2;
        p.type_name += "[]";
      }
      params.push_back(std::move(p));
      if (peek().is_symbol(",")) ++pos_;
      else if (!peek().is_symbol(")")) fail("expected ',' or ')' in parameter list");
    }
    ++pos_;
    return params;
  }

  Field make_field(const std::string& type_text, const std::string& name) const {
    Field f{type_text, name, false};
    if (type_text.ends_with("[]")) {
      f.type_name = type_text.substr(0, type_text.size() - 2);
      f.is_collection = true;
      return f;
    }
    const auto lt = type_text.find('<');
    if (lt != std::string::npos && type_text.back() == '>') {
      std::string outer = type_text.substr(0, lt);
      if (auto dot = outer.rfind('.'); dot != std::string::npos) outer = outer.substr(dot + 1);
      const std::string inner = type_text.substr(lt + 1, type_text.size() - lt - 2);
      if (profile_.is_collection_type(outer) && inner.find(',') == std::string::npos) {
        f.type_name = inner;
        if (f.type_name.starts_with("? extends ")) f.type_name = f.type_name.substr(10);
        f.is_collection = true;
      }
    }
    return f;
  }

  static std::string literal_concat(const std::vector<Token>& init) {
    std::string value;
    for (const auto& tok : init) {
      if (tok.kind == Token::Kind::String) value += tok.text;
      else if (!tok.is_symbol("+")) return {};
    }
    return value;
  }

  void parse_members(ClassSketch& sketch) {
    while (true) {
      if (at_end()) fail("unterminated type body");
      if (peek().is_symbol("}")) {
        ++pos_;
        return;
      }
      if (peek().is_symbol(";")) {
        ++pos_;
        continue;
      }
      Modifiers mods = parse_modifiers();
      if (peek().is_symbol("{")) {
        skip_balanced();
        continue;
      }
      if (auto nested = read_type_keyword()) {
        skip_type_declaration(*nested);
        continue;
      }
      if (peek().is_symbol("<")) skip_angles();
      const int member_line = line();

      if (peek().kind == Token::Kind::Identifier && peek(1).is_symbol("(")) {
        ++pos_;  // constructor
        parse_parameters();
        skip_method_tail();
        continue;
      }

      std::string type = parse_type();
      std::string name = expect_identifier();
      if (peek().is_symbol("(")) {
        MethodSketch m;
        m.name = std::move(name);
        m.return_type = std::move(type);
        m.parameters = parse_parameters();
        m.annotations = std::move(mods.annotations);
        m.line = member_line;
        while (peek().is_symbol("[") && peek(1).is_symbol("]")) {
          pos_ += 2;
          m.return_type += "[]";
        }
        skip_method_tail();
        sketch.methods.push_back(std::move(m));
        continue;
      }

      // one or more field declarators
      while (true) {
        std::string declared = type;
        while (peek().is_symbol("[") && peek(1).is_symbol("]")) {
          pos_ += 2;
          declared += "[]";
        }
        std::vector<Token> init;
        if (peek().is_symbol("=")) {
          ++pos_;
          int depth = 0;
          while (!at_end()) {
            const Token& tok = peek();
            if (depth == 0 && (tok.is_symbol(",") || tok.is_symbol(";"))) break;
            if (tok.is_symbol("(") || tok.is_symbol("{") || tok.is_symbol("[")) ++depth;
            if (tok.is_symbol(")") || tok.is_symbol("}") || tok.is_symbol("]")) --depth;
            init.push_back(tok);
            ++pos_;
          }
        }
        if (mods.is_static) {
          if (declared == "String" && !init.empty()) {
            std::string value = literal_concat(init);
            if (!value.empty() || (init.size() == 1 && init[0].kind == Token::Kind::String)) {
              sketch.string_constants[name] = value;
            }
          }
        } else {
          sketch.fields.push_back(make_field(declared, name));
        }
        if (peek().is_symbol(",")) {
          ++pos_;
          name = expect_identifier();
          continue;
        }
        expect_symbol(";");
        break;
      }
    }
  }

  // After a method or constructor parameter list: throws clause, then a body,
  // `;`, or an annotation default value.
  void skip_method_tail() {
    while (!at_end()) {
      if (peek().is_symbol("{")) {
        skip_balanced();
        return;
      }
      if (peek().is_symbol(";")) {
        ++pos_;
        return;
      }
      if (peek().is_symbol("}")) fail("unexpected '}' after method header");
      if (peek().is_symbol("(") || peek().is_symbol("[")) {
        skip_balanced();
        continue;
      }
      ++pos_;
    }
    fail("unterminated method declaration");
  }

  void skip_type_declaration(TypeKind) {
    while (!at_end() && !peek().is_symbol("{")) {
      if (peek().is_symbol("(")) {
        skip_balanced();
        continue;
      }
      ++pos_;
    }
    if (at_end()) fail("unterminated nested type");
    skip_balanced();
  }

  void collect_invocations_and_clients(std::size_t begin, std::size_t end, ClassSketch& sketch) const {
    for (std::size_t i = begin; i < end; ++i) {
      const Token& tok = t_[i];
      if (tok.kind != Token::Kind::Identifier) continue;

      if (std::find(profile_.client_types.begin(), profile_.client_types.end(), tok.text) !=
              profile_.client_types.end() &&
          i + 2 < end && t_[i + 1].kind == Token::Kind::Identifier &&
          (t_[i + 2].is_symbol(";") || t_[i + 2].is_symbol("=") || t_[i + 2].is_symbol(",") ||
           t_[i + 2].is_symbol(")"))) {
        sketch.client_variables.insert(t_[i + 1].text);
      }

      if (i + 3 < end && t_[i + 1].is_symbol(".") && t_[i + 2].kind == Token::Kind::Identifier &&
          t_[i + 3].is_symbol("(") && profile_.call_marker(t_[i + 2].text) != nullptr) {
        Invocation inv;
        inv.receiver = tok.text;
        inv.method = t_[i + 2].text;
        inv.line = t_[i + 2].line;
        const std::size_t close = matching(i + 3);
        std::vector<Token> current;
        int depth = 0;
        for (std::size_t k = i + 4; k + 1 < close; ++k) {
          const Token& a = t_[k];
          if (a.is_symbol("(") || a.is_symbol("{") || a.is_symbol("[")) ++depth;
          if (a.is_symbol(")") || a.is_symbol("}") || a.is_symbol("]")) --depth;
          if (depth == 0 && a.is_symbol(",")) {
            inv.arguments.push_back(std::move(current));
            current.clear();
            continue;
          }
          current.push_back(a);
        }
        if (!current.empty()) inv.arguments.push_back(std::move(current));
        sketch.invocations.push_back(std::move(inv));
      }
    }
  }

  ClassSketch parse_type_declaration(TypeKind kind, Modifiers mods, const std::string& package) {
    ClassSketch sketch;
    sketch.kind = kind;
    sketch.annotations = std::move(mods.annotations);
    sketch.line = line();
    sketch.simple_name = expect_identifier();
    sketch.qualified_name = package.empty() ? sketch.simple_name : package + "." + sketch.simple_name;
    sketch.file = file_;

    const std::size_t decl_start = pos_;
    if (peek().is_symbol("<")) skip_angles();
    if (kind == TypeKind::Record && peek().is_symbol("(")) {
      for (const auto& component : parse_parameters()) {
        sketch.fields.push_back(make_field(component.type_name, component.name));
      }
    }
    while (!at_end() && !peek().is_symbol("{")) {
      if (peek().is_symbol(";")) fail("expected a type body");
      ++pos_;
    }
    if (at_end()) fail("expected a type body");
    const std::size_t body_end = matching(pos_);
    if (kind == TypeKind::Enum || kind == TypeKind::Annotation) {
      pos_ = body_end;
    } else {
      ++pos_;
      parse_members(sketch);
      if (pos_ != body_end) fail("type body ended unexpectedly");
    }
    collect_invocations_and_clients(decl_start, body_end, sketch);
    return sketch;
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::string file_;
  const LanguageProfile& profile_;
};

bool is_skipped_directory(const fs::path& dir) {
  const std::string name = dir.filename().string();
  return name.empty() || name.front() == '.' || name == "node_modules" || name == "target" ||
         name == "build";
}

bool is_test_source(const fs::path& relative) {
  bool after_src = false;
  for (const auto& part : relative) {
    if (after_src && part == "test") return true;
    after_src = part == "src";
  }
  return false;
}

}  // namespace

std::vector<ClassSketch> scan_source(std::string_view source, const std::string& file,
                                     const LanguageProfile& profile) {
  return Parser(tokenize(source, file), file, profile).parse();
}

ScanResult scan_classes(const fs::path& ms_root, const LanguageProfile& profile) {
  ScanResult result;
  std::vector<fs::path> files;
  std::error_code ec;
  fs::recursive_directory_iterator it(ms_root, fs::directory_options::skip_permission_denied, ec);
  for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (it->is_directory()) {
      if (is_skipped_directory(it->path())) it.disable_recursion_pending();
      continue;
    }
    if (!it->is_regular_file()) continue;
    const std::string ext = it->path().extension().string();
    if (std::find(profile.source_extensions.begin(), profile.source_extensions.end(), ext) ==
        profile.source_extensions.end()) {
      continue;
    }
    if (is_test_source(it->path().lexically_relative(ms_root))) continue;
    files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());

  for (const auto& file : files) {
    const std::string relative = file.lexically_relative(ms_root).generic_string();
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      result.diagnostics.push_back({Diagnostic::Kind::UnparseableSource, relative, "cannot read file"});
      continue;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
      auto sketches = scan_source(ss.str(), relative, profile);
      for (auto& s : sketches) result.sketches.push_back(std::move(s));
    } catch (const ScanError& e) {
      result.diagnostics.push_back({Diagnostic::Kind::UnparseableSource, relative, e.what()});
    }
  }
  return result;
}

}  // namespace archrecon
