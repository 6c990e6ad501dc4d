#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace archrecon {

/// Base for every failure the pipeline reports as fatal.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootNotFound : public Error {
 public:
  explicit RootNotFound(const std::filesystem::path& root)
      : Error("root not found: " + root.string()), root_(root) {}
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
};

class MalformedDocument : public Error {
 public:
  MalformedDocument(const std::filesystem::path& file, const std::string& detail)
      : Error("malformed document " + file.string() + ": " + detail), file_(file) {}
  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
};

class DuplicateVersionLabel : public Error {
 public:
  explicit DuplicateVersionLabel(const std::string& label)
      : Error("duplicate version label: " + label), label_(label) {}
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

class WriteFailure : public Error {
 public:
  explicit WriteFailure(const std::filesystem::path& file)
      : Error("cannot write " + file.string()), file_(file) {}

 private:
  std::filesystem::path file_;
};

class InvalidProfile : public Error {
 public:
  using Error::Error;
};

/// Non-fatal findings. Each one carries the file it concerns.
struct Diagnostic {
  enum class Kind { UnreadableManifest, UnparseableSource, ConflictingMapping, UnmatchedCall };
  Kind kind;
  std::string path;
  std::string message;
};

std::string_view to_string(Diagnostic::Kind kind);

using Diagnostics = std::vector<Diagnostic>;

}  // namespace archrecon
