#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "archrec/ingest/entity.hpp"

namespace archrec {

// A call expression `receiver.method(args)` found in a method or initializer
// body, with the receiver's declared type as written in source.
struct SourceCall {
  std::string caller;         // qualified name of the enclosing class
  std::string caller_package;
  std::string receiver_type;  // simple or dotted type name
  std::string method;
  int arity = 0;
  std::string source_path;
  int line = 0;
};

struct ScannedSource {
  std::vector<CodeEntity> entities;  // ids are not assigned yet
  std::vector<SourceCall> calls;
};

// Lexical scan of one compilation unit: comments, package, type headers,
// public members and call sites. Throws IngestError on unterminated comments,
// strings or unbalanced braces.
ScannedSource scan_java(std::string_view source, const std::string& path);

// Scans every `.java` file under each root (a root may also be a single file).
// Files are processed in sorted path order; entity order follows that order
// and declaration order within a file.
ScannedSource scan_java_tree(const std::vector<std::filesystem::path>& roots);

}  // namespace archrec
