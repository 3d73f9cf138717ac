#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "redustat/stmt_model.hpp"

namespace redustat {

struct ParseOptions {
  // Used when the text is a bare statement list without a method header.
  std::string test_name = "test";
  std::string project;
};

/// Parses a Java-like test method (or a bare method body) into its statement
/// tree. Expressions are opaque token runs; lambda and anonymous-class bodies
/// are part of the enclosing statement. See docs/grammar.md.
///
/// Throws SyntaxError or UnsupportedConstruct.
TestCaseAst parse_test(std::string source, const ParseOptions& options = {});

/// Code tokens of `text` with comments and whitespace dropped.
std::vector<std::string> code_tokens(std::string_view text);

/// Whitespace-insensitive comparison: token-sequence equality.
bool same_tokens(std::string_view a, std::string_view b);

}  // namespace redustat
