#pragma once

#include <string>
#include <string_view>

#include "redustat/stmt_model.hpp"

namespace redustat {

/// Builds a TestCaseAst from a serialized parse tree produced by an external
/// parser:
///
///   {"test_name": str, "project": str (optional), "source": str,
///    "nodes": [{"id": int, "kind": str, "has_children": bool,
///               "span": [begin, end], "children": [int],
///               "braceless_slot": bool (optional)}],
///    "roots": [int]}
///
/// Node ids may be arbitrary distinct integers; they are renumbered in
/// depth-first pre-order. Kinds outside StatementKind become Block when
/// has_children is true and ExpressionStmt otherwise.
///
/// Throws SchemaError (with a JSON-pointer-style path) or CycleError.
TestCaseAst ingest_tree(std::string_view document);

/// Canonical document for `ast`: fixed key order, pre-order ids, two-space
/// indentation, trailing newline. Re-ingesting it yields the same tree.
std::string to_tree_document(const TestCaseAst& ast);

}  // namespace redustat
