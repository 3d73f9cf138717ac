#include "redustat/tree_document.hpp"

#include <json.hpp>
#include <map>
#include <vector>

#include "redustat/error.hpp"

namespace redustat {
namespace {

using nlohmann::json;

struct RawNode {
  std::string kind;
  bool has_children = false;
  Span span;
  std::vector<long long> children;
  bool braceless_slot = false;
};

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw SchemaError(path, "expected a string");
  return v.get<std::string>();
}

long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<long long>();
}

std::vector<long long> as_int_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array");
  std::vector<long long> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_int(v[i], path + "/" + std::to_string(i)));
  return out;
}

}  // namespace

TestCaseAst ingest_tree(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("not valid JSON: ") + e.what());
  }

  const std::string test_name = as_string(field(doc, "test_name", ""), "/test_name");
  std::string project;
  if (doc.contains("project")) project = as_string(doc["project"], "/project");
  std::string source = as_string(field(doc, "source", ""), "/source");

  const json& jnodes = field(doc, "nodes", "");
  if (!jnodes.is_array()) throw SchemaError("/nodes", "expected an array");

  std::map<long long, RawNode> raw;
  std::map<long long, std::string> where;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string p = "/nodes/" + std::to_string(i);
    const json& jn = jnodes[i];
    const long long id = as_int(field(jn, "id", p), p + "/id");
    RawNode node;
    node.kind = as_string(field(jn, "kind", p), p + "/kind");
    const json& hc = field(jn, "has_children", p);
    if (!hc.is_boolean()) throw SchemaError(p + "/has_children", "expected a boolean");
    node.has_children = hc.get<bool>();
    const auto span = as_int_list(field(jn, "span", p), p + "/span");
    if (span.size() != 2 || span[0] < 0 || span[1] < span[0] ||
        static_cast<std::size_t>(span[1]) > source.size())
      throw SchemaError(p + "/span", "expected [begin, end] within source");
    node.span = {static_cast<std::size_t>(span[0]), static_cast<std::size_t>(span[1])};
    node.children = as_int_list(field(jn, "children", p), p + "/children");
    if (jn.contains("braceless_slot")) {
      if (!jn["braceless_slot"].is_boolean())
        throw SchemaError(p + "/braceless_slot", "expected a boolean");
      node.braceless_slot = jn["braceless_slot"].get<bool>();
    }
    if (auto known = parse_kind(node.kind)) {
      if ((category_of(*known) == Category::TreeStmt) != node.has_children)
        throw SchemaError(p + "/has_children", "contradicts kind " + node.kind);
    }
    if (!node.has_children && !node.children.empty())
      throw SchemaError(p + "/children", "leaf statement cannot have children");
    if (!raw.emplace(id, std::move(node)).second)
      throw SchemaError(p + "/id", "duplicate id " + std::to_string(id));
    where[id] = p;
  }

  const auto roots = as_int_list(field(doc, "roots", ""), "/roots");

  // Cycle detection over every node, reachable or not.
  std::map<long long, int> color;  // 0 new, 1 on stack, 2 done
  for (const auto& [start, _] : raw) {
    if (color[start] != 0) continue;
    std::vector<std::pair<long long, std::size_t>> stack{{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto& [id, next] = stack.back();
      const auto& children = raw.at(id).children;
      if (next == children.size()) {
        color[id] = 2;
        stack.pop_back();
        continue;
      }
      const long long child = children[next++];
      if (!raw.contains(child))
        throw SchemaError(where[id] + "/children", "unknown id " + std::to_string(child));
      if (color[child] == 1) throw CycleError("child references form a cycle through id " + std::to_string(child));
      if (color[child] == 0) {
        color[child] = 1;
        stack.emplace_back(child, 0);
      }
    }
  }

  // Renumber in pre-order.
  std::map<long long, StmtId> renumber;
  std::vector<long long> order;
  std::vector<long long> stack(roots.rbegin(), roots.rend());
  while (!stack.empty()) {
    const long long id = stack.back();
    stack.pop_back();
    if (!raw.contains(id)) throw SchemaError("/roots", "unknown id " + std::to_string(id));
    if (renumber.contains(id))
      throw SchemaError(where[id], "statement " + std::to_string(id) + " has more than one parent");
    renumber[id] = static_cast<StmtId>(order.size());
    order.push_back(id);
    const auto& ch = raw.at(id).children;
    stack.insert(stack.end(), ch.rbegin(), ch.rend());
  }
  if (order.size() != raw.size()) {
    for (const auto& [id, _] : raw) {
      if (!renumber.contains(id)) throw SchemaError(where[id], "statement not reachable from roots");
    }
  }

  std::vector<StatementNode> nodes;
  nodes.reserve(order.size());
  for (const long long old : order) {
    const RawNode& r = raw.at(old);
    StatementNode node;
    node.id = renumber.at(old);
    node.kind = parse_kind(r.kind).value_or(r.has_children ? StatementKind::Block
                                                           : StatementKind::ExpressionStmt);
    node.span = r.span;
    node.braceless_slot = r.braceless_slot;
    for (long long c : r.children) node.children.push_back(renumber.at(c));
    nodes.push_back(std::move(node));
  }
  std::vector<StmtId> new_roots;
  for (long long r : roots) new_roots.push_back(renumber.at(r));

  return TestCaseAst(test_name, std::move(project), std::move(source), std::move(nodes),
                     std::move(new_roots));
}

std::string to_tree_document(const TestCaseAst& ast) {
  nlohmann::ordered_json doc;
  doc["test_name"] = ast.test_name();
  if (!ast.project().empty()) doc["project"] = ast.project();
  doc["source"] = ast.source();
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : ast.statements()) {
    nlohmann::ordered_json jn;
    jn["id"] = node.id;
    jn["kind"] = std::string(to_string(node.kind));
    jn["has_children"] = node.is_tree();
    jn["span"] = {node.span.begin, node.span.end};
    jn["children"] = node.children;
    if (node.braceless_slot) jn["braceless_slot"] = true;
    doc["nodes"].push_back(std::move(jn));
  }
  doc["roots"] = ast.roots();
  return doc.dump(2) + "\n";
}

}  // namespace redustat
