#include "structrec/frontend/interchange.hpp"

#include <json.hpp>

#include "structrec/error.hpp"

namespace structrec::frontend {

using nlohmann::json;

namespace {

json node_to_json(const SimplifiedParseTree& t, const VariableAnnotation& vars, std::uint32_t id) {
  const Node& n = t.node(id);
  json j = json::object();
  switch (n.kind) {
    case ElementKind::Keyword:
      j["kind"] = "keyword";
      j["text"] = n.text;
      break;
    case ElementKind::Token: {
      j["kind"] = "token";
      j["text"] = n.text;
      std::uint32_t leaf = t.leaf_index(id);
      VarClass c = leaf < vars.classes.size() ? vars.classes[leaf] : VarClass::NonVariable;
      j["var"] = c == VarClass::Local ? json("local") : c == VarClass::Global ? json("global") : json();
      std::int64_t b = leaf < vars.bindings.size() ? vars.bindings[leaf] : kNoBinding;
      j["binding"] = (c == VarClass::Local && b != kNoBinding) ? json(b) : json();
      break;
    }
    case ElementKind::Tree: {
      j["kind"] = "tree";
      json kids = json::array();
      for (std::uint32_t c : n.children) kids.push_back(node_to_json(t, vars, c));
      j["children"] = std::move(kids);
      break;
    }
  }
  return j;
}

struct Importer {
  SimplifiedParseTree tree;
  std::vector<VarClass> classes;     // per created node id
  std::vector<std::int64_t> bindings;

  std::uint32_t build(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "node must be an object");
    auto kind_it = j.find("kind");
    if (kind_it == j.end() || !kind_it->is_string())
      throw SchemaError(path + ".kind", "missing or not a string");
    const std::string kind = kind_it->get<std::string>();
    if (kind == "tree") {
      if (j.contains("text")) throw SchemaError(path + ".text", "not allowed on a tree node");
      auto ch = j.find("children");
      if (ch == j.end() || !ch->is_array())
        throw SchemaError(path + ".children", "missing or not an array");
      if (ch->empty()) throw SchemaError(path + ".children", "tree must be non-empty");
      // Single-element lists never occur in produced trees: they collapse to
      // their element.
      if (ch->size() == 1) throw SchemaError(path + ".children", "single-element list");
      std::vector<std::uint32_t> ids;
      ids.reserve(ch->size());
      for (std::size_t i = 0; i < ch->size(); ++i)
        ids.push_back(build((*ch)[i], path + ".children[" + std::to_string(i) + "]"));
      return tree.add_list(std::move(ids));
    }
    if (kind != "keyword" && kind != "token")
      throw SchemaError(path + ".kind", "unknown kind '" + kind + "'");
    if (j.contains("children")) throw SchemaError(path + ".children", "only tree nodes have children");
    auto text_it = j.find("text");
    if (text_it == j.end() || !text_it->is_string())
      throw SchemaError(path + ".text", "missing or not a string");
    if (kind == "keyword") {
      if (j.contains("var") && !j["var"].is_null())
        throw SchemaError(path + ".var", "keyword tokens carry no variable class");
      if (j.contains("binding") && !j["binding"].is_null())
        throw SchemaError(path + ".binding", "keyword tokens carry no binding");
      return record(tree.add_token(ElementKind::Keyword, text_it->get<std::string>()),
                    VarClass::NonVariable, kNoBinding);
    }
    VarClass c = VarClass::NonVariable;
    if (auto v = j.find("var"); v != j.end() && !v->is_null()) {
      if (!v->is_string()) throw SchemaError(path + ".var", "must be a string or null");
      const std::string s = v->get<std::string>();
      if (s == "local")
        c = VarClass::Local;
      else if (s == "global")
        c = VarClass::Global;
      else
        throw SchemaError(path + ".var", "unknown variable class '" + s + "'");
    }
    std::int64_t b = kNoBinding;
    if (auto v = j.find("binding"); v != j.end() && !v->is_null()) {
      if (!v->is_number_integer() || v->get<std::int64_t>() < 0)
        throw SchemaError(path + ".binding", "must be a non-negative integer or null");
      if (c != VarClass::Local) throw SchemaError(path + ".binding", "binding on a non-local token");
      b = v->get<std::int64_t>();
    }
    if (c == VarClass::Local && b == kNoBinding)
      throw SchemaError(path + ".binding", "local token without binding");
    return record(tree.add_token(ElementKind::Token, text_it->get<std::string>()), c, b);
  }

  std::uint32_t record(std::uint32_t id, VarClass c, std::int64_t b) {
    if (classes.size() <= id) {
      classes.resize(id + 1, VarClass::NonVariable);
      bindings.resize(id + 1, kNoBinding);
    }
    classes[id] = c;
    bindings[id] = b;
    return id;
  }
};

}  // namespace

std::string export_tree(const SimplifiedParseTree& tree, const VariableAnnotation& vars) {
  if (tree.empty()) return "null";
  return node_to_json(tree, vars, tree.root()).dump();
}

AnnotatedTree import_tree(std::string_view document) {
  json j;
  try {
    j = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("document", e.what());
  }
  AnnotatedTree out;
  if (j.is_null()) {
    out.tree.finalize(kNoNode);
    return out;
  }
  Importer im;
  std::uint32_t root = im.build(j, "root");
  im.tree.finalize(root);
  const auto& leaves = im.tree.leaves();
  out.vars.classes.resize(leaves.size());
  out.vars.bindings.resize(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    out.vars.classes[i] = im.classes[leaves[i]];
    out.vars.bindings[i] = im.bindings[leaves[i]];
  }
  out.tree = std::move(im.tree);
  return out;
}

}  // namespace structrec::frontend
