#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "structrec/error.hpp"
#include "structrec/frontend/interchange.hpp"
#include "structrec/frontend/lexer.hpp"
#include "structrec/frontend/parser.hpp"
#include "structrec/frontend/source.hpp"
#include "structrec/frontend/variables.hpp"

using namespace structrec;
using namespace structrec::frontend;

namespace {

SimplifiedParseTree snippet(std::string_view src) {
  auto toks = tokenize(src);
  return parse_snippet(toks);
}

std::string joined_tokens(const SimplifiedParseTree& t) {
  std::string s;
  for (auto id : t.token_sequence()) {
    if (!s.empty()) s += ' ';
    s += t.node(id).text;
  }
  return s;
}

std::string joined_lexemes(std::string_view src) {
  std::string s;
  for (const auto& tok : tokenize(src)) {
    if (!s.empty()) s += ' ';
    s += tok.text;
  }
  return s;
}

bool no_singleton_lists(const SimplifiedParseTree& t) {
  for (std::uint32_t id = 0; id < t.node_count(); ++id) {
    const Node& n = t.node(id);
    if (n.kind == ElementKind::Tree && n.children.size() < 2) return false;
  }
  return true;
}

const char* kChildLoop =
    "if (view instanceof ViewGroup) {\n"
    "  for (int i = 0; i < ((ViewGroup) view).getChildCount(); i++) {\n"
    "    View innerView = ((ViewGroup) view).getChildAt(i);\n"
    "  }\n"
    "}\n";

AnnotatedTree child_loop() {
  AnnotatedTree a;
  a.tree = parse_method_body(tokenize(std::string("{") + kChildLoop + "}"), {"view"});
  a.vars = classify_variables(a.tree);
  return a;
}

}  // namespace

TEST_CASE("tokenize classifies keywords and symbols") {
  auto toks = tokenize("x = 1;");
  REQUIRE(toks.size() == 4);
  CHECK(toks[0].kind == TokenKind::NonKeyword);
  CHECK(toks[0].text == "x");
  CHECK(toks[1].kind == TokenKind::Keyword);
  CHECK(toks[1].text == "=");
  CHECK(toks[2].kind == TokenKind::NonKeyword);
  CHECK(toks[2].text == "1");
  CHECK(toks[3].kind == TokenKind::Keyword);

  auto io = tokenize("view instanceof ViewGroup");
  REQUIRE(io.size() == 3);
  CHECK(io[0].kind == TokenKind::NonKeyword);
  CHECK(io[1].kind == TokenKind::Keyword);
  CHECK(io[1].text == "instanceof");
  CHECK(io[2].kind == TokenKind::NonKeyword);

  CHECK(tokenize("").empty());
}

TEST_CASE("tokenize drops comments and keeps literals whole") {
  auto toks = tokenize("a /* c */ + \"s t\" // tail\n + 'x' + 0x1F + 1.5e3f");
  std::string s;
  for (auto& t : toks) s += t.text + "|";
  CHECK(s == "a|+|\"s t\"|+|'x'|+|0x1F|+|1.5e3f|");
  // Offsets are ordered and non-overlapping.
  for (std::size_t i = 1; i < toks.size(); ++i) CHECK(toks[i - 1].end() <= toks[i].offset);
}

TEST_CASE("tokenize reports position of bad characters") {
  try {
    tokenize("x = #1;");
    FAIL("no error");
  } catch (const LexError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(tokenize("\"open"), LexError);
  CHECK_THROWS_AS(tokenize("/* open"), LexError);
}

TEST_CASE("parse produces the documented shapes") {
  auto t = snippet("x > y.f");
  CHECK(to_debug_string(t) == R"(["x", ">", ["y", ".", "f"]])");
  CHECK(t.label(t.root()) == "#>#");

  auto call = snippet("f()");
  CHECK(to_debug_string(call) == R"x(["f", "(", ")"])x");

  auto block = snippet("{ }");
  CHECK(to_debug_string(block) == R"(["{", "}"])");
  CHECK(block.label(block.root()) == "{}");

  auto one = snippet("x");
  CHECK(one.node(one.root()).kind == ElementKind::Token);
}

TEST_CASE("parse of the instanceof loop") {
  auto a = child_loop();
  const auto& t = a.tree;
  // Body braces wrap the single if statement.
  const Node& body = t.node(t.root());
  REQUIRE(body.children.size() == 3);
  std::uint32_t ifs = body.children[1];
  CHECK(t.label(ifs) == "if##");
  const Node& ifn = t.node(ifs);
  CHECK(t.label(ifn.children[1]) == "(#)");
  CHECK(t.label(ifn.children[2]) == "{#}");

  auto plain = snippet(kChildLoop);
  CHECK(plain.label(plain.root()) == "if##");
}

TEST_CASE("shifts assemble from adjacent angle brackets") {
  auto t = snippet("a >> b");
  CHECK(t.label(t.root()) == "#>>#");
  auto u = snippet("a >>> b");
  CHECK(u.label(u.root()) == "#>>>#");
  auto g = snippet("a > b");
  CHECK(g.label(g.root()) == "#>#");
  auto decl = snippet("Map<String, List<Integer>> m = x >> 2;");
  CHECK(joined_tokens(decl) == "Map < String , List < Integer > > m = x > > 2 ;");
  auto asg = snippet("x >>= 1;");
  CHECK(asg.label(asg.node(asg.root()).children[0]) == "#>>=#");
}

TEST_CASE("statement coverage") {
  const char* srcs[] = {
      "for (int i = 0; i < n; i++) s += i;",
      "for (String s : names) print(s);",
      "while (x) { x = next(); }",
      "do { i--; } while (i > 0);",
      "try { a(); } catch (IOException | RuntimeException e) { b(e); } finally { c(); }",
      "synchronized (lock) { n++; }",
      "throw new IllegalStateException(\"bad\");",
      "int[] a = new int[] {1, 2, 3};",
      "int[][] b = new int[3][];",
      "Object o = flag ? a : (Object) b;",
      "if (a) return; else if (b) break; else continue;",
      "x = y = z;",
      "list.add(new Runnable() { @Override public void run() { go(); } });",
      "String c = String.class.getName();",
      "final int k = -a + ~b * !c;",
      "return;",
      ";",
  };
  for (const char* s : srcs) {
    CAPTURE(s);
    SimplifiedParseTree t;
    REQUIRE_NOTHROW(t = snippet(s));
    CHECK(no_singleton_lists(t));
    CHECK(joined_tokens(t) == joined_lexemes(s));
  }
  auto fc = snippet("for (int i = 0; i < n; i++) s += i;");
  CHECK(fc.label(fc.node(fc.root()).children[2]) == "#;#;#");
  auto ef = snippet("for (String s : names) print(s);");
  CHECK(ef.label(ef.node(ef.root()).children[2]) == "##:#");
  auto cast = snippet("(ViewGroup) view");
  CHECK(cast.label(cast.root()) == "(#)#");
}

TEST_CASE("parse errors carry position and expected set") {
  try {
    snippet("if (x { y(); }");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(snippet("x = ;"), ParseError);
  CHECK_THROWS_AS(parse_method_body(tokenize("{ x = 1; ")), ParseError);
}

TEST_CASE("snippets may leave try and do blocks unfinished") {
  auto t = snippet("try { a(); }");
  CHECK(t.label(t.root()) == "try#");
  auto d = snippet("if (x) { do { a(); } } b();");
  CHECK(to_debug_string(d).find("do") != std::string::npos);
  CHECK_THROWS_AS(parse_method_body(tokenize("{ try { a(); } }")), ParseError);
  CHECK_THROWS_AS(parse_method_body(tokenize("{ do { a(); } }")), ParseError);
  CHECK_THROWS_AS(parse_method_declaration(tokenize("void f() { try { a(); } }")), ParseError);
}

TEST_CASE("method declarations") {
  auto pm = parse_method_declaration(
      tokenize("@Override public static <T> List<T> f(final int a, String... b) throws E { return g(a, b); }"));
  CHECK(pm.name == "f");
  CHECK(pm.params == std::vector<std::string>{"a", "b"});
  CHECK(pm.body.label(pm.body.root()) == "{#}");
  auto vars = classify_variables(pm.body);
  // g, a, b
  CHECK(vars.classes[0] == VarClass::NonVariable);
  CHECK(vars.classes[1] == VarClass::Local);
  CHECK(vars.classes[2] == VarClass::Local);
  CHECK(vars.bindings[1] != vars.bindings[2]);

  auto ctor = parse_method_declaration(tokenize("Foo(int x) { this.x = x; }"));
  CHECK(ctor.name == "Foo");
}

TEST_CASE("classify_variables") {
  SUBCASE("single declaration") {
    auto t = snippet("int i = 0; i++;");
    auto v = classify_variables(t);
    // i, 0, i
    REQUIRE(v.classes.size() == 3);
    CHECK(v.classes[0] == VarClass::Local);
    CHECK(v.classes[1] == VarClass::NonVariable);
    CHECK(v.classes[2] == VarClass::Local);
    CHECK(v.bindings[0] == v.bindings[2]);
  }
  SUBCASE("call on undeclared receiver") {
    auto t = snippet("x.foo()");
    auto v = classify_variables(t);
    CHECK(v.classes[0] == VarClass::Global);
    CHECK(v.classes[1] == VarClass::NonVariable);
  }
  SUBCASE("instanceof loop") {
    auto a = child_loop();
    std::set<std::string> locals, others;
    const auto& leaves = a.tree.leaves();
    for (std::size_t i = 0; i < leaves.size(); ++i)
      (a.vars.is_local(i) ? locals : others).insert(a.tree.node(leaves[i]).text);
    CHECK(locals == std::set<std::string>{"view", "i", "innerView"});
    for (const char* g : {"ViewGroup", "View", "getChildCount", "getChildAt"})
      CHECK(others.count(g) == 1);
  }
  SUBCASE("scopes end with their block") {
    auto t = snippet("{ int a = 1; } a = 2;");
    auto v = classify_variables(t);
    CHECK(v.classes[0] == VarClass::Local);
    CHECK(v.classes[2] == VarClass::Global);
  }
  SUBCASE("shadowing gets a fresh binding") {
    auto t = parse_method_body(tokenize("{ a(x); { int x = 2; b(x); } c(x); }"), {"x"});
    auto v = classify_variables(t);
    // a x x 2 b x c x
    CHECK(v.bindings[1] == v.bindings[7]);
    CHECK(v.bindings[2] == v.bindings[5]);
    CHECK(v.bindings[1] != v.bindings[2]);
  }
  SUBCASE("use chains are ordered") {
    auto t = snippet("int i = 0; i++; f(i);");
    auto v = classify_variables(t);
    auto c = use_chains(v);
    // i 0 i f i
    CHECK(c.prev[0] == kNoNode);
    CHECK(c.next[0] == 2);
    CHECK(c.prev[2] == 0);
    CHECK(c.next[2] == 4);
    CHECK(c.next[4] == kNoNode);
  }
}

TEST_CASE("label stability under renaming") {
  auto a = snippet("int a = foo(b, 1); a.bar(\"s\");");
  auto b = snippet("int zz = qux(yy, 9); zz.baz(\"t\");");
  REQUIRE(a.node_count() == b.node_count());
  for (std::uint32_t id = 0; id < a.node_count(); ++id)
    if (a.node(id).kind == ElementKind::Tree) CHECK(a.label(id) == b.label(id));
}

TEST_CASE("interchange round trip and schema errors") {
  auto t = snippet("x > y.f");
  auto v = classify_variables(t);
  std::string doc = export_tree(t, v);
  auto back = import_tree(doc);
  CHECK(to_debug_string(back.tree) == to_debug_string(t));
  CHECK(back.vars == v);
  CHECK(export_tree(back.tree, back.vars) == doc);

  auto f = child_loop();
  std::string fd = export_tree(f.tree, f.vars);
  auto fb = import_tree(fd);
  CHECK(fb.vars == f.vars);
  CHECK(export_tree(fb.tree, fb.vars) == fd);

  auto expect_field = [](const std::string& d, const std::string& field) {
    try {
      import_tree(d);
      FAIL("accepted: " << d);
    } catch (const SchemaError& e) {
      CHECK(e.field().find(field) != std::string::npos);
    }
  };
  expect_field(R"({"kind":"tree","children":[{"kind":"tree","children":[{"kind":"token","text":"a"},{"kind":"keyword","text":"+"}]}]})",
               "children");
  expect_field(R"({"kind":"leaf","text":"a"})", "kind");
  expect_field(R"({"kind":"tree","children":[]})", "children");
  expect_field(R"({"kind":"token"})", "text");
  expect_field(R"({"kind":"token","text":"a","var":"global","binding":3})", "binding");
  expect_field(R"({"kind":"token","text":"a","var":"local","binding":null})", "binding");
  expect_field("[1,", "document");

  auto empty = import_tree("null");
  CHECK(empty.tree.empty());
}

TEST_CASE("extract methods from a file") {
  const char* file =
      "package p;\n"
      "import java.util.List;\n"
      "/** doc */\n"
      "public class A extends B implements C {\n"
      "  private int n = 3;\n"
      "  static { init(); }\n"
      "  Runnable r = new Runnable() { public void run() {} };\n"
      "  public A(int n) { this.n = n; }\n"
      "  @Override\n"
      "  public <T> List<T> get(int i) throws E { return items(i); }\n"
      "  abstract void none();\n"
      "  static class Inner { void deep() { x(); } }\n"
      "  enum E { X, Y; int v() { return 1; } }\n"
      "}\n";
  auto spans = extract_methods(file);
  std::vector<std::string> names;
  for (auto& s : spans) names.push_back(s.name);
  CHECK(names == std::vector<std::string>{"A", "get", "deep", "v"});
  std::string f(file);
  CHECK(f.substr(spans[1].offset, spans[1].length) ==
        "@Override\n  public <T> List<T> get(int i) throws E { return items(i); }");

  std::size_t failures = 0;
  auto ms = methods_from_file(file, "proj", "A.java", &failures);
  CHECK(failures == 0);
  REQUIRE(ms.size() == 4);
  CHECK(ms[1].body() == "{ return items(i); }");
  auto loaded = load_method(ms[1]);
  CHECK(loaded.vars.classes[1] == VarClass::Local);
}

TEST_CASE("content hash normalizes whitespace only") {
  CHECK(normalize_whitespace("  a \n\t b  ") == "a b");
  CHECK(content_hash("{ x = 1; }") == content_hash("{  x =\n 1; }"));
  CHECK(content_hash("{ x = 1; }") != content_hash("{ y = 1; }"));
}

TEST_CASE("random expression round trip") {
  std::mt19937 rng(7);
  const char* atoms[] = {"a", "b", "1", "f(x)", "o.m()", "arr[i]", "(T) v", "\"s\""};
  const char* ops[] = {"+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=", "&&", "||",
                       "&", "|", "^", "<<", ">>", ">>>", "instanceof T"};
  for (int iter = 0; iter < 300; ++iter) {
    std::string e = atoms[rng() % 8];
    int n = 1 + rng() % 6;
    for (int k = 0; k < n; ++k) {
      std::string op = ops[rng() % 20];
      if (op == "instanceof T")
        e = "(" + e + " instanceof T)";
      else
        e += " " + op + " " + atoms[rng() % 8];
    }
    std::string stmt = "r = " + e + ";";
    CAPTURE(stmt);
    SimplifiedParseTree t;
    REQUIRE_NOTHROW(t = snippet(stmt));
    CHECK(no_singleton_lists(t));
    CHECK(joined_tokens(t) == joined_lexemes(stmt));
  }
}
