#include "structrec/frontend/parser.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <unordered_set>
#include <utility>

#include "structrec/error.hpp"

namespace structrec::frontend {

namespace {

bool is_primitive(std::string_view t) {
  static const std::unordered_set<std::string_view> kPrims = {
      "boolean", "byte", "char", "short", "int", "long", "float", "double"};
  return kPrims.count(t) > 0;
}

bool is_modifier(std::string_view t) {
  static const std::unordered_set<std::string_view> kMods = {
      "public",   "private", "protected",    "static",   "final",   "abstract",
      "synchronized", "native", "strictfp", "transient", "volatile", "default"};
  return kMods.count(t) > 0;
}

std::string describe(const Token* t) {
  if (!t) return "end of input";
  return "'" + t->text + "'";
}

class Parser {
 public:
  // Snippets are unfinished code: a try block may still lack its handlers.
  explicit Parser(std::span<const Token> toks, bool snippet = false) : toks_(toks), snippet_(snippet) {
    scope_parent_.push_back(0);
  }

  // --- entry points -------------------------------------------------------

  SimplifiedParseTree body(std::vector<std::string> params) {
    tree_.outer_locals = std::move(params);
    push_scope();
    std::uint32_t root = block();
    pop_scope();
    expect_end();
    return finish(root);
  }

  SimplifiedParseTree statements() {
    std::vector<std::uint32_t> stmts;
    while (!done()) stmts.push_back(statement());
    if (stmts.empty()) return finish(kNoNode);
    return finish(tree_.add_list(std::move(stmts)));
  }

  SimplifiedParseTree lone_expression() {
    if (done()) fail({"expression"});
    std::uint32_t e = expression();
    expect_end();
    return finish(e);
  }

  ParsedMethod method_declaration() {
    ParsedMethod out;
    while (at_annotation() || (peek() && peek()->is_keyword() && is_modifier(peek()->text))) {
      if (at_annotation())
        annotation();
      else
        take();
    }
    if (at("<")) type_parameters();
    bool ctor = at_ident() && at("(", 1);
    if (!ctor) {
      if (at("void"))
        take();
      else
        type();
    }
    if (!at_ident()) fail({"method name"});
    out.name = peek()->text;
    take();
    expect("(");
    while (!at(")")) {
      while (at("final") || at_annotation()) {
        if (at_annotation())
          annotation();
        else
          take();
      }
      type();
      if (at("...")) take();
      if (!at_ident()) fail({"parameter name"});
      out.params.push_back(peek()->text);
      take();
      while (at("[") && at("]", 1)) {
        take();
        take();
      }
      if (!at(",")) break;
      take();
    }
    expect(")");
    while (at("[") && at("]", 1)) {
      take();
      take();
    }
    if (at("throws")) {
      take();
      type();
      while (at(",")) {
        take();
        type();
      }
    }
    if (!at("{")) fail({"{"});
    out.body_offset = peek()->offset;
    // The header nodes built above stay unreachable from the body root.
    tree_.outer_locals = out.params;
    push_scope();
    std::uint32_t root = block();
    pop_scope();
    expect_end();
    out.body = finish(root);
    return out;
  }

 private:
  // --- token access -------------------------------------------------------

  const Token* peek(std::size_t k = 0) const {
    return pos_ + k < toks_.size() ? &toks_[pos_ + k] : nullptr;
  }
  bool done() const { return pos_ >= toks_.size(); }
  bool at(std::string_view kw, std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->is(kw);
  }
  bool at_ident(std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && t->lexeme == Lexeme::Identifier;
  }
  bool at_literal(std::size_t k = 0) const {
    const Token* t = peek(k);
    return t && (t->lexeme == Lexeme::Number || t->lexeme == Lexeme::String ||
                 t->lexeme == Lexeme::Char || t->lexeme == Lexeme::Constant);
  }
  bool at_annotation() const { return at("@") && !at("interface", 1); }
  bool adjacent(std::size_t k) const {
    const Token* a = peek(k);
    const Token* b = peek(k + 1);
    return a && b && a->end() == b->offset;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token* t = peek();
    std::size_t off = t ? t->offset : (toks_.empty() ? 0 : toks_.back().end());
    std::string msg = "expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += " or ";
      msg += expected[i];
    }
    msg += ", found " + describe(t);
    throw ParseError(msg, off, std::move(expected));
  }

  void expect_end() const {
    if (!done()) fail({"end of input"});
  }

  // Consumes the current token as a tree element.
  std::uint32_t take(LeafRole role = LeafRole::Use) {
    const Token& t = toks_[pos_++];
    if (t.is_keyword()) return tree_.add_token(ElementKind::Keyword, t.text, t.offset, t.length);
    std::uint32_t id = tree_.add_token(ElementKind::Token, t.text, t.offset, t.length);
    if (t.lexeme != Lexeme::Identifier) role = LeafRole::Literal;
    set_role(id, role);
    return id;
  }

  std::uint32_t expect(std::string_view kw) {
    if (!at(kw)) fail({"'" + std::string(kw) + "'"});
    return take();
  }

  std::uint32_t ident(LeafRole role) {
    if (!at_ident()) fail({"identifier"});
    return take(role);
  }

  void set_role(std::uint32_t id, LeafRole role) {
    if (node_role_.size() <= id) {
      node_role_.resize(id + 1, LeafRole::Use);
      node_scope_.resize(id + 1, 0);
    }
    node_role_[id] = role;
    node_scope_[id] = scope_;
  }

  void push_scope() {
    scope_parent_.push_back(scope_);
    scope_ = static_cast<std::uint32_t>(scope_parent_.size() - 1);
  }
  void pop_scope() { scope_ = scope_parent_[scope_]; }

  SimplifiedParseTree finish(std::uint32_t root) {
    tree_.finalize(root);
    const auto& leaves = tree_.leaves();
    tree_.roles.resize(leaves.size());
    tree_.scopes.resize(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      std::uint32_t id = leaves[i];
      tree_.roles[i] = id < node_role_.size() ? node_role_[id] : LeafRole::Use;
      tree_.scopes[i] = id < node_scope_.size() ? node_scope_[id] : 0;
    }
    tree_.scope_parent = scope_parent_;
    return std::move(tree_);
  }

  // --- lookahead scanners (no tree building) -----------------------------

  bool scan_type_args(std::size_t& p) const {
    auto is = [&](std::string_view kw) { return p < toks_.size() && toks_[p].is(kw); };
    if (!is("<")) return false;
    ++p;
    if (is(">")) {
      ++p;
      return true;
    }
    while (true) {
      if (is("?")) {
        ++p;
        if (is("extends") || is("super")) {
          ++p;
          if (!scan_type(p)) return false;
        }
      } else if (!scan_type(p)) {
        return false;
      }
      if (is(",")) {
        ++p;
        continue;
      }
      if (is(">")) {
        ++p;
        return true;
      }
      return false;
    }
  }

  bool scan_type(std::size_t& p) const {
    auto is = [&](std::string_view kw) { return p < toks_.size() && toks_[p].is(kw); };
    auto ident_at = [&] { return p < toks_.size() && toks_[p].lexeme == Lexeme::Identifier; };
    if (p < toks_.size() && toks_[p].is_keyword() && is_primitive(toks_[p].text)) {
      ++p;
    } else if (ident_at()) {
      ++p;
      if (is("<") && !scan_type_args(p)) return false;
      while (is(".") && p + 1 < toks_.size() && toks_[p + 1].lexeme == Lexeme::Identifier) {
        p += 2;
        if (is("<") && !scan_type_args(p)) return false;
      }
    } else {
      return false;
    }
    while (is("[") && p + 1 < toks_.size() && toks_[p + 1].is("]")) p += 2;
    return true;
  }

  bool at_declaration() const {
    std::size_t p = pos_;
    while (p < toks_.size() && toks_[p].is("final")) ++p;
    if (!scan_type(p)) return false;
    if (p >= toks_.size() || toks_[p].lexeme != Lexeme::Identifier) return false;
    ++p;
    if (p >= toks_.size()) return false;
    const Token& t = toks_[p];
    return t.is("=") || t.is(";") || t.is(",") || t.is("[") || t.is(":");
  }

  bool at_cast() const {
    if (!at("(")) return false;
    std::size_t p = pos_ + 1;
    if (p >= toks_.size()) return false;
    bool prim = toks_[p].is_keyword() && is_primitive(toks_[p].text);
    if (!scan_type(p)) return false;
    if (p >= toks_.size() || !toks_[p].is(")")) return false;
    if (prim) return true;
    ++p;
    if (p >= toks_.size()) return false;
    const Token& t = toks_[p];
    if (t.kind == TokenKind::NonKeyword) return true;
    static const std::array<std::string_view, 6> kStarters = {"(", "!", "~", "this", "super", "new"};
    for (auto s : kStarters)
      if (t.is(s)) return true;
    return false;
  }

  // --- types --------------------------------------------------------------

  std::uint32_t type_arguments() {
    std::vector<std::uint32_t> e{expect("<")};
    if (at(">")) {
      e.push_back(take());
      return tree_.add_list(std::move(e));
    }
    while (true) {
      if (at("?")) {
        std::vector<std::uint32_t> w{take()};
        if (at("extends") || at("super")) {
          w.push_back(take());
          w.push_back(type());
        }
        e.push_back(tree_.add_list(std::move(w)));
      } else {
        e.push_back(type());
      }
      if (at(",")) {
        e.push_back(take());
        continue;
      }
      e.push_back(expect(">"));
      return tree_.add_list(std::move(e));
    }
  }

  std::uint32_t class_type() {
    std::vector<std::uint32_t> e{ident(LeafRole::Type)};
    if (at("<")) e.push_back(type_arguments());
    while (at(".") && at_ident(1)) {
      e.push_back(take());
      e.push_back(ident(LeafRole::Type));
      if (at("<")) e.push_back(type_arguments());
    }
    return tree_.add_list(std::move(e));
  }

  std::uint32_t type() {
    std::vector<std::uint32_t> e;
    if (peek() && peek()->is_keyword() && is_primitive(peek()->text))
      e.push_back(take());
    else if (at_ident())
      e.push_back(class_type());
    else
      fail({"type"});
    while (at("[") && at("]", 1)) {
      e.push_back(take());
      e.push_back(take());
    }
    return tree_.add_list(std::move(e));
  }

  void type_parameters() {
    expect("<");
    while (!at(">")) {
      ident(LeafRole::Type);
      if (at("extends")) {
        take();
        type();
        while (at("&")) {
          take();
          type();
        }
      }
      if (!at(",")) break;
      take();
    }
    expect(">");
  }

  std::uint32_t annotation() {
    std::vector<std::uint32_t> e{expect("@")};
    e.push_back(ident(LeafRole::Type));
    while (at(".") && at_ident(1)) {
      e.push_back(take());
      e.push_back(ident(LeafRole::Type));
    }
    if (at("(")) {
      e.push_back(take());
      if (!at(")")) e.push_back(expression());
      e.push_back(expect(")"));
    }
    return tree_.add_list(std::move(e));
  }

  // --- statements ---------------------------------------------------------

  std::uint32_t block() {
    std::vector<std::uint32_t> e{expect("{")};
    push_scope();
    while (!at("}")) {
      if (done()) fail({"'}'"});
      e.push_back(statement());
    }
    pop_scope();
    e.push_back(take());
    return tree_.add_list(std::move(e));
  }

  std::uint32_t par_expression() {
    std::vector<std::uint32_t> e{expect("(")};
    e.push_back(expression());
    e.push_back(expect(")"));
    return tree_.add_list(std::move(e));
  }

  std::uint32_t statement() {
    const Token* t = peek();
    if (!t) fail({"statement"});
    if (t->is("{")) return block();
    if (t->is(";")) return take();
    if (t->is("if")) {
      std::vector<std::uint32_t> e{take()};
      e.push_back(par_expression());
      e.push_back(statement());
      if (at("else")) {
        e.push_back(take());
        e.push_back(statement());
      }
      return tree_.add_list(std::move(e));
    }
    if (t->is("while")) {
      std::vector<std::uint32_t> e{take()};
      e.push_back(par_expression());
      e.push_back(statement());
      return tree_.add_list(std::move(e));
    }
    if (t->is("do")) {
      std::vector<std::uint32_t> e{take()};
      e.push_back(statement());
      if (snippet_ && !at("while")) return tree_.add_list(std::move(e));
      e.push_back(expect("while"));
      e.push_back(par_expression());
      e.push_back(expect(";"));
      return tree_.add_list(std::move(e));
    }
    if (t->is("for")) return for_statement();
    if (t->is("try")) return try_statement();
    if (t->is("synchronized")) {
      std::vector<std::uint32_t> e{take()};
      e.push_back(par_expression());
      e.push_back(block());
      return tree_.add_list(std::move(e));
    }
    if (t->is("return")) {
      std::vector<std::uint32_t> e{take()};
      if (!at(";")) e.push_back(expression());
      e.push_back(expect(";"));
      return tree_.add_list(std::move(e));
    }
    if (t->is("throw")) {
      std::vector<std::uint32_t> e{take()};
      e.push_back(expression());
      e.push_back(expect(";"));
      return tree_.add_list(std::move(e));
    }
    if (t->is("break") || t->is("continue")) {
      std::vector<std::uint32_t> e{take()};
      if (at_ident()) e.push_back(take(LeafRole::Member));
      e.push_back(expect(";"));
      return tree_.add_list(std::move(e));
    }
    if (at_declaration()) {
      std::vector<std::uint32_t> e{local_declaration()};
      e.push_back(expect(";"));
      return tree_.add_list(std::move(e));
    }
    std::vector<std::uint32_t> e{expression()};
    e.push_back(expect(";"));
    return tree_.add_list(std::move(e));
  }

  std::uint32_t local_declaration() {
    std::vector<std::uint32_t> e;
    while (at("final")) e.push_back(take());
    e.push_back(type());
    std::vector<std::uint32_t> decls{declarator()};
    while (at(",")) {
      decls.push_back(take());
      decls.push_back(declarator());
    }
    e.push_back(tree_.add_list(std::move(decls)));
    return tree_.add_list(std::move(e));
  }

  std::uint32_t declarator(LeafRole role = LeafRole::Declaration) {
    std::vector<std::uint32_t> e{ident(role)};
    while (at("[") && at("]", 1)) {
      e.push_back(take());
      e.push_back(take());
    }
    if (at("=")) {
      e.push_back(take());
      e.push_back(at("{") ? array_initializer() : expression());
    }
    return tree_.add_list(std::move(e));
  }

  std::uint32_t array_initializer() {
    std::vector<std::uint32_t> e{expect("{")};
    std::vector<std::uint32_t> items;
    while (!at("}")) {
      items.push_back(at("{") ? array_initializer() : expression());
      if (!at(",")) break;
      items.push_back(take());
    }
    if (!items.empty()) e.push_back(tree_.add_list(std::move(items)));
    e.push_back(expect("}"));
    return tree_.add_list(std::move(e));
  }

  std::uint32_t expression_list() {
    std::vector<std::uint32_t> e{expression()};
    while (at(",")) {
      e.push_back(take());
      e.push_back(expression());
    }
    return tree_.add_list(std::move(e));
  }

  std::uint32_t for_statement() {
    std::vector<std::uint32_t> e{take()};
    e.push_back(expect("("));
    push_scope();
    std::vector<std::uint32_t> control;
    std::size_t save = pos_;
    bool enhanced = false;
    if (at_declaration()) {
      // Enhanced form: [final] Type name ':' expr
      std::size_t p = pos_;
      while (p < toks_.size() && toks_[p].is("final")) ++p;
      scan_type(p);
      enhanced = p + 1 < toks_.size() && toks_[p + 1].is(":");
    }
    pos_ = save;
    if (enhanced) {
      while (at("final")) control.push_back(take());
      control.push_back(type());
      control.push_back(ident(LeafRole::Declaration));
      control.push_back(expect(":"));
      control.push_back(expression());
    } else {
      if (!at(";")) control.push_back(at_declaration() ? local_declaration() : expression_list());
      control.push_back(expect(";"));
      if (!at(";")) control.push_back(expression());
      control.push_back(expect(";"));
      if (!at(")")) control.push_back(expression_list());
    }
    e.push_back(tree_.add_list(std::move(control)));
    e.push_back(expect(")"));
    e.push_back(statement());
    pop_scope();
    return tree_.add_list(std::move(e));
  }

  std::uint32_t try_statement() {
    std::vector<std::uint32_t> e{take()};
    e.push_back(block());
    bool handled = false;
    while (at("catch")) {
      handled = true;
      std::vector<std::uint32_t> c{take()};
      c.push_back(expect("("));
      push_scope();
      while (at("final")) c.push_back(take());
      std::vector<std::uint32_t> types{type()};
      while (at("|")) {
        types.push_back(take());
        types.push_back(type());
      }
      c.push_back(tree_.add_list(std::move(types)));
      c.push_back(ident(LeafRole::Declaration));
      c.push_back(expect(")"));
      c.push_back(block());
      pop_scope();
      e.push_back(tree_.add_list(std::move(c)));
    }
    if (at("finally")) {
      handled = true;
      std::vector<std::uint32_t> f{take()};
      f.push_back(block());
      e.push_back(tree_.add_list(std::move(f)));
    }
    if (!handled && !snippet_) fail({"'catch'", "'finally'"});
    return tree_.add_list(std::move(e));
  }

  // --- expressions --------------------------------------------------------

  std::uint32_t expression() { return assignment(); }

  // Number of tokens forming an assignment operator at the cursor.
  std::size_t assignment_op() const {
    static const std::array<std::string_view, 10> kOps = {
        "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<="};
    const Token* t = peek();
    if (!t || !t->is_keyword()) return 0;
    if (t->is(">")) {
      if (at(">=", 1) && adjacent(0)) return 2;  // >>=
      if (at(">", 1) && at(">=", 2) && adjacent(0) && adjacent(1)) return 3;  // >>>=
      return 0;
    }
    for (auto op : kOps)
      if (t->text == op) return 1;
    return 0;
  }

  std::uint32_t assignment() {
    std::uint32_t lhs = conditional();
    std::size_t n = assignment_op();
    if (n == 0) return lhs;
    std::vector<std::uint32_t> e{lhs};
    for (std::size_t i = 0; i < n; ++i) e.push_back(take());
    e.push_back(at("{") ? array_initializer() : assignment());
    return tree_.add_list(std::move(e));
  }

  std::uint32_t conditional() {
    std::uint32_t c = binary(0);
    if (!at("?")) return c;
    std::vector<std::uint32_t> e{c, take()};
    e.push_back(expression());
    e.push_back(expect(":"));
    e.push_back(conditional());
    return tree_.add_list(std::move(e));
  }

  static constexpr int kBinaryLevels = 10;

  // Token count of a binary operator belonging to `level`, else 0.
  std::size_t binary_op(int level) const {
    const Token* t = peek();
    if (!t || !t->is_keyword()) return 0;
    auto one_of = [&](std::initializer_list<std::string_view> ops) {
      for (auto op : ops)
        if (t->text == op) return true;
      return false;
    };
    switch (level) {
      case 0: return one_of({"||"}) ? 1 : 0;
      case 1: return one_of({"&&"}) ? 1 : 0;
      case 2: return one_of({"|"}) ? 1 : 0;
      case 3: return one_of({"^"}) ? 1 : 0;
      case 4: return one_of({"&"}) ? 1 : 0;
      case 5: return one_of({"==", "!="}) ? 1 : 0;
      case 6:
        if (t->is(">")) {
          if ((at(">", 1) || at(">=", 1)) && adjacent(0)) return 0;
          return 1;
        }
        return one_of({"<", "<=", ">=", "instanceof"}) ? 1 : 0;
      case 7:
        if (t->is("<<")) return 1;
        if (t->is(">") && at(">", 1) && adjacent(0)) {
          if (at(">", 2) && adjacent(1)) return 3;
          if (at(">=", 2) && adjacent(1)) return 0;
          return 2;
        }
        return 0;
      case 8: return one_of({"+", "-"}) ? 1 : 0;
      case 9: return one_of({"*", "/", "%"}) ? 1 : 0;
      default: return 0;
    }
  }

  std::uint32_t binary(int level) {
    if (level == kBinaryLevels) return unary();
    std::uint32_t lhs = binary(level + 1);
    while (std::size_t n = binary_op(level)) {
      std::vector<std::uint32_t> e{lhs};
      bool is_instanceof = at("instanceof");
      for (std::size_t i = 0; i < n; ++i) e.push_back(take());
      e.push_back(is_instanceof ? type() : binary(level + 1));
      lhs = tree_.add_list(std::move(e));
    }
    return lhs;
  }

  std::uint32_t unary() {
    const Token* t = peek();
    if (!t) fail({"expression"});
    if (t->is("+") || t->is("-") || t->is("++") || t->is("--") || t->is("!") || t->is("~")) {
      std::vector<std::uint32_t> e{take()};
      e.push_back(unary());
      return tree_.add_list(std::move(e));
    }
    if (at_cast()) {
      std::vector<std::uint32_t> e{take()};
      e.push_back(type());
      e.push_back(expect(")"));
      e.push_back(unary());
      return tree_.add_list(std::move(e));
    }
    return postfix(primary());
  }

  std::uint32_t arguments_call(std::uint32_t callee) {
    std::vector<std::uint32_t> e{callee, expect("(")};
    if (!at(")")) e.push_back(expression_list());
    e.push_back(expect(")"));
    return tree_.add_list(std::move(e));
  }

  std::uint32_t primary() {
    const Token* t = peek();
    if (!t) fail({"expression"});
    if (at_literal()) return take(LeafRole::Literal);
    if (t->is("this") || t->is("super")) {
      std::uint32_t kw = take();
      if (at("(")) return arguments_call(kw);
      return kw;
    }
    if (at_ident()) {
      if (at("(", 1)) return arguments_call(take(LeafRole::Member));
      return take(LeafRole::Use);
    }
    if (t->is("(")) return par_expression();
    if (t->is("new")) return creator();
    if (t->is_keyword() && (is_primitive(t->text) || t->is("void")) && at(".", 1) &&
        at("class", 2)) {
      std::vector<std::uint32_t> e{take(), take(), take()};
      return tree_.add_list(std::move(e));
    }
    fail({"expression"});
  }

  std::uint32_t postfix(std::uint32_t e) {
    while (true) {
      if (at(".")) {
        std::vector<std::uint32_t> m{e, take()};
        if (at_ident() && at("(", 1)) {
          m.push_back(arguments_call(take(LeafRole::Member)));
        } else if (at_ident()) {
          m.push_back(take(LeafRole::Member));
        } else if (at("class") || at("this")) {
          m.push_back(take());
        } else {
          fail({"member name"});
        }
        e = tree_.add_list(std::move(m));
      } else if (at("[")) {
        std::vector<std::uint32_t> m{e, take()};
        m.push_back(expression());
        m.push_back(expect("]"));
        e = tree_.add_list(std::move(m));
      } else if (at("++") || at("--")) {
        std::vector<std::uint32_t> m{e, take()};
        e = tree_.add_list(std::move(m));
      } else {
        return e;
      }
    }
  }

  std::uint32_t creator() {
    std::vector<std::uint32_t> e{take()};  // new
    const Token* t = peek();
    if (t && t->is_keyword() && is_primitive(t->text)) {
      e.push_back(take());
    } else if (at_ident()) {
      e.push_back(class_type());
    } else {
      fail({"type"});
    }
    if (at("[")) {
      while (at("[")) {
        e.push_back(take());
        if (!at("]")) e.push_back(expression());
        e.push_back(expect("]"));
      }
      if (at("{")) e.push_back(array_initializer());
      return tree_.add_list(std::move(e));
    }
    e.push_back(expect("("));
    if (!at(")")) e.push_back(expression_list());
    e.push_back(expect(")"));
    if (at("{")) e.push_back(class_body());
    return tree_.add_list(std::move(e));
  }

  std::uint32_t class_body() {
    std::vector<std::uint32_t> e{expect("{")};
    push_scope();
    while (!at("}")) {
      if (done()) fail({"'}'"});
      e.push_back(member());
    }
    pop_scope();
    e.push_back(take());
    return tree_.add_list(std::move(e));
  }

  // Member of an anonymous class body: a method or a field.
  std::uint32_t member() {
    if (at(";")) return take();
    std::vector<std::uint32_t> e;
    while (at_annotation() || (peek() && peek()->is_keyword() && is_modifier(peek()->text))) {
      e.push_back(at_annotation() ? annotation() : take());
    }
    if (at("void"))
      e.push_back(take());
    else
      e.push_back(type());
    if (!at_ident()) fail({"member name"});
    if (!at("(", 1)) {
      std::vector<std::uint32_t> decls{declarator(LeafRole::Member)};
      while (at(",")) {
        decls.push_back(take());
        decls.push_back(declarator(LeafRole::Member));
      }
      e.push_back(tree_.add_list(std::move(decls)));
      e.push_back(expect(";"));
      return tree_.add_list(std::move(e));
    }
    e.push_back(take(LeafRole::Member));
    push_scope();
    std::vector<std::uint32_t> params{expect("(")};
    std::vector<std::uint32_t> plist;
    while (!at(")")) {
      std::vector<std::uint32_t> p;
      while (at("final")) p.push_back(take());
      p.push_back(type());
      if (at("...")) p.push_back(take());
      p.push_back(ident(LeafRole::Declaration));
      plist.push_back(tree_.add_list(std::move(p)));
      if (!at(",")) break;
      plist.push_back(take());
    }
    if (!plist.empty()) params.push_back(tree_.add_list(std::move(plist)));
    params.push_back(expect(")"));
    e.push_back(tree_.add_list(std::move(params)));
    if (at("throws")) {
      e.push_back(take());
      std::vector<std::uint32_t> types{type()};
      while (at(",")) {
        types.push_back(take());
        types.push_back(type());
      }
      e.push_back(tree_.add_list(std::move(types)));
    }
    e.push_back(at(";") ? take() : block());
    pop_scope();
    return tree_.add_list(std::move(e));
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  SimplifiedParseTree tree_;
  std::vector<LeafRole> node_role_;
  std::vector<std::uint32_t> node_scope_;
  std::vector<std::uint32_t> scope_parent_;
  std::uint32_t scope_ = 0;
  bool snippet_ = false;
};

}  // namespace

SimplifiedParseTree parse_method_body(std::span<const Token> tokens,
                                      std::vector<std::string> params) {
  return Parser(tokens).body(std::move(params));
}

ParsedMethod parse_method_declaration(std::span<const Token> tokens) {
  return Parser(tokens).method_declaration();
}

SimplifiedParseTree parse_snippet(std::span<const Token> tokens) {
  try {
    return Parser(tokens, true).statements();
  } catch (const ParseError& statement_error) {
    try {
      return Parser(tokens, true).lone_expression();
    } catch (const ParseError&) {
    }
    try {
      return Parser(tokens).method_declaration().body;
    } catch (const ParseError&) {
    }
    throw;
  }
}

}  // namespace structrec::frontend
