#include "structrec/recommend/render.hpp"

#include <algorithm>
#include <unordered_set>

namespace structrec::recommend {

using frontend::ElementKind;
using frontend::kNoNode;
using frontend::kNoOffset;
using frontend::Node;
using frontend::SimplifiedParseTree;

namespace {

bool is_block_label(const std::string& label) {
  return label.size() >= 2 && label.front() == '{' && label.back() == '}';
}

class Printer {
 public:
  Printer(const SimplifiedParseTree& tree, const RenderOptions& opt) : tree_(tree), opt_(opt) {
    seq_.assign(tree.node_count(), kNoNode);
    auto order = tree.token_sequence();
    for (std::uint32_t i = 0; i < order.size(); ++i) seq_[order[i]] = i;
  }

  // `node` is kNoNode for placeholders.
  void token(std::string_view text, std::uint32_t node, bool extra) {
    const bool placeholder = node == kNoNode;
    if (text == "}" && !placeholder) {
      if (!inline_.empty() && inline_.back()) {
        inline_.pop_back();
        emit_spaced(text, node, extra);
        return;
      }
      if (!inline_.empty()) inline_.pop_back();
      pending_newline_ = false;
      if (!at_line_start_) newline();
      if (indent_ > 0) --indent_;
      if (!paren_stack_.empty()) {
        parens_ = paren_stack_.back();
        paren_stack_.pop_back();
      }
      emit_raw(text, node, extra);
      after_close_brace_ = true;
      closed_owner_ = grandparent(node);
      pending_newline_ = true;
      return;
    }
    if (pending_newline_) {
      bool joins = after_close_brace_ && (continues_statement(text, node) || text == ")" || text == ";" ||
                                          text == "," || text == "." || text == "]");
      pending_newline_ = false;
      if (!joins) newline();
    }
    after_close_brace_ = false;
    if (text == "{" && !placeholder) {
      bool inline_init = in_initializer() || last_text_ == "=" || last_text_ == "]";
      emit_spaced(text, node, extra);
      inline_.push_back(inline_init);
      if (!inline_init) {
        ++indent_;
        paren_stack_.push_back(parens_);
        parens_ = 0;
        pending_newline_ = true;
      }
      return;
    }
    emit_spaced(text, node, extra);
    if (placeholder && text.rfind("//", 0) == 0) {
      pending_newline_ = true;
      return;
    }
    if (text == "(") ++parens_;
    if (text == ")" && parens_ > 0) --parens_;
    if (text == ";" && parens_ == 0 && !in_initializer()) pending_newline_ = true;
  }

  void line_placeholder(std::string_view text) {
    if (!at_line_start_) newline();
    pending_newline_ = false;
    after_close_brace_ = false;
    emit_raw(text, kNoNode, false);
    pending_newline_ = true;
  }

  Rendered finish() {
    Rendered r;
    // Lines: split buffer, apply highlighting.
    std::size_t line_no = 1, line_start = 0;
    std::vector<std::pair<std::size_t, std::size_t>> spans = spans_;
    std::size_t si = 0;
    std::string& text = buf_;
    while (line_start <= text.size()) {
      std::size_t end = text.find('\n', line_start);
      if (end == std::string::npos) end = text.size();
      bool marked = false;
      while (si < spans.size() && spans[si].first < end) {
        if (spans[si].first >= line_start) marked = true;
        ++si;
      }
      if (marked) r.extra_lines.push_back(static_cast<std::uint32_t>(line_no));
      if (end == text.size()) break;
      line_start = end + 1;
      ++line_no;
    }
    switch (opt_.highlight) {
      case Highlight::None:
        r.text = std::move(buf_);
        r.extra_spans = std::move(spans_);
        break;
      case Highlight::LineMarker: {
        std::unordered_set<std::uint32_t> marked(r.extra_lines.begin(), r.extra_lines.end());
        std::size_t n = 1, start = 0;
        while (start <= text.size()) {
          std::size_t end = text.find('\n', start);
          if (end == std::string::npos) end = text.size();
          r.text += marked.count(static_cast<std::uint32_t>(n)) ? "+ " : "  ";
          r.text.append(text, start, end - start);
          if (end == text.size()) break;
          r.text += '\n';
          start = end + 1;
          ++n;
        }
        break;
      }
      case Highlight::Ansi: {
        std::size_t pos = 0;
        for (auto [off, len] : spans_) {
          r.text.append(text, pos, off - pos);
          r.text += "\x1b[1;32m";
          r.text.append(text, off, len);
          r.text += "\x1b[0m";
          pos = off + len;
        }
        r.text.append(text, pos, std::string::npos);
        break;
      }
    }
    return r;
  }

 private:
  bool in_initializer() const { return !inline_.empty() && inline_.back(); }

  std::uint32_t grandparent(std::uint32_t node) const {
    if (node == kNoNode) return kNoNode;
    std::uint32_t p = tree_.node(node).parent;
    return p == kNoNode ? kNoNode : tree_.node(p).parent;
  }

  // else/catch/finally/do-while keywords of the statement whose block just
  // closed stay on the closing brace's line.
  bool continues_statement(std::string_view text, std::uint32_t node) const {
    if (text != "else" && text != "catch" && text != "finally" && text != "while") return false;
    if (node == kNoNode || closed_owner_ == kNoNode) return false;
    std::uint32_t p = tree_.node(node).parent;
    return p == closed_owner_ || (p != kNoNode && tree_.node(p).parent == closed_owner_);
  }

  void newline() {
    buf_ += '\n';
    at_line_start_ = true;
    last_node_ = kNoNode;
    last_text_.clear();
  }

  bool source_adjacent(std::uint32_t node) const {
    if (node == kNoNode || last_node_ == kNoNode) return false;
    if (seq_[node] != seq_[last_node_] + 1) return false;
    const Node& a = tree_.node(last_node_);
    const Node& b = tree_.node(node);
    return a.offset != kNoOffset && b.offset != kNoOffset && a.offset + a.length <= b.offset;
  }

  bool wants_space(std::string_view text, std::uint32_t node) const {
    if (last_text_.empty()) return false;
    if (source_adjacent(node)) {
      const Node& a = tree_.node(last_node_);
      return a.offset + a.length < tree_.node(node).offset;
    }
    static const std::unordered_set<std::string_view> no_before = {")", "]", ";", ",", ".", "++", "--"};
    static const std::unordered_set<std::string_view> no_after = {"(", "[", ".", "!", "~", "@"};
    if ((text == "++" || text == "--") && !last_is_word()) return true;
    if (no_before.count(text)) return false;
    if (no_after.count(last_text_)) return false;
    if (text == "(" && last_text_ == "...") return false;
    if ((text == "(" || text == "[") && (last_is_word() || last_text_ == ")" || last_text_ == "]" ||
                                         last_text_ == "this" || last_text_ == "super"))
      return false;
    return true;
  }

  bool last_is_word() const {
    return last_node_ != kNoNode && tree_.node(last_node_).kind == ElementKind::Token;
  }

  void emit_spaced(std::string_view text, std::uint32_t node, bool extra) {
    if (!at_line_start_ && wants_space(text, node)) buf_ += ' ';
    emit_raw(text, node, extra);
  }

  void emit_raw(std::string_view text, std::uint32_t node, bool extra) {
    if (at_line_start_) {
      buf_.append(static_cast<std::size_t>(indent_ * opt_.indent_width), ' ');
      at_line_start_ = false;
    }
    if (extra) spans_.emplace_back(buf_.size(), text.size());
    buf_ += text;
    last_node_ = node;
    last_text_ = std::string(text);
  }

  const SimplifiedParseTree& tree_;
  const RenderOptions& opt_;
  std::vector<std::uint32_t> seq_;
  std::string buf_;
  std::vector<std::pair<std::size_t, std::size_t>> spans_;
  std::vector<bool> inline_;
  std::vector<int> paren_stack_;
  int indent_ = 0;
  int parens_ = 0;
  bool at_line_start_ = true;
  bool pending_newline_ = false;
  bool after_close_brace_ = false;
  std::uint32_t closed_owner_ = kNoNode;
  std::uint32_t last_node_ = kNoNode;
  std::string last_text_;
};

}  // namespace

Rendered render(const SimplifiedParseTree& tree, const std::vector<std::uint8_t>& keep,
                const std::vector<std::uint8_t>& extra, const RenderOptions& options) {
  if (tree.empty()) return {};
  auto kept = [&](std::uint32_t id) { return keep.empty() || keep[id]; };
  if (!kept(tree.root())) return {};

  // A node is extra when every retained leaf below it is.
  std::vector<std::uint8_t> node_extra(tree.node_count(), 0);
  {
    std::vector<std::uint32_t> order;
    std::vector<std::uint32_t> stack{tree.root()};
    while (!stack.empty()) {
      std::uint32_t id = stack.back();
      stack.pop_back();
      order.push_back(id);
      for (std::uint32_t c : tree.node(id).children)
        if (kept(c)) stack.push_back(c);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Node& n = tree.node(*it);
      if (n.kind == ElementKind::Token) {
        std::uint32_t leaf = tree.leaf_index(*it);
        node_extra[*it] = leaf < extra.size() && extra[leaf];
      } else if (n.kind == ElementKind::Tree) {
        bool all = true, any = false;
        for (std::uint32_t c : n.children) {
          if (!kept(c) || tree.node(c).kind == ElementKind::Keyword) continue;
          any = true;
          all = all && node_extra[c];
        }
        node_extra[*it] = any && all;
      }
    }
  }

  Printer p(tree, options);
  struct Frame {
    std::uint32_t id;
    std::size_t next;
    bool dropped_run;  // previous child was a dropped element
  };
  std::vector<Frame> stack;
  const Node& root = tree.node(tree.root());
  if (root.kind != ElementKind::Tree) {
    p.token(root.text, tree.root(), node_extra[tree.root()]);
    return p.finish();
  }
  stack.push_back({tree.root(), 0, false});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const Node& n = tree.node(f.id);
    if (f.next == n.children.size()) {
      stack.pop_back();
      continue;
    }
    std::uint32_t c = n.children[f.next++];
    const Node& child = tree.node(c);
    if (child.kind == ElementKind::Keyword) {
      f.dropped_run = false;
      p.token(child.text, c, node_extra[f.id]);
      continue;
    }
    if (!kept(c)) {
      if (options.placeholders && !f.dropped_run) {
        if (is_block_label(tree.label(f.id)))
          p.line_placeholder("// your code...");
        else
          p.token("...", kNoNode, false);
      }
      f.dropped_run = true;
      continue;
    }
    f.dropped_run = false;
    if (child.kind == ElementKind::Token) {
      p.token(child.text, c, node_extra[c]);
    } else {
      stack.push_back({c, 0, false});
    }
  }
  return p.finish();
}

}  // namespace structrec::recommend
