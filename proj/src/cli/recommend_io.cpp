#include <charconv>
#include <fmt/format.h>
#include <stdexcept>

#include "structrec/cli/cli.hpp"
#include "structrec/error.hpp"
#include "structrec/frontend/source.hpp"

namespace structrec::cli {

using recommend::EngineConfig;

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || end != v.data() + v.size())
    throw std::invalid_argument(fmt::format("bad value '{}' for {}", v, key));
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  std::string s(v);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument(fmt::format("bad value '{}' for {}", v, key));
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::invalid_argument(fmt::format("bad value '{}' for {}", v, key));
}

void set_key(std::string_view key, std::string_view v, EngineConfig& c) {
  if (key == "eta1") c.eta1 = parse_number<std::size_t>(key, v);
  else if (key == "eta2") c.eta2 = parse_number<std::size_t>(key, v);
  else if (key == "tau1") c.tau1 = parse_real(key, v);
  else if (key == "tau2") c.tau2 = parse_real(key, v);
  else if (key == "tau3") c.tau3 = parse_real(key, v);
  else if (key == "topk") c.topk = parse_number<std::size_t>(key, v);
  else if (key == "union_mode") c.union_mode = recommend::parse_union_mode(std::string(v));
  else if (key == "placeholders") c.placeholders = parse_bool(key, v);
  else if (key == "fallback") c.fallback = parse_bool(key, v);
  else if (key == "workers") c.workers = parse_number<unsigned>(key, v);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
  else throw std::invalid_argument(fmt::format("unknown config key '{}'", key));
}

}  // namespace

void apply_config_text(std::string_view text, EngineConfig& config) {
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(fmt::format("config line {}: expected key = value", line_no));
    try {
      set_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), config);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(fmt::format("config line {}: {}", line_no, e.what()));
    }
  }
}

void apply_config_json(const nlohmann::json& overrides, EngineConfig& config) {
  if (overrides.is_null()) return;
  if (!overrides.is_object()) throw std::invalid_argument("config must be an object");
  for (const auto& [key, v] : overrides.items()) {
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    set_key(key, text, config);
  }
}

frontend::AnnotatedTree read_query(std::string_view text) {
  std::string_view t = trim(text);
  if (!t.empty() && t.front() == '{') {
    auto doc = nlohmann::json::parse(t, nullptr, false);
    if (!doc.is_discarded() && doc.is_object()) return frontend::import_tree(t);
  }
  return frontend::parse_query(text);
}

RecommendOutcome run_recommend(const recommend::Engine& engine, const frontend::AnnotatedTree& query,
                               const EngineConfig& config) {
  RecommendOutcome out;
  try {
    out.recs = recommend::recommend(engine, query, config);
  } catch (const EmptyQueryError&) {
  } catch (const NoResultError&) {
  }
  if (out.recs.empty()) out.exit_code = kEmptyResult;
  out.document = recommend::recommendations_to_json(engine, out.recs, config);
  return out;
}

std::string recommendations_to_text(const recommend::Engine& engine,
                                    const std::vector<recommend::Recommendation>& recs, const EngineConfig& config) {
  std::string out;
  for (const auto& rec : recs) {
    out += fmt::format("#{}  {} method{}  l={:.2f} s={:.2f}{}\n", rec.rank, rec.methods.size(),
                       rec.methods.size() == 1 ? "" : "s", rec.tuple.l, rec.tuple.s,
                       rec.fallback ? "  (no cluster)" : "");
    for (auto id : rec.methods) {
      const auto& m = engine.index().methods[id];
      out += fmt::format("    {}:{}\n", m.path, m.name);
    }
    auto r = recommend::render_recommendation(engine, rec, {config.placeholders, recommend::Highlight::LineMarker, 2});
    out += r.text + "\n\n";
  }
  return out;
}

HttpReply handle_recommend(const recommend::Engine& engine, const EngineConfig& base, std::string_view body) {
  auto fail = [](const std::string& what) {
    return HttpReply{400, nlohmann::json{{"error", what}}.dump() + "\n"};
  };
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) return fail("body must be a JSON object");
  if (!doc.contains("query")) return fail("missing 'query'");
  const auto& q = doc["query"];
  EngineConfig config = base;
  try {
    if (doc.contains("config")) apply_config_json(doc["config"], config);
    config.validate();
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
  frontend::AnnotatedTree tree;
  try {
    if (q.is_string())
      tree = frontend::parse_query(q.get<std::string>());
    else if (q.is_object() || q.is_null())
      tree = frontend::import_tree(q.dump());
    else
      return fail("'query' must be source text or a tree document");
  } catch (const Error& e) {
    return fail(e.what());
  }
  return {200, run_recommend(engine, tree, config).document};
}

}  // namespace structrec::cli
