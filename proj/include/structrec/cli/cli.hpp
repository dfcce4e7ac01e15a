#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <memory>
#include <string>
#include <string_view>

#include "structrec/recommend/pipeline.hpp"

namespace structrec::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kParse = 3,
  kEmptyResult = 4,
  kIndexFormat = 5,
};

/// Environment variable naming the default index file.
inline constexpr const char* kIndexEnv = "STRUCTREC_INDEX";

/// Applies a config file: one `key = value` per line, `#` starts a comment.
/// Keys: eta1 eta2 tau1 tau2 tau3 topk union_mode placeholders fallback
/// workers seed.
/// Throws std::invalid_argument naming the line on an unknown key or a bad
/// value. Does not validate the combined result.
void apply_config_text(std::string_view text, recommend::EngineConfig& config);

/// Same keys as a JSON object, as sent to the service.
void apply_config_json(const nlohmann::json& overrides, recommend::EngineConfig& config);

/// A query as source text, or as an interchange document when `text` is a
/// JSON object. Throws ParseError, LexError or SchemaError.
frontend::AnnotatedTree read_query(std::string_view text);

struct RecommendOutcome {
  int exit_code = kOk;
  std::vector<recommend::Recommendation> recs;
  std::string document;  // machine format, also for an empty result
};

/// The single recommend path used by the command line and the service.
/// Empty queries and queries without results give an empty document and
/// kEmptyResult.
RecommendOutcome run_recommend(const recommend::Engine& engine, const frontend::AnnotatedTree& query,
                               const recommend::EngineConfig& config);

/// Plain-text rendering of recommendations with "+ " marking extra lines.
std::string recommendations_to_text(const recommend::Engine& engine,
                                    const std::vector<recommend::Recommendation>& recs,
                                    const recommend::EngineConfig& config);

struct HttpReply {
  int status = 200;
  std::string body;
};

/// Handles a POST /recommend body: {"query": source text or interchange
/// tree, "config": overrides}. Malformed requests get 400.
HttpReply handle_recommend(const recommend::Engine& engine, const recommend::EngineConfig& base,
                           std::string_view body);

/// HTTP front end over one read-only engine.
class Service {
 public:
  Service(const recommend::Engine& engine, recommend::EngineConfig base);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and returns the port; port 0 picks a free one. Throws IoError.
  int bind(const std::string& host, int port);
  /// Serves until stop(); blocks.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Entry point of the structrec command.
int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace structrec::cli
