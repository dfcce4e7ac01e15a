#include <httplib.h>
#include <spdlog/spdlog.h>

#include "structrec/cli/cli.hpp"
#include "structrec/error.hpp"

namespace structrec::cli {

struct Service::Impl {
  Impl(const recommend::Engine& e, recommend::EngineConfig b) : engine(e), base(std::move(b)) {}
  const recommend::Engine& engine;
  recommend::EngineConfig base;
  httplib::Server server;
};

Service::Service(const recommend::Engine& engine, recommend::EngineConfig base)
    : impl_(std::make_unique<Impl>(engine, std::move(base))) {
  auto* impl = impl_.get();
  impl->server.Post("/recommend", [impl](const httplib::Request& req, httplib::Response& res) {
    HttpReply reply = handle_recommend(impl->engine, impl->base, req.body);
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
    spdlog::info("POST /recommend {} ({} bytes)", reply.status, req.body.size());
  });
  impl->server.Get("/health", [impl](const httplib::Request&, httplib::Response& res) {
    nlohmann::json doc = {{"status", "ok"}, {"methods", impl->engine.index().method_count()}};
    res.set_content(doc.dump() + "\n", "application/json");
  });
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace structrec::cli
