#include "quiverlab/service.hpp"

#include <httplib.h>

namespace quiverlab {

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>()) {
  auto route = [&service](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query[k] = v;
    const Response r = service.handle(req.method, req.path, req.body, query);
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  impl_->server.Get(".*", route);
  impl_->server.Post(".*", route);
  impl_->server.Delete(".*", route);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace quiverlab
