#include "vwsd/testkit/server.hpp"

#include "httplib.h"
#include "json.hpp"
#include "vwsd/error.hpp"
#include "vwsd/testkit/mock.hpp"
#include "vwsd/util.hpp"

namespace vwsd::testkit {

MockServer::MockServer(uint64_t seed, uint32_t dim) : seed_(seed), dim_(dim) {}

MockServer::~MockServer() { stop(); }

void MockServer::start() {
  server_ = std::make_unique<httplib::Server>();

  server_->Post("/v1/embed", [this](const httplib::Request& request,
                                    httplib::Response& response) {
    embed_requests_.fetch_add(1);
    try {
      const nlohmann::json body = nlohmann::json::parse(request.body);
      const std::string model = body.at("model").get<std::string>();
      const Modality modality = parse_modality(body.at("modality").get<std::string>());
      nlohmann::json vectors = nlohmann::json::array();
      for (const auto& wire_input : body.at("inputs")) {
        std::string input = wire_input.get<std::string>();
        if (modality == Modality::Image) input = base64_decode(input);
        const EmbeddingVector vec = mock_embed(model, modality, input, seed_, dim_);
        nlohmann::json row = nlohmann::json::array();
        for (float v : vec.values) row.push_back(static_cast<double>(v));
        vectors.push_back(std::move(row));
      }
      const nlohmann::json reply = {{"dim", dim_}, {"vectors", std::move(vectors)}};
      response.set_content(reply.dump(), "application/json");
    } catch (const std::exception& e) {
      response.status = 400;
      response.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
    }
  });

  server_->Post("/v1/generate", [this](const httplib::Request& request,
                                       httplib::Response& response) {
    generate_requests_.fetch_add(1);
    try {
      const nlohmann::json body = nlohmann::json::parse(request.body);
      MockGenerationService service;
      const std::string text = service.generate(body.at("prompt").get<std::string>());
      response.set_content(nlohmann::json{{"text", text}}.dump(), "application/json");
    } catch (const std::exception& e) {
      response.status = 400;
      response.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
    }
  });

  server_->Post("/v1/translate", [this](const httplib::Request& request,
                                        httplib::Response& response) {
    translate_requests_.fetch_add(1);
    try {
      const nlohmann::json body = nlohmann::json::parse(request.body);
      const std::string text = mock_translation(body.at("text").get<std::string>(),
                                                body.at("source").get<std::string>(),
                                                body.at("target").get<std::string>());
      response.set_content(nlohmann::json{{"text", text}}.dump(), "application/json");
    } catch (const std::exception& e) {
      response.status = 400;
      response.set_content(nlohmann::json{{"error", e.what()}}.dump(), "application/json");
    }
  });

  port_ = server_->bind_to_any_port("127.0.0.1");
  if (port_ <= 0) fail(ErrorKind::Provider, "mock server could not bind a port");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

void MockServer::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

}  // namespace vwsd::testkit
