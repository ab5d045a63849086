#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "vwsd/augment.hpp"
#include "vwsd/error.hpp"
#include "vwsd/provider.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

namespace {

// Shared retrying POST. Retries cover transport failures and non-200
// responses; the terminal error names the path and attempt count.
nlohmann::json post_json(const std::string& endpoint, const std::string& path,
                         const nlohmann::json& body, int retries,
                         std::atomic<size_t>& calls) {
  std::string last_error;
  for (int attempt = 1; attempt <= retries; ++attempt) {
    if (attempt > 1) std::this_thread::sleep_for(std::chrono::milliseconds(25 * attempt));
    httplib::Client client(endpoint);
    client.set_connection_timeout(5, 0);
    client.set_read_timeout(30, 0);
    calls.fetch_add(1);
    httplib::Result result = client.Post(path, body.dump(), "application/json");
    if (!result) {
      last_error = "transport error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status != 200) {
      last_error = "status " + std::to_string(result->status);
      continue;
    }
    try {
      return nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::exception& e) {
      last_error = std::string("bad response JSON: ") + e.what();
    }
  }
  fail(ErrorKind::Provider, "POST " + endpoint + path + " failed after " +
                                std::to_string(retries) + " attempts (" +
                                last_error + ")");
}

}  // namespace

HttpEmbedBackend::HttpEmbedBackend(std::string endpoint, int retries)
    : endpoint_(std::move(endpoint)), retries_(retries) {}

std::vector<std::vector<float>> HttpEmbedBackend::embed(
    const std::string& model_id, Modality modality,
    const std::vector<std::string>& inputs) {
  nlohmann::json body;
  body["model"] = model_id;
  body["modality"] = to_string(modality);
  nlohmann::json wire_inputs = nlohmann::json::array();
  for (const auto& input : inputs) {
    wire_inputs.push_back(modality == Modality::Image ? base64_encode(input) : input);
  }
  body["inputs"] = std::move(wire_inputs);

  const nlohmann::json response = post_json(endpoint_, "/v1/embed", body, retries_, calls_);
  if (!response.contains("dim") || !response.contains("vectors")) {
    fail(ErrorKind::Provider, "embed response lacks dim/vectors fields");
  }
  const auto dim = response["dim"].get<uint32_t>();
  std::vector<std::vector<float>> vectors;
  for (const auto& row : response["vectors"]) {
    std::vector<float> values;
    values.reserve(row.size());
    for (const auto& v : row) values.push_back(static_cast<float>(v.get<double>()));
    if (values.size() != dim) {
      fail(ErrorKind::Integrity, "embed response vector length " +
                                     std::to_string(values.size()) +
                                     " does not match response dim " +
                                     std::to_string(dim));
    }
    vectors.push_back(std::move(values));
  }
  return vectors;
}

HttpGenerationService::HttpGenerationService(std::string endpoint, int retries)
    : endpoint_(std::move(endpoint)), retries_(retries) {}

std::string HttpGenerationService::generate(const std::string& prompt) {
  const nlohmann::json response =
      post_json(endpoint_, "/v1/generate", {{"prompt", prompt}}, retries_, calls_);
  if (!response.contains("text")) {
    fail(ErrorKind::Provider, "generate response lacks a text field");
  }
  return response["text"].get<std::string>();
}

HttpTranslationService::HttpTranslationService(std::string endpoint, int retries)
    : endpoint_(std::move(endpoint)), retries_(retries) {}

std::string HttpTranslationService::translate(const std::string& text,
                                              const std::string& source,
                                              const std::string& target) {
  const nlohmann::json response = post_json(
      endpoint_, "/v1/translate",
      {{"text", text}, {"source", source}, {"target", target}}, retries_, calls_);
  if (!response.contains("text")) {
    fail(ErrorKind::Provider, "translate response lacks a text field");
  }
  return response["text"].get<std::string>();
}

}  // namespace vwsd
