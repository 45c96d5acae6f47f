#include "sectorzero/remote.hpp"

#include <cmath>
#include <thread>

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "sectorzero/errors.hpp"

namespace sectorzero {

struct RemoteNliBackend::Impl {
  explicit Impl(const std::string& endpoint) : client(endpoint) {}
  httplib::Client client;
};

namespace {

std::string strip_trailing_slash(std::string endpoint) {
  while (endpoint.size() > 1 && endpoint.back() == '/') endpoint.pop_back();
  return endpoint;
}

std::vector<NliLogits> parse_response(const std::string& body,
                                      std::size_t expected) {
  const auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::ProtocolError, "response is not a JSON object");
  }
  const auto it = doc.find("logits");
  if (it == doc.end() || !it->is_array()) {
    throw Error(ErrorCode::ProtocolError, "response missing \"logits\" array");
  }
  if (it->size() != expected) {
    throw Error(ErrorCode::ProtocolError,
                "expected " + std::to_string(expected) + " logit rows, got " +
                    std::to_string(it->size()));
  }
  std::vector<NliLogits> out;
  out.reserve(expected);
  for (const auto& row : *it) {
    if (!row.is_array() || row.size() != 3) {
      throw Error(ErrorCode::ProtocolError,
                  "each logit row must have 3 numbers");
    }
    NliLogits logits;
    double* slots[3] = {&logits.contradiction, &logits.neutral,
                        &logits.entailment};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!row[i].is_number()) {
        throw Error(ErrorCode::ProtocolError, "non-numeric logit");
      }
      *slots[i] = row[i].get<double>();
      if (!std::isfinite(*slots[i])) {
        throw Error(ErrorCode::ProtocolError, "non-finite logit");
      }
    }
    out.push_back(logits);
  }
  return out;
}

}  // namespace

RemoteNliBackend::RemoteNliBackend(std::string endpoint, std::string model_id,
                                   std::string hypothesis_template,
                                   RetryPolicy retry)
    : descriptor_{strip_trailing_slash(std::move(endpoint)),
                  std::move(model_id), std::move(hypothesis_template)},
      retry_(retry),
      impl_(std::make_unique<Impl>(descriptor_.backend_id)) {
  const auto seconds = retry_.timeout.count() / 1000;
  const auto micros = (retry_.timeout.count() % 1000) * 1000;
  impl_->client.set_connection_timeout(seconds, micros);
  impl_->client.set_read_timeout(seconds, micros);
  impl_->client.set_write_timeout(seconds, micros);
}

RemoteNliBackend::~RemoteNliBackend() = default;

std::vector<NliLogits> RemoteNliBackend::score_pairs(
    const std::vector<NliPair>& pairs) {
  if (pairs.empty()) return {};
  nlohmann::ordered_json body;
  body["model"] = descriptor_.model_id;
  body["pairs"] = nlohmann::ordered_json::array();
  for (const auto& pair : pairs) {
    body["pairs"].push_back(
        {{"premise", pair.premise}, {"hypothesis", pair.hypothesis}});
  }
  const std::string payload = body.dump();

  std::string last_error;
  auto backoff = retry_.initial_backoff;
  for (std::size_t attempt = 1; attempt <= retry_.attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff = std::chrono::milliseconds(static_cast<long long>(
          static_cast<double>(backoff.count()) * retry_.backoff_multiplier));
    }
    auto res = impl_->client.Post("/v1/nli", payload, "application/json");
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    return parse_response(res->body, pairs.size());
  }
  throw Error(ErrorCode::BackendUnavailable,
              descriptor_.backend_id + ": " + last_error + " (after " +
                  std::to_string(retry_.attempts) + " attempts)");
}

}  // namespace sectorzero
