#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "sectorzero/nli.hpp"

namespace sectorzero {

struct RetryPolicy {
  std::size_t attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
  std::chrono::milliseconds timeout{30000};
};

// HTTP client for an NLI scoring server: POST <endpoint>/v1/nli with
// {"model": ..., "pairs": [{"premise", "hypothesis"}, ...]}, expecting
// {"logits": [[c, n, e], ...]} aligned with the request. Transport
// failures and non-2xx responses are retried per policy and end in
// BackendUnavailable; malformed responses are ProtocolError right away.
class RemoteNliBackend : public NliBackend {
 public:
  RemoteNliBackend(std::string endpoint, std::string model_id,
                   std::string hypothesis_template, RetryPolicy retry = {});
  ~RemoteNliBackend() override;

  const BackendDescriptor& descriptor() const override { return descriptor_; }
  // httplib clients are not safe for concurrent requests.
  bool concurrent_safe() const override { return false; }
  std::vector<NliLogits> score_pairs(
      const std::vector<NliPair>& pairs) override;

 private:
  struct Impl;
  BackendDescriptor descriptor_;
  RetryPolicy retry_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sectorzero
