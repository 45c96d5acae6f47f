#pragma once

#include <string>
#include <vector>

#include "sectorzero/taxonomy.hpp"

namespace sectorzero {

struct NliLogits {
  double contradiction = 0.0;
  double neutral = 0.0;
  double entailment = 0.0;

  bool operator==(const NliLogits&) const = default;
};

struct BackendDescriptor {
  std::string backend_id;  // "mock", or the remote endpoint
  std::string model_id;
  std::string hypothesis_template;
};

struct NliPair {
  std::string premise;
  std::string hypothesis;
  std::string label_name;  // display name behind the hypothesis
};

// Scores premise/hypothesis pairs. Implementations that are not safe for
// concurrent calls return false from concurrent_safe(); callers then
// serialize.
class NliBackend {
 public:
  virtual ~NliBackend() = default;
  virtual const BackendDescriptor& descriptor() const = 0;
  virtual bool concurrent_safe() const = 0;
  // One result per pair, order-aligned.
  virtual std::vector<NliLogits> score_pairs(
      const std::vector<NliPair>& pairs) = 0;
};

// Replaces the single "{}" placeholder with the label's display name.
std::string build_hypothesis(const ClassLabel& label,
                             const std::string& hypothesis_template);

// Deterministic scoring by distinct-token overlap between premise and
// label tokens: (contradiction, neutral, entailment) =
// (1.0, 0.0, 2.0 * overlap).
NliLogits mock_nli_score(const std::string& premise,
                         const std::string& hypothesis,
                         const std::vector<std::string>& label_tokens);

class MockNliBackend : public NliBackend {
 public:
  MockNliBackend(std::string model_id, std::string hypothesis_template);

  const BackendDescriptor& descriptor() const override { return descriptor_; }
  bool concurrent_safe() const override { return true; }
  std::vector<NliLogits> score_pairs(
      const std::vector<NliPair>& pairs) override;

 private:
  BackendDescriptor descriptor_;
};

}  // namespace sectorzero
