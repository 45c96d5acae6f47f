#include "sectorzero/nli.hpp"

#include <unordered_set>

#include "sectorzero/errors.hpp"
#include "sectorzero/text.hpp"

namespace sectorzero {

std::string build_hypothesis(const ClassLabel& label,
                             const std::string& hypothesis_template) {
  const auto first = hypothesis_template.find("{}");
  if (first == std::string::npos ||
      hypothesis_template.find("{}", first + 2) != std::string::npos) {
    throw Error(ErrorCode::BadTemplate,
                "template must contain \"{}\" exactly once: \"" +
                    hypothesis_template + "\"");
  }
  std::string out = hypothesis_template;
  out.replace(first, 2, label.display_name);
  return out;
}

NliLogits mock_nli_score(const std::string& premise,
                         const std::string& /*hypothesis*/,
                         const std::vector<std::string>& label_tokens) {
  const std::unordered_set<std::string> label_set(label_tokens.begin(),
                                                  label_tokens.end());
  std::unordered_set<std::string> counted;
  std::size_t overlap = 0;
  for (auto& token : tokenize(premise)) {
    if (label_set.contains(token) && counted.insert(token).second) ++overlap;
  }
  return {1.0, 0.0, 2.0 * static_cast<double>(overlap)};
}

MockNliBackend::MockNliBackend(std::string model_id,
                               std::string hypothesis_template)
    : descriptor_{"mock", std::move(model_id), std::move(hypothesis_template)} {}

std::vector<NliLogits> MockNliBackend::score_pairs(
    const std::vector<NliPair>& pairs) {
  std::vector<NliLogits> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    out.push_back(
        mock_nli_score(pair.premise, pair.hypothesis, tokenize(pair.label_name)));
  }
  return out;
}

}  // namespace sectorzero
