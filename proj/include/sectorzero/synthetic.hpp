#pragma once

#include <cstdint>

#include "sectorzero/corpus.hpp"
#include "sectorzero/taxonomy.hpp"

namespace sectorzero {

// Seeded stand-in corpus: per_class records per label, each description a
// fixed sentence frame around 2-4 tokens of the record's own class name.
// Tokens shared between class names are never drawn, and the frame/filler
// vocabulary avoids every built-in label token, so with the mock backend
// each record overlaps its own class only. Output depends only on
// (labels, per_class, seed).
Corpus generate_synthetic_corpus(const LabelSet& labels, std::size_t per_class,
                                 std::uint64_t seed);

}  // namespace sectorzero
