#pragma once

#include "json.hpp"

#include "patternex/classifier.hpp"
#include "patternex/containment.hpp"
#include "patternex/embedder.hpp"
#include "patternex/extremal.hpp"
#include "patternex/sparsity.hpp"

// JSON views of results. All indices are emitted 1-based.
namespace patternex {

nlohmann::json to_json(const Embedding& e);
nlohmann::json to_json(const BlockEmbedding& e);
nlohmann::json to_json(const DenseCertificate& c);
nlohmann::json to_json(const Inconclusive& i);
nlohmann::json to_json(const SparsityBound& b);
nlohmann::json to_json(const SeparationTree& t);
nlohmann::json to_json(const TheoremParameters& p);

/// Inverse of to_json(Embedding); throws nlohmann::json::exception on schema errors.
Embedding embedding_from_json(const nlohmann::json& j);

/// The `classify` report.
nlohmann::json classification_report(const Pattern& p);

}  // namespace patternex
