#pragma once

// JSON rendering of verdicts, matrices, theorem reports and corpus runs.

#include "ctrlcheck/corpus.hpp"

#include <json.hpp>

namespace ctrlcheck
{

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const Witness& w);
[[nodiscard]] Json to_json(const Verdict& v);
[[nodiscard]] Json to_json(const ContextProfile& c);
[[nodiscard]] Json to_json(const NotionMatrix& m);
[[nodiscard]] Json to_json(const TheoremReport& r);
[[nodiscard]] Json to_json(const CorpusReport& r);
[[nodiscard]] Json to_json(const std::vector<Separation>& seps);

/// Inverse of to_json(Verdict); throws Error on malformed input.
[[nodiscard]] Verdict verdict_from_json(const Json& j);

} // namespace ctrlcheck
