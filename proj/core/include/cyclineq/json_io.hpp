#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "cyclineq/band_count.hpp"
#include "cyclineq/classifier.hpp"
#include "cyclineq/inequality.hpp"
#include "cyclineq/refuter.hpp"
#include "cyclineq/witness.hpp"

namespace cyclineq {

// Insertion-ordered so that identical inputs print byte-identical documents.
using Json = nlohmann::ordered_json;

Json to_json(const Permutation& sigma);
// Expects an array of 1-based images, e.g. [2,3,1].
Permutation permutation_from_json(const Json& j);

Json classify_json(const Permutation& sigma, const ExponentVerdict& verdict);

// { "n", "u", "v", "alphabet": "a"|"b", "summands": [[...]...], "rounds": [[...]...] }
Json to_json(const DecompositionCertificate& cert);
DecompositionCertificate certificate_from_json(const Json& j);

Json to_json(const InequalityInstance& instance);
Json to_json(const GapReport& report);
Json to_json(const CounterexampleReport& report);
Json to_json(const ShapiroPrediction& prediction);
Json to_json(const LucasRow& row);

std::string big_to_string(const BigInt& value);

}  // namespace cyclineq
