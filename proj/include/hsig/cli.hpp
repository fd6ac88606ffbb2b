#pragma once

// The hsig command-line tool. run_cli holds everything except main so tests
// can drive it with captured streams.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsig/dp_engine.hpp"
#include "hsig/metrics.hpp"

namespace hsig {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Tensor document: flat coefficients, basis descriptor and metadata.
nlohmann::json tensor_to_json(const TensorR<double>& t, bool with_words);
nlohmann::json phi_to_json(const PhiResult& r, bool with_words);
nlohmann::json distance_to_json(const DistanceReport& r);

}  // namespace hsig
