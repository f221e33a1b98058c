#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "hyperdecay/classify.hpp"
#include "hyperdecay/fit.hpp"
#include "hyperdecay/multiplier.hpp"
#include "hyperdecay/symbol_json.hpp"

namespace hyperdecay {

using PqPair = std::pair<double, double>;

// non-finite values become "inf", "-inf" or "nan"
Json json_number(double x);
Json json_vector(std::span<const double> v);

Json to_json(const StabilityVerdict& v);
Json to_json(const BranchBehavior& b);
Json to_json(const MultiplicityCluster& c, const FrequencyGrid& grid);
Json to_json(const MeetsAxisDetail& d);
Json to_json(const DecayPrediction& p, std::span<const PqPair> pq);
Json to_json(const DecayFit& f);
Json to_json(const Verification& v);
Json to_json(const BoundCheck& b);

Json classification_json(const Classification& cls, std::span<const PqPair> pq,
                         std::span<const DerivativeOrder> derivs);

std::uint64_t fnv1a(std::string_view s);
std::string hex64(std::uint64_t h);

std::string format_pq(double p, double q);

}  // namespace hyperdecay
