#pragma once

#include <string>

#include <json.hpp>

#include "pinchlab/campaign.hpp"
#include "pinchlab/gentle.hpp"
#include "pinchlab/matrix.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/spectrahedron.hpp"

namespace pinchlab::json {

using nlohmann::json;

/// Malformed input. The message names the offending field path.
class InputError : public Error {
 public:
  using Error::Error;
};

// Matrices: {"rows": r, "cols": c, "entries": [[re, im], ...]} row-major.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, const std::string& field);

// Real vectors: {"values": [...]}. A bare array is accepted on input.
json to_json(const WeightVector& w);
WeightVector weights_from_json(const json& j, const std::string& field);

// {"dimension": d, "projectors": [matrix, ...]}
json to_json(const ProjectivePOVM& povm);
ProjectivePOVM povm_from_json(const json& j, const std::string& field, const Tolerance& tol = {});

// {"in_dim": a, "out_dim": b, "operators": [matrix, ...]}
json to_json(const OperatorFamily& family);
OperatorFamily family_from_json(const json& j, const std::string& field);

// {"rho": matrix, "P": matrix, "epsilon": x}
json to_json(const GentleInstance& inst);
GentleInstance gentle_from_json(const json& j, const std::string& field, const Tolerance& tol = {});

json to_json(const LoewnerVerdict& v);
json to_json(const MembershipVerdict& v);
json to_json(const TraceNormReport& r);
json to_json(const GentleAnalysis& a);
json to_json(const Tolerance& t);
json to_json(const CampaignConfig& c);
json to_json(const CampaignReport& r);
CampaignConfig campaign_config_from_json(const json& j, const std::string& field);

/// Parses text as JSON; failures become InputError naming `field`.
json parse(const std::string& text, const std::string& field);

}  // namespace pinchlab::json
