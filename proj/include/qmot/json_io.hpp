#pragma once

#include <json.hpp>

#include "qmot/harness.hpp"

namespace qmot::json_io {

using nlohmann::json;

json to_json(const CoeffRing& r);
CoeffRing ring_from_json(const json& j);

json to_json(const Mat& m);
Mat mat_from_json(const json& j);

json to_json(const SplitQuadric& q);
/// `r` fills a missing "disc" with zeros of that length.
SplitQuadric quadric_from_json(const json& j, std::optional<int> r = std::nullopt);

json to_json(const GaloisContext& g);
GaloisContext galois_from_json(const json& j);

json to_json(const Cycle& c);
Cycle cycle_from_json(const json& j, const SplitQuadric& x, const CoeffRing& ring);

json to_json(const Correspondence& c);
Correspondence correspondence_from_json(const json& j, std::optional<int> r = std::nullopt);

json to_json(const RationalityContext& ctx);
/// Accepts an optional "witt": [w_x, w_y] adding every product of rational
/// cycles at those isotropy levels.
RationalityContext context_from_json(const json& j);

json to_json(const IsoClass& c);
json to_json(const IsoLift& r);
json to_json(const BijectionReport& r);

}  // namespace qmot::json_io
