#pragma once

// JSON forms of the certificates. Every number is a decimal string, so the
// output never passes through floating point (timings excepted, which are
// not part of any certificate).

#include "hyperpts/chabauty.hpp"
#include "hyperpts/descent.hpp"

#include <nlohmann/json.hpp>

namespace hyperpts {

using Json = nlohmann::json;

Json to_json(const IPoly& f);
Json to_json(const RatPoint& pt);
RatPoint point_from_json(const Json& j);
Json to_json(const LocalVerdict& v);
Json to_json(const ElsReport& r);
Json to_json(const SearchReport& r, bool with_points = true);
Json to_json(const SelmerReport& r);
Json to_json(const DescentResult& r);
Json to_json(const QDiv& d);
Json to_json(const SieveResult& r);
Json to_json(const SeparatingCert& c);
Json to_json(const Determination& d);

}  // namespace hyperpts
