#pragma once

#include <json.hpp>

#include "thick/embedder.hpp"
#include "thick/net.hpp"
#include "thick/subdivision.hpp"
#include "thick/thickness.hpp"

namespace thick {

using Json = nlohmann::json;

/// Every JSON document carries this as "schema_version"; readers reject
/// other values.
inline constexpr int kSchemaVersion = 1;

Json to_json(const ThicknessReport& report);
ThicknessReport thickness_report_from_json(const Json& j);

Json to_json(const NetResult& net);
NetResult net_result_from_json(const Json& j);

Json embedding_to_json(const EmbeddedComplex& embedding);
EmbeddedComplex embedding_from_json(const Json& j);

Json to_json(const ConditionReport& report);
Json to_json(const CrossingProfile& profile);
Json to_json(const LinkThickness& thickness);
Json to_json(const LinkIsometryReport& report);
Json to_json(const PipelineResult& result);

/// Throws Parse when `j` is not an object with the expected schema_version
/// and "kind".
void check_schema(const Json& j, const std::string& kind);

}  // namespace thick
