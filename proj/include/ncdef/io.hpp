#pragma once

#include <json.hpp>

#include "ncdef/obstruction.hpp"

namespace ncdef {

using Json = nlohmann::json;

inline constexpr const char* kDiagramSchema = "ncdef-diagram/1";
inline constexpr const char* kCoverSchema = "ncdef-cover/1";

/// Reads a functor on Mor c from an "ncdef-diagram/1" document. Throws
/// InvalidInput with a path-like location on malformed input.
MorFunctor read_diagram(const Json& doc);
Json write_diagram(const MorFunctor& g);

struct CoverConfig {
  ChartCover cover;
  DeformationContext::Options options;
};

/// Reads an "ncdef-cover/1" document (charts, restrictions, optional bases).
CoverConfig read_cover(const Json& doc);
Json write_cover(const ChartCover& cover, const DeformationContext::Options& options);

Json scalar_json(const Scalar& s);
Json vector_json(std::span<const Scalar> v);
Scalar scalar_from_json(const Json& j, const std::string& where);

}  // namespace ncdef
