#pragma once

#include "lalg/psm.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace lalg {

using Json = nlohmann::ordered_json;

/// One input file may bundle algebroids, maps, a Poisson/PSM block and
/// command sections. Schema version 1; unknown fields are rejected.
struct LoadedBundle {
    std::unique_ptr<VarPool> pool;
    std::map<std::string, Algebroid> algebroids;
    std::map<std::string, BundleMap> maps;
    std::map<std::string, std::vector<std::pair<Section, Section>>> related_pairs; // per map
    std::optional<std::vector<VarId>> poisson_coords;
    std::optional<std::vector<std::vector<Poly>>> poisson;
    std::unique_ptr<PsmModel> psm;
    Json raw;

    const Algebroid& algebroid(const std::string& name) const;
    const BundleMap& map(const std::string& name) const;
};

LoadedBundle load_bundle_json(const Json& doc);
LoadedBundle load_bundle_file(const std::string& path);

void expect_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& where);

GaugeParam parse_gauge_param(const Json& j, LoadedBundle& b, const Algebroid& source,
                             const Algebroid& target);
Connection parse_connection(const Json& j, const LoadedBundle& b, const Algebroid& target);
FrameChange parse_frame_change(const Json& j, const LoadedBundle& b, const Algebroid& target);
std::vector<Poly> parse_poly_list(const Json& j, const VarPool& pool,
                                  const std::optional<std::set<VarId>>& allowed, const std::string& where);

} // namespace lalg
