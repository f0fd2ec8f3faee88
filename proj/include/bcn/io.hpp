#pragma once

#include <variant>

#include <json.hpp>

#include "bcn/analysis.hpp"

namespace bcn::io {

using nlohmann::json;

json to_json(const LogicalMatrix& m);
LogicalMatrix matrix_from_json(const json& doc);

json to_json(const StateSpace& space);
StateSpace space_from_json(const json& doc);

json to_json(const Bcn& net);
Bcn bcn_from_json(const json& doc);

json to_json(const Bn& net);
Bn bn_from_json(const json& doc);

/// Closed loop as a Bn document with provenance naming the two sources.
json to_json(const ClosedLoop& loop);

json to_json(const AttractorReport& report);
json to_json(const ReconstructibilityReport& report);

/// FNV-1a over the canonical serialization; used for run-report digests.
std::string digest(const json& doc);

using AnyModel = std::variant<Bcn, Bn>;

/// Loads a model from disk: `.bcn` sources are compiled, `.json` documents
/// are detected as control networks or autonomous networks by shape.
AnyModel load_model(const std::string& path, int threads = 0);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace bcn::io
