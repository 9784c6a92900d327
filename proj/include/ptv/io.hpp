#pragma once

// JSON encodings. Complex entries are [re, im] pairs and matrices are lists of
// rows. A process is {"dom": [blocks], "cod": [blocks], "grid": [[superop]]}
// where grid[i][j] is the superoperator from input block i to output block j.

#include <string>

#include <json.hpp>

#include "ptv/diagram.hpp"
#include "ptv/process.hpp"

namespace ptv {

nlohmann::json to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Process& p);
Process process_from_json(const nlohmann::json& j);

/// Sidecar document: {"systems": {"Q2": [2], ...}, "generators": {"f": process, ...}}.
/// Either key may be absent.
struct ModelFile {
  SystemTable systems;
  GeneratorEnv generators;
};
ModelFile model_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);

}  // namespace ptv
