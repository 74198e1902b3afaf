#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "elena/config.hpp"
#include "elena/problems.hpp"

namespace elena {

// Raw view of a keyword-section CVRP file before it becomes a VrpInstance.
struct VrpFileModel {
    std::string name;
    std::string comment;
    std::string edge_weight_type;
    int dimension = 0;
    int capacity = 0;
    std::vector<std::array<double, 2>> coordinates;
    std::vector<int> demands;
    int depot = 0;  // 0-based node index
    std::optional<int> vehicle_count;
    std::optional<double> best_known;
};

// Keyword-section CVRP parser (NAME/COMMENT/DIMENSION/CAPACITY/
// NODE_COORD_SECTION/DEMAND_SECTION/DEPOT_SECTION/EOF). The vehicle count
// comes from the name's trailing "-kNN" when present, otherwise from a
// "trucks" entry in the comment; a best-known value is read from an
// "Optimal value" entry when one exists. Parsing is all-or-nothing.
VrpInstance parse_vrp(const std::string& text);
VrpFileModel parse_vrp_file_model(const std::string& text);

// Keyword-section TSP parser (same format minus demands and depot).
TspInstance parse_tsp(const std::string& text);

// DIMACS clique format: "c ..." comments, one "p edge N M" line, "e u v"
// edges with 1-based endpoints. Self-loops and out-of-range endpoints are
// rejected; duplicate edge lines collapse to one adjacency entry.
McpInstance parse_dimacs_clq(const std::string& text);

// Canonical writers. Coordinates are written with 17 significant digits so
// generate -> write -> parse reproduces instances exactly. EDGE_WEIGHT_TYPE
// is EUC_2D for the rounded metric and REAL_EUC_2D for full precision.
std::string write_tsp(const TspInstance& instance, const std::string& comment = "");
std::string write_vrp(const VrpInstance& instance);
std::string write_dimacs_clq(const McpInstance& instance, const std::string& comment = "");

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

struct ResultRecord {
    std::string instance_id;
    std::string algorithm_id;
    std::uint64_t seed = 0;
    std::string config_digest;
    double best_objective = 0.0;
    int generations = 0;
    double wall_time_seconds = 0.0;
    std::string trajectory_file;  // name under the destination directory
};

struct ResultsBundle {
    std::vector<ResultRecord> records;
    // trajectory file name -> per-generation best objective
    std::map<std::string, std::vector<double>> trajectories;
    // config digest -> canonical config JSON, echoed for provenance
    std::map<std::string, std::string> configs;
};

// Writes summary.csv (instance,algorithm,seed,config,best,generations,
// wall_time_s; rows sorted by instance, algorithm, seed), one trajectory CSV
// per run (generation,best_objective) and one config-<digest>.json per
// distinct config. Output is byte-stable for identical inputs.
void write_results(const ResultsBundle& bundle, const std::filesystem::path& destination);

// Canonical JSON of every semantic config field (sorted keys); the digest is
// the 64-bit FNV-1a of that text, in hex.
std::string config_json(const SolverConfig& config);
std::string config_digest(const SolverConfig& config);
std::string fnv1a_hex(const std::string& text);

std::string format_double(double value);  // round-trip friendly, %.10g
std::string csv_quote(const std::string& field);

// <instance>__<algorithm>__s<seed>__<digest>.trajectory.csv, sanitized.
std::string trajectory_file_name(const ResultRecord& record);

}  // namespace elena
