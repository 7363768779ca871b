#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bergman_lab/criteria.hpp"
#include "bergman_lab/geometry.hpp"
#include "bergman_lab/measures.hpp"
#include "bergman_lab/report.hpp"
#include "bergman_lab/space.hpp"
#include "bergman_lab/toeplitz.hpp"
#include "bergman_lab/transforms.hpp"
#include "bergman_lab/weights.hpp"

namespace bl::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Non-finite values are written as the strings "inf", "-inf", "nan".
json number(double v);
double to_number(const json& j, const std::string& field);

json point_json(DiscPoint z);

// Weight / measure configs. Grid files are resolved relative to base_dir;
// "weighted_area" without its own "weight" uses u.
Weight weight_from_json(const json& j, const std::filesystem::path& base_dir = {});
DiscMeasure measure_from_json(const json& j, const Weight& u, const std::filesystem::path& base_dir = {});

// Short forms: "constant", "standard:1", "power_one_minus_z:0.5", "grid:w.csv";
// "weighted_area", "power_density:0.4", "atomic:[[0,0,2]]", "density_grid:g.csv".
json weight_spec(const std::string& text);
json measure_spec(const std::string& text);

// Rows "re,im,value" on a uniform n x n grid over [-1,1]^2 (any row order).
std::vector<double> load_grid_csv(const std::filesystem::path& path, int& n);

struct LadderSpec {
    int rings = 20;
    int samples = 8;
    double rho0 = 0.5;
};

struct RunConfig {
    json weight = json{{"kind", "constant"}};
    json measure = json{{"kind", "weighted_area"}};
    int degree = 0;  // 0: default for the weight
    int resolution = 24;
    double r_max = 0.995;
    double lattice_r = 0.5;
    LadderSpec ladder;
    std::vector<double> p = {2.0};
    std::vector<double> q = {2.0};
    std::vector<double> t = {2.0};
    std::vector<double> r = {0.5};
    std::vector<double> s = {1.0};
    json h = json{{"kind", "power"}, {"p", 2.0}};
    double C = 1.0;
    double p0 = 2.0;  // B_p0 exponent used by the Carleson (e) index
    std::string criterion = "consistency";
    std::string reference = "u_dA";
    std::string proxy = "diagonal";
    std::string out = "out";
    std::filesystem::path base_dir;

    json to_json() const;
    static RunConfig from_json(const json& j, const std::filesystem::path& base_dir = {});
    // Throws ConfigError naming the offending field.
    void validate() const;
};

SchattenFunction schatten_function(const json& h);

RunConfig load_config(const std::filesystem::path& path);

// Hash of the canonical config JSON (16 hex digits, FNV-1a 64).
std::string hash_text(const std::string& text);
std::string config_hash(const json& j);

json to_json(const Lattice& L);
json to_json(const CriterionReport& rep);
json to_json(const TransformProfile& prof);
json to_json(const Spectrum& s, std::size_t limit = 0);
json to_json(const WeightConstantReport& rep);
json to_json(const ConsistencyRow& row);
json model_dump(const KernelModel& m, const json& weight_config);

// Adds "config_hash" and "tool_version".
json stamp(json body, const std::string& hash);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);
std::string dump(const json& j);

void write_profile_csv(const std::filesystem::path& path, const TransformProfile& prof);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);
void write_trend_csv(const std::filesystem::path& path, const std::vector<RingValue>& trend);
void write_points_csv(const std::filesystem::path& path, const std::vector<PointValue>& pts);
void write_consistency_csv(const std::filesystem::path& path, const std::vector<ConsistencyRow>& rows);

}  // namespace bl::io
