#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "siegel/blaschke.hpp"
#include "siegel/bounds.hpp"
#include "siegel/dynamics.hpp"
#include "siegel/tower.hpp"

namespace siegel::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "siegel-report/1";

// Every option the CLI accepts; unused ones are echoed as given.
struct RunConfig {
    std::string command;
    std::string cf = ";1";
    int n_max = 20;
    int bits = 212;
    double escape = 4.0;
    unsigned long seed = 7;
    int trials = 1000;
    std::string control = "polynomial";
    int Q = 8;
    long B = 0;  // 0: largest partial quotient
    double tol = 1e-10;
    std::string out;
    std::string csv;
};

struct Check {
    std::string name;
    bool pass;
    Json detail;
};

Json to_json(const RunConfig& cfg);
Json to_json(const TowerReal& x);
Json to_json(const ConstantsLedger& ledger);
Json to_json(const BoundsReport& rep);
Json to_json(const UniformConstants& uc);
Json to_json(const ScalingEstimate& e);
Json to_json(const Direction& d);
Json to_json(const AngleReport& rep);
Json to_json(const StripReport& rep);

// Envelope shared by all subcommands.
Json make_report(const RunConfig& cfg, const std::vector<std::string>& formulas, Json result,
                 const std::vector<Check>& checks);
bool all_pass(const std::vector<Check>& checks);

// Columns: n, q_n, re_z, im_z, abs_z_minus_1, arg_z_minus_1
std::string returns_csv(const ReturnSequence& seq);
// Columns: x, g_x
std::string lift_csv(const CircleLift& lift, int samples);

// Writes through a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace siegel::cli
