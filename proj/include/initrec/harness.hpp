#pragma once

// Experiment configuration, round-trip and sweep drivers, and result files.

#include "initrec/recover.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace initrec {

struct OperatorConfig {
    OperatorFamily family = OperatorFamily::Dirichlet2;
    std::size_t modes = 64;
    double d = 1.0;
    double c0 = 0.0;
    double d1 = 1.0;
    double d2 = 0.0;
    std::size_t grid_size = 0;
    bool allow_zero_mode = false;
};

/// Literal coefficients, or a named profile: "mode:k" (k-th eigenfunction) or
/// "gauss-bump" (a Gaussian centred at pi/2), scaled to E_0 norm `amplitude`.
struct StateSource {
    std::optional<std::vector<double>> coefficients;
    std::string profile;
    double amplitude = 1.0;
};

struct ConditionConfig {
    std::string problem = "E";
    double a = 0.0;
    WeightFunction b = WeightFunction::constant(1.0);
    std::optional<StateSource> M;
};

struct GridConfig {
    double final_time = 1.0;
    std::size_t intervals = 256;
    std::optional<double> grading;
};

struct SolverConfig {
    double tol = 1e-10;
    std::size_t max_iter = 200;
    double theta = 0.25;
    double gamma = 0.0;
    std::optional<double> nu;
    std::optional<double> delta0;
    bool small_time = false;
};

struct ExperimentConfig {
    OperatorConfig op;
    ConditionConfig condition;
    Nonlinearity nonlinearity = ZeroNonlinearity{};
    GridConfig grid;
    SolverConfig solver;
    std::optional<StateSource> u0;
    /// Observation grid = refinement x solver intervals, same grading.
    std::size_t observation_refinement = 4;
    std::vector<double> sweep_scales;
    std::uint64_t seed = 0;
};

/// Strict: unknown keys, wrong types and inconsistent fields throw
/// Error(ConfigError) whose message names the field and, when it can be
/// located, the line.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::filesystem::path& path);

SpectralOperator build_operator(const ExperimentConfig& cfg);
/// Solver grid; grading defaults to default_grading(theta).
TimeGrid build_grid(const ExperimentConfig& cfg);
TimeGrid build_observation_grid(const ExperimentConfig& cfg);
FractionalNormSpec build_norm_spec(const ExperimentConfig& cfg, const SpectralOperator& op);

std::vector<double> resolve_state(const StateSource& src, const SpectralOperator& op);
/// The condition with M left empty.
NonlocalCondition build_condition(const ExperimentConfig& cfg);
/// M from literal coefficients, or from a profile pushed through the forward
/// map and observed on the observation grid.
std::vector<double> resolve_observation(const ExperimentConfig& cfg, const SpectralOperator& op);
/// Forward solve on the observation grid, then the condition's observation.
std::vector<double> synthesize_observation(const ExperimentConfig& cfg,
                                           const SpectralOperator& op,
                                           std::span<const double> u0);

PicardOptions build_picard_options(const ExperimentConfig& cfg);

struct RoundTripResult {
    std::vector<double> u0_true;
    std::vector<double> M;
    std::vector<double> u0_recovered;
    double error_e0 = 0.0;
    double error_theta = 0.0;
    double forward_seconds = 0.0;
    double backward_seconds = 0.0;
    std::optional<FixedPointReport> report;
    /// Empty on success, otherwise "forward" or "recover".
    std::string failure_stage;
    std::string failure_message;
};

RoundTripResult roundtrip(const ExperimentConfig& cfg, std::span<const double> u0_true);

struct SweepRow {
    double scale = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    double final_ratio = 0.0;
    double sigma_T0_norm = 0.0;
    double m_T = 0.0;
    std::string error;
};

/// One Picard run per scale with M = scale * M_base; failing rows are recorded.
std::vector<SweepRow> sweep_threshold(const ExperimentConfig& cfg,
                                      std::span<const double> scales);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_number(double x);

CsvTable trajectory_table(const Trajectory& u);
CsvTable sweep_table(const std::vector<SweepRow>& rows);
CsvTable spectral_table(const SpectralReport& report, const SpectralOperator& op);

std::string to_csv(const CsvTable& table);
/// Writes to `path`, or to stdout when the path is empty.
void emit_csv(const CsvTable& table, const std::filesystem::path& path);

nlohmann::json to_json(const FixedPointReport& r);
nlohmann::json to_json(const RoundTripResult& r);
nlohmann::json to_json(const SpectralReport& r);
nlohmann::json to_json(const WellPosednessEstimate& e);
void emit_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace initrec
