#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snake/casp.hpp"
#include "snake/curve.hpp"
#include "snake/fit_report.hpp"
#include "snake/image.hpp"
#include "snake/kass.hpp"
#include "snake/prob_snake.hpp"
#include "snake/scene.hpp"

namespace snake::cli {

enum ExitCode : int { kOk = 0, kBadConfig = 2, kIoFailure = 3, kModelFailure = 4 };

enum class Model { Prob, Kass, Casp };

std::string model_name(Model m);
/// Throws ConfigError for unknown names.
Model parse_model(const std::string& name);

/// Probabilistic-snake flags; unset fields fall back to the closed or open
/// default schedule depending on the initialization curve.
struct ProbOptions {
    std::optional<int> depth1, depth2, window, max_iter;
    std::optional<double> reg1, reg2, resample_max, epsilon;

    Schedule resolve(bool closed) const;
};

struct ModelParams {
    ProbOptions prob;
    KassParams kass;
    CaspParams casp;
};

struct RunConfig {
    Model model = Model::Prob;
    std::filesystem::path image;
    std::filesystem::path init;
    std::optional<std::filesystem::path> out_curve, out_overlay, report;
    ModelParams params;
};

struct SceneConfig {
    SceneKind kind = SceneKind::Disk;
    SceneParams params;
    std::filesystem::path out_image;
    std::optional<std::filesystem::path> out_truth;
};

struct BenchConfig {
    std::filesystem::path image;
    std::filesystem::path init;
    std::vector<Model> models{Model::Prob, Model::Kass};
    int reps = 5;
    /// Baselines start from the initialization resampled to the knot count
    /// of the prob fit's final curve.
    bool match_knots = true;
    std::optional<std::filesystem::path> out_csv;
    ModelParams params;
};

struct BenchRow {
    Model model = Model::Prob;
    std::size_t knots = 0;       // knots of the final curve
    int iterations = 0;          // of the last repetition
    double median_seconds = 0.0; // over warm repetitions
    double per_iteration_seconds = 0.0;
    std::vector<double> samples;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    std::string environment;
    int reps = 0;
    int warm_reps = 0;
};

/// Runs one model; precondition violations throw ModelError.
FitReport run_model(Model model, const Curve& init, const GrayImage& img, const ModelParams& params);

/// Copy of img with the curve drawn as a 1-px red polyline.
RgbImage render_overlay(const GrayImage& img, const Curve& c);

/// Median of samples; the first is discarded when there are >= 4.
double warm_median(std::vector<double> samples);

/// Raises the glibc mmap and trim thresholds for the rest of the process.
BenchReport bench(const BenchConfig& cfg);
std::string bench_table(const BenchReport& r);
std::string bench_csv(const BenchReport& r);

// Each returns an ExitCode and writes diagnostics to err.
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_scene(const SceneConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: parses subcommands and flags (optionally from
/// --config <file>, with flags taking precedence) and dispatches.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace snake::cli
