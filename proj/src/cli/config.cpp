#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "snake/cli.hpp"
#include "snake/errors.hpp"

namespace snake::cli {

std::string model_name(Model m) {
    switch (m) {
        case Model::Prob: return "prob";
        case Model::Kass: return "kass";
        case Model::Casp: return "casp";
    }
    return "unknown";
}

Model parse_model(const std::string& name) {
    for (Model m : {Model::Prob, Model::Kass, Model::Casp})
        if (model_name(m) == name) return m;
    throw ConfigError("unknown model '" + name + "' (expected prob, kass or casp)");
}

Schedule ProbOptions::resolve(bool closed) const {
    Schedule s = closed ? Schedule::closed_default() : Schedule::open_default();
    if (depth1) s.pass1.depth = *depth1;
    if (depth2) s.pass2.depth = *depth2;
    if (window) {
        if (*window < 1 || *window % 2 == 0) throw ConfigError("window size must be a positive odd number");
        s.pass1.window_half = s.pass2.window_half = *window / 2;
    }
    if (reg1) s.pass1.regularization = *reg1;
    if (reg2) s.pass2.regularization = *reg2;
    if (resample_max) s.resample_max_spacing = *resample_max;
    if (max_iter) s.pass1.max_iterations = s.pass2.max_iterations = *max_iter;
    if (epsilon) s.pass1.epsilon = s.pass2.epsilon = *epsilon;
    s.validate();
    return s;
}

namespace {

void add_model_options(CLI::App* sub, ModelParams& p) {
    sub->add_option("--depth1", p.prob.depth1, "prob: search depth of the coarse pass");
    sub->add_option("--window", p.prob.window, "prob: variance window size (odd)");
    sub->add_option("--reg1", p.prob.reg1, "prob: regularization of the coarse pass");
    sub->add_option("--resample-max", p.prob.resample_max, "prob: max knot spacing after resampling");
    sub->add_option("--depth2", p.prob.depth2, "prob: search depth of the fine pass");
    sub->add_option("--reg2", p.prob.reg2, "prob: regularization of the fine pass");
    sub->add_option("--max-iter", p.prob.max_iter, "prob: iteration cap per pass");
    sub->add_option("--epsilon", p.prob.epsilon, "prob: convergence threshold, pixels");

    sub->add_option("--alpha", p.kass.alpha, "kass: tension")->capture_default_str();
    sub->add_option("--beta", p.kass.beta, "kass: rigidity")->capture_default_str();
    sub->add_option("--lambda", p.kass.lambda, "kass: damping in (0, 1]")->capture_default_str();
    sub->add_option("--kass-iter", p.kass.max_iterations, "kass: iteration cap")->capture_default_str();
    sub->add_option("--kass-epsilon", p.kass.epsilon, "kass: convergence threshold")->capture_default_str();
    sub->add_option("--smoothing", p.kass.smoothing, "kass: Gaussian sigma before the gradient")->capture_default_str();

    sub->add_option("--max-deviation", p.casp.max_deviation, "casp: proposal half-width")->capture_default_str();
    sub->add_option("--iterations", p.casp.iterations, "casp: number of proposals")->capture_default_str();
    sub->add_option("--reg", p.casp.regularization, "casp: regularity weight")->capture_default_str();
    sub->add_option("--k-l", p.casp.k_l, "casp: constant offset")->capture_default_str();
    sub->add_option("--seed", p.casp.seed, "casp: random seed")->capture_default_str();
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Contour fitting with probabilistic, Kass and CASP snakes"};
    app.set_config("--config", "", "TOML/INI file with [run], [scene] or [bench] sections; flags win");
    app.require_subcommand(1);

    RunConfig run_cfg;
    std::string run_model_str = "prob";
    std::string run_image, run_init, run_out_curve, run_overlay, run_report;
    auto* run = app.add_subcommand("run", "Fit one model to an image");
    run->add_option("--model", run_model_str, "prob | kass | casp")->capture_default_str();
    run->add_option("--image", run_image, "P5 or PNG input")->required();
    run->add_option("--init", run_init, "initialization curve (JSON)")->required();
    run->add_option("--out-curve", run_out_curve, "fitted curve output");
    run->add_option("--out-overlay", run_overlay, "P6 overlay output");
    run->add_option("--report", run_report, "run report output (JSON)");
    add_model_options(run, run_cfg.params);

    SceneConfig scene_cfg;
    std::string scene_kind = "disk", scene_image, scene_truth;
    std::optional<double> scene_low, scene_high, scene_noise;
    auto* scene = app.add_subcommand("scene", "Generate a synthetic test scene");
    scene->add_option("--kind", scene_kind, "step-edge | disk | two-region-gaussian | polyline-edge")
        ->capture_default_str();
    scene->add_option("--size", scene_cfg.params.width, "square image size")->capture_default_str();
    scene->add_option("--noise", scene_noise, "Gaussian noise std-dev");
    scene->add_option("--seed", scene_cfg.params.seed, "noise seed")->capture_default_str();
    scene->add_option("--radius", scene_cfg.params.radius, "disk radius")->capture_default_str();
    scene->add_option("--low", scene_low, "background level");
    scene->add_option("--high", scene_high, "foreground level");
    scene->add_option("--out-image", scene_image, "P5 output")->required();
    scene->add_option("--out-truth", scene_truth, "ground-truth curve output (JSON)");

    BenchConfig bench_cfg;
    std::string bench_models = "prob,kass", bench_image, bench_init, bench_csv_path;
    auto* bench_cmd = app.add_subcommand("bench", "Time models on the same image and initialization");
    bench_cmd->add_option("--image", bench_image, "P5 or PNG input")->required();
    bench_cmd->add_option("--init", bench_init, "initialization curve (JSON)")->required();
    bench_cmd->add_option("--models", bench_models, "comma-separated model list")->capture_default_str();
    bench_cmd->add_option("--reps", bench_cfg.reps, "repetitions per model (>= 3)")->capture_default_str();
    bench_cmd->add_option("--out-csv", bench_csv_path, "CSV output");
    bench_cmd->add_flag("!--no-match-knots", bench_cfg.match_knots, "start baselines from the raw initialization");
    add_model_options(bench_cmd, bench_cfg.params);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadConfig;
    }

    try {
        if (run->parsed()) {
            run_cfg.model = parse_model(run_model_str);
            run_cfg.image = run_image;
            run_cfg.init = run_init;
            if (!run_out_curve.empty()) run_cfg.out_curve = run_out_curve;
            if (!run_overlay.empty()) run_cfg.out_overlay = run_overlay;
            if (!run_report.empty()) run_cfg.report = run_report;
            return cmd_run(run_cfg, out, err);
        }
        if (scene->parsed()) {
            const auto kind = parse_scene_kind(scene_kind);
            if (!kind) throw ConfigError("unknown scene kind '" + scene_kind + "'");
            scene_cfg.kind = *kind;
            scene_cfg.params.height = scene_cfg.params.width;
            const bool two_region = *kind == SceneKind::TwoRegionGaussian;
            scene_cfg.params.low = scene_low.value_or(two_region ? 50.0 : 0.0);
            scene_cfg.params.high = scene_high.value_or(two_region ? 150.0 : 100.0);
            scene_cfg.params.noise = scene_noise.value_or(two_region ? 10.0 : 0.0);
            scene_cfg.out_image = scene_image;
            if (!scene_truth.empty()) scene_cfg.out_truth = scene_truth;
            return cmd_scene(scene_cfg, out, err);
        }
        if (bench_cmd->parsed()) {
            bench_cfg.image = bench_image;
            bench_cfg.init = bench_init;
            bench_cfg.models.clear();
            std::stringstream ss(bench_models);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) bench_cfg.models.push_back(parse_model(item));
            if (!bench_csv_path.empty()) bench_cfg.out_csv = bench_csv_path;
            return cmd_bench(bench_cfg, out, err);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kBadConfig;
    }
    return kBadConfig;
}

}  // namespace snake::cli
