#include <fstream>
#include <ostream>

#include "guarded.hpp"
#include "snake/cli.hpp"
#include "snake/curve_io.hpp"
#include "snake/errors.hpp"
#include "snake/image_io.hpp"

namespace snake::cli {

FitReport run_model(Model model, const Curve& init, const GrayImage& img, const ModelParams& params) {
    switch (model) {
        case Model::Prob: return fit(init, img, params.prob.resolve(init.closed()));
        case Model::Kass: return kass_fit(init, img, params.kass);
        case Model::Casp:
            if (!init.closed()) throw ModelError("casp requires closed curve");
            return casp_fit(init, img, params.casp);
    }
    throw ConfigError("unknown model");
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const GrayImage img = load_image(cfg.image);
        const Curve init = load_curve(cfg.init);
        const FitReport report = run_model(cfg.model, init, img, cfg.params);

        if (cfg.out_curve) save_curve(*cfg.out_curve, report.curve);
        if (cfg.out_overlay) save_ppm(*cfg.out_overlay, render_overlay(img, report.curve));
        if (cfg.report) write_text(*cfg.report, report_to_json(report, model_name(cfg.model)));

        out << model_name(cfg.model) << ": " << report.curve.size() << " knots, " << report.total_iterations()
            << " iterations, " << report.total_seconds() * 1e6 << " us\n";
    });
}

int cmd_scene(const SceneConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Scene scene = make_scene(cfg.kind, cfg.params);
        save_pgm(cfg.out_image, scene.image);
        if (cfg.out_truth) save_curve(*cfg.out_truth, scene.truth.curve);
        out << scene_kind_name(cfg.kind) << " " << scene.image.width() << "x" << scene.image.height() << " -> "
            << cfg.out_image.string() << "\n";
    });
}

}  // namespace snake::cli
