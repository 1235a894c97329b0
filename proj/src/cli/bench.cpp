#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "guarded.hpp"
#include "snake/cli.hpp"
#include "snake/curve_io.hpp"
#include "snake/errors.hpp"
#include "snake/image_io.hpp"
#include "snake/simd/kernels.hpp"

namespace snake::cli {

double warm_median(std::vector<double> samples) {
    if (samples.empty()) return 0.0;
    if (samples.size() >= 4) samples.erase(samples.begin());
    std::sort(samples.begin(), samples.end());
    const std::size_t m = samples.size() / 2;
    return samples.size() % 2 ? samples[m] : 0.5 * (samples[m - 1] + samples[m]);
}

BenchReport bench(const BenchConfig& cfg) {
    if (cfg.reps < 3) throw ConfigError("bench needs at least 3 repetitions");
    if (cfg.models.empty()) throw ConfigError("bench needs at least one model");

#if defined(__GLIBC__)
    // Keep freed blocks in the heap so repetitions do not re-fault fresh pages.
    mallopt(M_MMAP_THRESHOLD, 256 << 20);
    mallopt(M_TRIM_THRESHOLD, 512 << 20);
#endif

    const GrayImage img = load_image(cfg.image);
    const Curve init = load_curve(cfg.init);
    const Schedule schedule = cfg.params.prob.resolve(init.closed());
    Curve matched = init;
    if (cfg.match_knots) {
        // Baselines get as many knots as the prob fit ends with, spread evenly on the initialization.
        const std::size_t n = fit(init, img, schedule).curve.size();
        const double pieces = static_cast<double>(init.closed() ? n : n - 1);
        matched = resample(init, init.length() / pieces);
    }

    BenchReport report;
    report.reps = cfg.reps;
    report.warm_reps = cfg.reps >= 4 ? cfg.reps - 1 : cfg.reps;
    for (Model m : cfg.models) {
        const Curve& start = m == Model::Prob ? init : matched;
        BenchRow row;
        row.model = m;
        for (int r = 0; r < cfg.reps; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            const FitReport fr = run_model(m, start, img, cfg.params);
            row.samples.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            row.knots = fr.curve.size();
            row.iterations = fr.total_iterations();
        }
        row.median_seconds = warm_median(row.samples);
        row.per_iteration_seconds = row.iterations > 0 ? row.median_seconds / row.iterations : 0.0;
        report.rows.push_back(std::move(row));
    }

    std::ostringstream env;
    env << "kernels=" << simd::isa_name(simd::kernels().isa) << " threads=" << std::thread::hardware_concurrency()
#if defined(__clang__)
        << " compiler=clang-" << __clang_major__
#elif defined(__GNUC__)
        << " compiler=gcc-" << __GNUC__
#endif
        ;
    report.environment = env.str();
    return report;
}

std::string bench_table(const BenchReport& r) {
    const bool ratio = r.rows.size() > 1;
    const std::string ref = r.rows.empty() ? "" : model_name(r.rows.front().model);
    std::ostringstream os;
    os << std::fixed;
    os << std::left << std::setw(8) << "model" << std::right << std::setw(8) << "knots" << std::setw(12) << "iterations"
       << std::setw(16) << "median_us" << std::setw(16) << "per_iter_us";
    if (ratio) os << std::setw(16) << ("ratio_vs_" + ref);
    os << "\n";
    for (const auto& row : r.rows) {
        os << std::left << std::setw(8) << model_name(row.model) << std::right << std::setw(8) << row.knots
           << std::setw(12) << row.iterations << std::setw(16) << std::setprecision(2) << row.median_seconds * 1e6
           << std::setw(16) << std::setprecision(3) << row.per_iteration_seconds * 1e6;
        if (ratio) os << std::setw(16) << std::setprecision(2) << row.median_seconds / r.rows.front().median_seconds;
        os << "\n";
    }
    os << "# " << r.environment << ", reps=" << r.reps << " (median over " << r.warm_reps << " warm)\n";
    return os.str();
}

std::string bench_csv(const BenchReport& r) {
    const bool ratio = r.rows.size() > 1;
    std::ostringstream os;
    os << std::setprecision(9);
    os << "model,knots,iterations,median_seconds,per_iteration_seconds";
    if (ratio) os << ",ratio_vs_" << model_name(r.rows.front().model);
    os << "\n";
    for (const auto& row : r.rows) {
        os << model_name(row.model) << "," << row.knots << "," << row.iterations << "," << row.median_seconds << ","
           << row.per_iteration_seconds;
        if (ratio) os << "," << row.median_seconds / r.rows.front().median_seconds;
        os << "\n";
    }
    return os.str();
}

int cmd_bench(const BenchConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const BenchReport r = bench(cfg);
        out << bench_table(r);
        if (cfg.out_csv) {
            std::ofstream f(*cfg.out_csv);
            if (!f) throw IoError("cannot open " + cfg.out_csv->string() + " for writing");
            f << bench_csv(r);
        }
    });
}

}  // namespace snake::cli
