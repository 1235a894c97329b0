#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "snake/cli.hpp"
#include "snake/curve_io.hpp"
#include "snake/errors.hpp"
#include "snake/image_io.hpp"

namespace snake::cli {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("snakefit_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int call(std::vector<std::string> args) {
        args.insert(args.begin(), "snakefit");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        out_.str("");
        err_.str("");
        return main_entry(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    void make_disk() {
        ASSERT_EQ(call({"scene", "--kind", "disk", "--size", "128", "--radius", "25", "--noise", "3", "--seed", "1",
                        "--out-image", path("disk.pgm"), "--out-truth", path("truth.json")}),
                  kOk)
            << err_.str();
        save_curve(path("init.json"), circle_curve({63.5, 63.5}, 38.0, 14));
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

TEST_F(Cli, RunProbWritesOutputs) {
    make_disk();
    EXPECT_EQ(call({"run", "--model", "prob", "--image", path("disk.pgm"), "--init", path("init.json"),
                    "--out-curve", path("fit.json"), "--report", path("report.json")}),
              kOk)
        << err_.str();
    const Curve fitted = load_curve(path("fit.json"));
    EXPECT_TRUE(fitted.closed());
    EXPECT_GT(fitted.size(), 14u);
    EXPECT_NE(slurp(path("report.json")).find("\"passes\""), std::string::npos);
}

TEST_F(Cli, CaspRejectsOpenCurve) {
    make_disk();
    save_curve(path("open.json"), Curve({{10, 10}, {60, 60}, {100, 20}}, false));
    EXPECT_EQ(call({"run", "--model", "casp", "--image", path("disk.pgm"), "--init", path("open.json")}),
              kModelFailure);
    EXPECT_NE(err_.str().find("casp requires closed curve"), std::string::npos);
}

TEST_F(Cli, MissingImageIsIoFailure) {
    make_disk();
    EXPECT_EQ(call({"run", "--image", path("nope.pgm"), "--init", path("init.json")}), kIoFailure);
    EXPECT_FALSE(err_.str().empty());
}

TEST_F(Cli, MalformedCurveIsIoFailure) {
    make_disk();
    std::ofstream(path("bad.json")) << "{\"closed\": true, \"knots\": [[1, 2]";
    EXPECT_EQ(call({"run", "--image", path("disk.pgm"), "--init", path("bad.json")}), kIoFailure);
}

TEST_F(Cli, BadConfigurations) {
    make_disk();
    EXPECT_EQ(call({"bench", "--image", path("disk.pgm"), "--init", path("init.json"), "--reps", "1"}), kBadConfig);
    EXPECT_EQ(call({"run", "--model", "nope", "--image", path("disk.pgm"), "--init", path("init.json")}), kBadConfig);
    EXPECT_EQ(call({"run", "--image", path("disk.pgm"), "--init", path("init.json"), "--window", "4"}), kBadConfig);
    EXPECT_EQ(call({"run", "--image", path("disk.pgm"), "--init", path("init.json"), "--model", "kass", "--lambda", "0"}), kBadConfig);
    EXPECT_EQ(call({"frobnicate"}), kBadConfig);
    EXPECT_EQ(call({"scene", "--kind", "hexagon", "--out-image", path("x.pgm")}), kBadConfig);
}

TEST_F(Cli, HelpIsOk) { EXPECT_EQ(call({"--help"}), kOk); }

TEST_F(Cli, SingleModelBenchHasNoRatio) {
    make_disk();
    EXPECT_EQ(call({"bench", "--image", path("disk.pgm"), "--init", path("init.json"), "--models", "prob", "--reps",
                    "3", "--out-csv", path("b.csv")}),
              kOk)
        << err_.str();
    EXPECT_EQ(out_.str().find("ratio_vs"), std::string::npos);
    const std::string csv = slurp(path("b.csv"));
    EXPECT_EQ(csv.find("ratio_vs"), std::string::npos);
    EXPECT_NE(csv.find("prob"), std::string::npos);
}

TEST_F(Cli, TwoModelBenchReportsRatio) {
    make_disk();
    EXPECT_EQ(call({"bench", "--image", path("disk.pgm"), "--init", path("init.json"), "--models", "prob,kass",
                    "--reps", "3"}),
              kOk)
        << err_.str();
    EXPECT_NE(out_.str().find("ratio_vs_prob"), std::string::npos);
}

TEST_F(Cli, SceneIsDeterministic) {
    for (const char* kind : {"step-edge", "disk", "two-region-gaussian", "polyline-edge"}) {
        ASSERT_EQ(call({"scene", "--kind", kind, "--size", "64", "--radius", "20", "--seed", "9", "--noise", "4", "--out-image",
                        path("a.pgm"), "--out-truth", path("a.json")}),
                  kOk);
        ASSERT_EQ(call({"scene", "--kind", kind, "--size", "64", "--radius", "20", "--seed", "9", "--noise", "4", "--out-image",
                        path("b.pgm"), "--out-truth", path("b.json")}),
                  kOk);
        EXPECT_EQ(slurp(path("a.pgm")), slurp(path("b.pgm"))) << kind;
        EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json"))) << kind;
    }
}

TEST_F(Cli, TwoRegionBackgroundStatistics) {
    ASSERT_EQ(call({"scene", "--kind", "two-region-gaussian", "--size", "256", "--seed", "4", "--out-image",
                    path("t.pgm")}),
              kOk);
    const GrayImage img = load_image(path("t.pgm"));
    // Background sample: the four corner 40x40 blocks, far from the disk.
    double n = 0, s = 0, s2 = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            const bool corner = (x < 40 || x >= img.width() - 40) && (y < 40 || y >= img.height() - 40);
            if (!corner) continue;
            n += 1;
            s += img.at(x, y);
            s2 += img.at(x, y) * img.at(x, y);
        }
    const double mean = s / n;
    const double var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, 50.0, 1.0);
    EXPECT_NEAR(var, 100.0, 15.0);
}

TEST_F(Cli, OverlayTouchesOnlyCurvePixels) {
    make_disk();
    ASSERT_EQ(call({"run", "--image", path("disk.pgm"), "--init", path("init.json"), "--out-curve", path("fit.json"),
                    "--out-overlay", path("ov.ppm")}),
              kOk);
    const GrayImage img = load_image(path("disk.pgm"));
    const std::string ppm = slurp(path("ov.ppm"));
    std::istringstream hdr(ppm);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    hdr >> magic >> w >> h >> maxval;
    ASSERT_EQ(magic, "P6");
    EXPECT_EQ(w, img.width());
    EXPECT_EQ(h, img.height());
    const std::size_t offset = static_cast<std::size_t>(hdr.tellg()) + 1;
    ASSERT_EQ(ppm.size(), offset + 3u * w * h);

    const Curve fitted = load_curve(path("fit.json"));
    std::size_t changed = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const auto* px = reinterpret_cast<const unsigned char*>(ppm.data() + offset + 3u * (y * w + x));
            const auto g = static_cast<unsigned char>(img.at(x, y));
            if (px[0] == g && px[1] == g && px[2] == g) continue;
            ++changed;
            EXPECT_EQ(px[0], 255);
            // Bresenham pixels lie within one pixel of the polyline.
            EXPECT_LE(polyline_distance(fitted, {double(x), double(y)}), 1.0) << x << "," << y;
        }
    EXPECT_GT(changed, 50u);
}

TEST_F(Cli, ConfigFileWithOverride) {
    make_disk();
    std::ofstream(path("cfg.toml")) << "[run]\nkass-iter = 1\n[bench]\nreps = 1\n";
    ASSERT_EQ(call({"--config", path("cfg.toml"), "run", "--model", "kass", "--image", path("disk.pgm"), "--init",
                    path("init.json"), "--report", path("r1.json")}),
              kOk)
        << err_.str();
    EXPECT_NE(slurp(path("r1.json")).find("\"iterations\": 1"), std::string::npos) << slurp(path("r1.json"));
    ASSERT_EQ(call({"--config", path("cfg.toml"), "run", "--model", "kass", "--kass-iter", "2", "--image",
                    path("disk.pgm"), "--init", path("init.json"), "--report", path("r2.json")}),
              kOk);
    EXPECT_NE(slurp(path("r2.json")).find("\"iterations\": 2"), std::string::npos) << slurp(path("r2.json"));
}

TEST(CliHelpers, WarmMedian) {
    EXPECT_DOUBLE_EQ(warm_median({9.0, 1.0, 2.0, 3.0}), 2.0);
    EXPECT_DOUBLE_EQ(warm_median({9.0, 1.0, 2.0}), 2.0);
    EXPECT_DOUBLE_EQ(warm_median({100.0, 1.0, 2.0, 3.0, 4.0}), 2.5);
}

TEST(CliHelpers, ProbOptionsResolve) {
    ProbOptions o;
    const Schedule c = o.resolve(true);
    EXPECT_EQ(c.pass1.depth, 25);
    EXPECT_EQ(c.pass2.depth, 5);
    EXPECT_EQ(c.pass2.regularization, 1.0);
    const Schedule op = o.resolve(false);
    EXPECT_EQ(op.pass1.depth, 20);
    EXPECT_EQ(op.pass2.regularization, 0.0);
    o.window = 9;
    o.reg2 = 0.5;
    const Schedule m = o.resolve(true);
    EXPECT_EQ(m.pass1.window_half, 4);
    EXPECT_EQ(m.pass2.window_half, 4);
    EXPECT_EQ(m.pass2.regularization, 0.5);
}

TEST(CliHelpers, ParseModel) {
    EXPECT_EQ(parse_model("kass"), Model::Kass);
    EXPECT_EQ(model_name(Model::Casp), "casp");
    EXPECT_THROW(parse_model("snake"), ConfigError);
}

}  // namespace
}  // namespace snake::cli
