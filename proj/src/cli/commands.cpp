#include "mcf/cli/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <vector>

#include <CLI11.hpp>

#include "mcf/closed_form.hpp"
#include "mcf/errors.hpp"
#include "mcf/io/beta_file.hpp"
#include "mcf/io/png_io.hpp"
#include "mcf/metrics.hpp"
#include "mcf/multiscale.hpp"

namespace fs = std::filesystem;

namespace mcf::cli {

namespace {

struct CommonArgs {
    std::string method = "beta5";
    int radius = 1;
    double eps_s = 1e-4;
    double sigma_s = 1.0;
    double eps_cf = 1e-7;
    double lambda = 100.0;
    int scale = 1;
    double tol = 1e-8;
    int max_iter = 0;
    double conf_scale = 100.0;
};

struct MatteArgs : CommonArgs {
    std::string image;
    std::string trimap;
    std::string alpha0;
    std::string confidence;
    std::string out;
    std::string out_beta;
    std::string out_preview;
    int bits = 8;
};

struct CompareArgs {
    std::string a_path;
    std::string b_path;
    std::string csv;
};

struct BenchArgs : CommonArgs {
    std::string dataset;
    std::string out_csv = "bench.csv";
    std::string out_md = "bench.md";
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--method", args.method, "matting method: beta5, window, or cf")
        ->check(CLI::IsMember({"beta5", "window", "cf"}))
        ->capture_default_str();
    cmd->add_option("--radius", args.radius, "window radius for --method window")
        ->check(CLI::Range(1, 32))
        ->capture_default_str();
    cmd->add_option("--eps-s", args.eps_s, "isotropic spatial prior strength")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--sigma-s", args.sigma_s,
                    "moment smoothing width; 0 disables smoothing")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--eps-cf", args.eps_cf, "closed-form covariance regularizer")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--lambda", args.lambda, "anchor weight for trimap-known pixels")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--scale", args.scale, "coarse-to-fine divisor")
        ->check(CLI::IsMember({1, 2, 4}))
        ->capture_default_str();
    cmd->add_option("--tol", args.tol, "solver relative-residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-iter", args.max_iter,
                    "solver iteration cap; 0 selects 10x pixel count")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--conf-scale", args.conf_scale,
                    "multiplier mapping confidence images into weights")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

multiscale::BetaSolveConfig beta_config(const CommonArgs& a) {
    multiscale::BetaSolveConfig c;
    c.stencil = a.method == "window" ? multiscale::BetaStencil::Window
                                     : multiscale::BetaStencil::FivePoint;
    c.radius = a.radius;
    c.spatial = a.sigma_s > 0.0
                    ? laplacian::SpatialPrior::smoothed_moments(a.sigma_s, a.eps_s)
                    : laplacian::SpatialPrior::isotropic(a.eps_s);
    c.lambda_known = a.lambda;
    c.solver.tol = a.tol;
    c.solver.max_iter = a.max_iter;
    return c;
}

cf::CfOptions cf_config(const CommonArgs& a) {
    cf::CfOptions c;
    c.eps = a.eps_cf;
    c.lambda_known = a.lambda;
    c.solver.tol = a.tol;
    c.solver.max_iter = a.max_iter;
    return c;
}

multiscale::PyramidLevel load_level(const std::string& image_path,
                                    const std::string& trimap_path,
                                    const std::string& alpha0_path,
                                    const std::string& confidence_path,
                                    double conf_scale) {
    Image image = io::read_image_rgb(image_path);
    Trimap trimap = trimap_from_gray(io::read_gray(trimap_path));
    std::optional<AlphaMap> alpha0;
    std::optional<ConfidenceMap> confidence;
    if (!alpha0_path.empty()) {
        alpha0 = io::read_gray(alpha0_path);
        confidence = confidence_from_gray(io::read_gray(confidence_path), conf_scale);
    }
    return multiscale::PyramidLevel{std::move(image), std::move(trimap),
                                    std::move(alpha0), std::move(confidence)};
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_beta_preview(const std::string& prefix, const BetaField& beta, int bits) {
    static constexpr std::array<const char*, 4> kSuffix = {"_ar.png", "_ag.png",
                                                           "_ab.png", "_b.png"};
    for (int c = 0; c < 4; ++c) {
        AlphaMap channel(beta.width(), beta.height());
        for (int i = 0; i < beta.pixel_count(); ++i) {
            channel.value(i) = beta[i][c] / 5.0 + 0.5;
        }
        io::write_gray(prefix + kSuffix[static_cast<size_t>(c)], channel, bits);
    }
}

int cmd_matte(const MatteArgs& a) {
    if (a.alpha0.empty() != a.confidence.empty()) {
        std::cerr << "error: --alpha0 and --confidence must be given together\n";
        return 1;
    }
    if (a.method == "cf") {
        if (a.scale != 1) {
            std::cerr << "error: --scale applies to the beta methods only\n";
            return 1;
        }
        if (!a.out_beta.empty() || !a.out_preview.empty()) {
            std::cerr << "error: --method cf produces no filter field to export\n";
            return 1;
        }
    }

    const multiscale::PyramidLevel level =
        load_level(a.image, a.trimap, a.alpha0, a.confidence, a.conf_scale);

    if (a.method == "cf") {
        const AlphaMap alpha =
            cf::solve_cf(level.image, level.trimap, level.alpha0 ? &*level.alpha0 : nullptr,
                         level.confidence ? &*level.confidence : nullptr, cf_config(a));
        io::write_gray(a.out, alpha, a.bits);
        return 0;
    }

    const multiscale::MultiscaleResult result =
        multiscale::matte_multiscale(level, a.scale, beta_config(a));
    io::write_gray(a.out, result.alpha, a.bits);
    if (!a.out_beta.empty()) io::write_beta(a.out_beta, result.beta);
    if (!a.out_preview.empty()) write_beta_preview(a.out_preview, result.beta, a.bits);
    return 0;
}

int cmd_compare(const CompareArgs& a) {
    const AlphaMap map_a = io::read_gray(a.a_path);
    const AlphaMap map_b = io::read_gray(a.b_path);
    const metrics::MatteMetrics m = metrics::compare(map_a, map_b);
    std::printf("SSIM %.6f\nMAD %.6f\nSAD %.6f\n", m.ssim, m.mad, m.sad);
    if (!a.csv.empty()) {
        std::ofstream out(a.csv, std::ios::trunc);
        if (!out) throw IoError("cannot open " + a.csv + " for writing");
        out << "ssim,mad,sad\n"
            << format_value(m.ssim) << ',' << format_value(m.mad) << ','
            << format_value(m.sad) << '\n';
        if (!out) throw IoError("failed to write " + a.csv);
    }
    return 0;
}

std::vector<std::string> discover_dataset(const std::string& dir) {
    static constexpr std::array<const char*, 3> kRoles = {"_trimap", "_alpha0", "_conf"};
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
        const std::string stem = entry.path().stem().string();
        const bool is_role = std::any_of(kRoles.begin(), kRoles.end(), [&](const char* r) {
            return stem.ends_with(r);
        });
        if (is_role) continue;
        if (fs::exists(entry.path().parent_path() / (stem + "_trimap.png"))) {
            names.push_back(stem);
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

struct Aggregate {
    double mean = 0.0;
    double stddev = 0.0;
};

Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    for (double v : values) a.mean += v;
    a.mean /= static_cast<double>(values.size());
    for (double v : values) a.stddev += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(a.stddev / static_cast<double>(values.size()));
    return a;
}

int cmd_bench(const BenchArgs& a) {
    if (a.method == "cf") {
        std::cerr << "error: bench compares closed-form against a beta method; "
                     "pick --method beta5 or window\n";
        return 1;
    }
    if (!fs::is_directory(a.dataset)) {
        std::cerr << "error: dataset directory " << a.dataset << " does not exist\n";
        return 2;
    }
    const std::vector<std::string> names = discover_dataset(a.dataset);
    if (names.empty()) {
        std::cerr << "error: no <name>.png + <name>_trimap.png pairs under " << a.dataset
                  << "\n";
        return 2;
    }

    std::vector<std::pair<std::string, metrics::MatteMetrics>> rows;
    for (const std::string& name : names) {
        const fs::path base = fs::path(a.dataset) / name;
        const std::string alpha0_path = fs::exists(base.string() + "_alpha0.png")
                                            ? base.string() + "_alpha0.png"
                                            : std::string();
        std::string conf_path;
        if (!alpha0_path.empty()) {
            conf_path = base.string() + "_conf.png";
            if (!fs::exists(conf_path)) {
                throw IoError(name + "_alpha0.png present without " + name + "_conf.png");
            }
        }
        const multiscale::PyramidLevel level =
            load_level(base.string() + ".png", base.string() + "_trimap.png", alpha0_path,
                       conf_path, a.conf_scale);
        const AlphaMap alpha_cf =
            cf::solve_cf(level.image, level.trimap, level.alpha0 ? &*level.alpha0 : nullptr,
                         level.confidence ? &*level.confidence : nullptr, cf_config(a));
        const AlphaMap alpha_beta = multiscale::matte_multiscale(level, a.scale,
                                                                 beta_config(a))
                                        .alpha;
        rows.emplace_back(name, metrics::compare(alpha_cf, alpha_beta));
    }

    std::vector<double> ssims, mads, sads;
    for (const auto& [name, m] : rows) {
        ssims.push_back(m.ssim);
        mads.push_back(m.mad);
        sads.push_back(m.sad);
    }
    const Aggregate ssim_agg = aggregate(ssims);
    const Aggregate mad_agg = aggregate(mads);
    const Aggregate sad_agg = aggregate(sads);

    std::ofstream csv(a.out_csv, std::ios::trunc);
    if (!csv) throw IoError("cannot open " + a.out_csv + " for writing");
    csv << "name,ssim,mad,sad\n";
    for (const auto& [name, m] : rows) {
        csv << name << ',' << format_value(m.ssim) << ',' << format_value(m.mad) << ','
            << format_value(m.sad) << '\n';
    }
    csv << "mean," << format_value(ssim_agg.mean) << ',' << format_value(mad_agg.mean)
        << ',' << format_value(sad_agg.mean) << '\n';
    csv << "std," << format_value(ssim_agg.stddev) << ',' << format_value(mad_agg.stddev)
        << ',' << format_value(sad_agg.stddev) << '\n';
    if (!csv) throw IoError("failed to write " + a.out_csv);

    std::ofstream md(a.out_md, std::ios::trunc);
    if (!md) throw IoError("cannot open " + a.out_md + " for writing");
    md << "# closed-form vs " << a.method << " (" << rows.size() << " images, scale "
       << a.scale << ")\n\n";
    md << "| comparison | SSIM mean | SSIM std | SAD mean | SAD std |\n";
    md << "| --- | --- | --- | --- | --- |\n";
    char row[256];
    std::snprintf(row, sizeof(row), "| closed-form vs %s | %.4f | %.4f | %.4f | %.4f |\n",
                  a.method.c_str(), ssim_agg.mean, ssim_agg.stddev, sad_agg.mean,
                  sad_agg.stddev);
    md << row;
    if (!md) throw IoError("failed to write " + a.out_md);

    std::printf("%zu images: SSIM mean %.4f std %.4f, SAD mean %.4f std %.4f\n",
                rows.size(), ssim_agg.mean, ssim_agg.stddev, sad_agg.mean, sad_agg.stddev);
    return 0;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolveError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace

Trimap trimap_from_gray(const AlphaMap& gray) {
    std::vector<TriLabel> labels(static_cast<size_t>(gray.pixel_count()));
    for (int i = 0; i < gray.pixel_count(); ++i) {
        const double v = gray.value(i);
        labels[static_cast<size_t>(i)] = v < 0.2   ? TriLabel::Background
                                         : v > 0.8 ? TriLabel::Foreground
                                                   : TriLabel::Unknown;
    }
    return Trimap(gray.width(), gray.height(), std::move(labels));
}

ConfidenceMap confidence_from_gray(const AlphaMap& gray, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("confidence scale must be positive");
    ConfidenceMap map(gray.width(), gray.height());
    for (int i = 0; i < gray.pixel_count(); ++i) {
        map.value(i) = gray.value(i) * scale;
    }
    return map;
}

int run(int argc, const char* const* argv) {
    CLI::App app{"per-pixel matting filter toolkit"};
    app.require_subcommand(1);

    MatteArgs matte_args;
    CLI::App* matte = app.add_subcommand("matte", "solve a matte from an image and trimap");
    matte->add_option("--image", matte_args.image, "input RGB image")->required();
    matte->add_option("--trimap", matte_args.trimap, "grayscale trimap")->required();
    matte->add_option("--alpha0", matte_args.alpha0, "initial matte estimate");
    matte->add_option("--confidence", matte_args.confidence,
                      "confidence image for --alpha0");
    matte->add_option("--out", matte_args.out, "output matte PNG")->required();
    matte->add_option("--out-beta", matte_args.out_beta, "output filter-field file");
    matte->add_option("--out-preview", matte_args.out_preview,
                      "prefix for per-channel filter previews (channel/5 + 0.5)");
    matte->add_option("--bits", matte_args.bits, "output bit depth")
        ->check(CLI::IsMember({8, 16}))
        ->capture_default_str();
    add_common_flags(matte, matte_args);

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand("compare", "report SSIM/MAD/SAD of two mattes");
    compare->add_option("a", compare_args.a_path, "first matte PNG")->required();
    compare->add_option("b", compare_args.b_path, "second matte PNG")->required();
    compare->add_option("--csv", compare_args.csv, "also write the metrics as CSV");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand(
        "bench", "closed-form vs beta metrics over a directory of image/trimap pairs");
    bench->add_option("dataset", bench_args.dataset, "dataset directory")->required();
    bench->add_option("--out-csv", bench_args.out_csv, "per-image metrics CSV")
        ->capture_default_str();
    bench->add_option("--out-md", bench_args.out_md, "summary Markdown table")
        ->capture_default_str();
    add_common_flags(bench, bench_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (matte->parsed()) return guarded([&] { return cmd_matte(matte_args); });
    if (compare->parsed()) return guarded([&] { return cmd_compare(compare_args); });
    return guarded([&] { return cmd_bench(bench_args); });
}

} // namespace mcf::cli
