// Experiment runner: regenerates the decomposition tables, negativity
// statistics and grid-interpolation spectra as CSV artifacts.

#include <cstdio>
#include <exception>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ttdens/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Tensor-train density approximation experiments"};
    app.require_subcommand(1);

    ttdens::ExperimentConfig cfg;
    std::string root = "symmetric";
    std::string pivot = "full";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out_dir, "Output directory")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        sub->add_option("--eps", cfg.eps, "Relative precision")
            ->check(CLI::Range(1e-15, 0.999))
            ->capture_default_str();
        sub->add_option("--grid-step", cfg.grid_step, "Gaussian grid step")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--root", root, "Covariance square root kind")
            ->check(CLI::IsMember({"symmetric", "cholesky", "eigen"}))
            ->capture_default_str();
        sub->add_option("--pivot", pivot, "Cross pivot mode")
            ->check(CLI::IsMember({"full", "stochastic"}))
            ->capture_default_str();
    };

    CLI::App* svd_cross =
        app.add_subcommand("svd-cross", "Rank-by-rank SVD and cross anatomy of "
                                        "the radar density matrix");
    CLI::App* quadratic =
        app.add_subcommand("quadratic", "Squeezed functional-train ranks of "
                                        "quadratic forms");
    CLI::App* gauss_ranks =
        app.add_subcommand("gauss-ranks", "TT ranks and negativity of 4-D "
                                          "Gaussian densities");
    CLI::App* grid_transform =
        app.add_subcommand("grid-transform", "Decorrelation, square roots and "
                                             "interpolation spectra");
    for (auto* sub : {svd_cross, quadratic, gauss_ranks, grid_transform})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    cfg.root = root == "cholesky"  ? ttdens::SquareRootKind::Cholesky
               : root == "eigen"   ? ttdens::SquareRootKind::Eigen
                                   : ttdens::SquareRootKind::Symmetric;
    cfg.pivot = pivot == "stochastic" ? ttdens::PivotMode::Stochastic
                                      : ttdens::PivotMode::FullPivot;

    try {
        if (svd_cross->parsed()) ttdens::run_svd_cross(cfg);
        if (quadratic->parsed()) ttdens::run_quadratic(cfg);
        if (gauss_ranks->parsed()) ttdens::run_gauss_ranks(cfg);
        if (grid_transform->parsed()) ttdens::run_grid_transform(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
