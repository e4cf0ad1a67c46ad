#include "ttdens/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <random>
#include <sstream>

#include "ttdens/io.hpp"
#include "ttdens/quadratic.hpp"

namespace ttdens {

namespace {

constexpr const char* kVersion = "ttdens 0.1.0";

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_header(CsvWriter& csv, const ExperimentConfig& cfg,
                  const std::string& experiment) {
    csv.comment("generated " + timestamp());
    std::ostringstream cfgline;
    cfgline << "experiment=" << experiment << " seed=" << cfg.seed
            << " eps=" << CsvWriter::format(cfg.eps)
            << " grid_step=" << CsvWriter::format(cfg.grid_step)
            << " version=" << kVersion;
    csv.comment(cfgline.str());
}

std::string ranks_to_string(const std::vector<Eigen::Index>& r) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "]";
    return os.str();
}

std::string root_name(SquareRootKind k) {
    switch (k) {
        case SquareRootKind::Symmetric: return "symmetric";
        case SquareRootKind::Cholesky: return "cholesky";
        case SquareRootKind::Eigen: return "eigen";
    }
    return "?";
}

}  // namespace

Grid radar_grid() {
    return make_equidistant_grid({-5.0, 0.0}, {0.2, 0.2}, {66, 41});
}

DenseTensor radar_tensor(const RadarSpec& spec) {
    return sample_function(radar_grid(), [&](const Eigen::VectorXd& x) {
        return radar_pdf(spec, x(0), x(1));
    });
}

Grid gauss_grid_4d(double step) {
    const auto n = static_cast<std::size_t>(std::llround(8.0 / step)) + 1;
    return make_equidistant_grid({-4.0, -4.0, -4.0, -4.0},
                                 {step, step, step, step}, {n, n, n, n});
}

std::vector<CorrelationCase> gauss_rank_cases() {
    return {
        {"empty", {}},
        {"(2,3)", {{2, 3}}},
        {"(1,2)", {{1, 2}}},
        {"(1,3)", {{1, 3}}},
        {"(1,4)", {{1, 4}}},
        {"(1,2), (3,4)", {{1, 2}, {3, 4}}},
        {"(1,3), (2,4)", {{1, 3}, {2, 4}}},
        {"(1,4), (2,3)", {{1, 4}, {2, 3}}},
    };
}

std::vector<CorrelationCase> quadratic_cases() {
    auto cases = gauss_rank_cases();
    cases.push_back({"full", {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}});
    return cases;
}

Eigen::MatrixXd correlation_matrix(const CorrelationCase& c, int d, double value) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Identity(d, d);
    for (const auto& [k, l] : c.pairs) {
        q(k - 1, l - 1) = value;
        q(l - 1, k - 1) = value;
    }
    return q;
}

GaussRankResult gauss_rank_case(const CorrelationCase& c, double eps,
                                double grid_step) {
    const Grid grid = gauss_grid_4d(grid_step);
    GaussianSpec spec{Eigen::VectorXd::Zero(4), correlation_matrix(c)};
    GaussianEvaluator pdf(spec);
    const DenseTensor dense = sample_function(grid, pdf);
    const TensorTrain tt = tt_svd(dense, eps);
    const NegativityStats stats = negativity_stats(tt_dense(tt));
    return {c.label, tt.ranks(), stats.fraction};
}

HadamardRoundingResult hadamard_rounding_demo(double eps, double grid_step) {
    const Grid grid = gauss_grid_4d(grid_step);
    // Pair-marginal density as a 4-D function, constant in the other axes.
    auto pair_density = [&](int k, int l) {
        GaussianSpec spec{Eigen::VectorXd::Zero(2),
                          (Eigen::MatrixXd(2, 2) << 1.0, 0.5, 0.5, 1.0).finished()};
        GaussianEvaluator pdf(spec);
        return sample_function(grid, [pdf, k, l](const Eigen::VectorXd& x) {
            return pdf((Eigen::VectorXd(2) << x(k), x(l)).finished());
        });
    };
    const TensorTrain a = tt_svd(pair_density(0, 2), eps);  // correlates (1,3)
    const TensorTrain b = tt_svd(pair_density(1, 3), eps);  // correlates (2,4)
    const TensorTrain prod = tt_hadamard(a, b);
    const TensorTrain rounded = tt_round(prod, eps);
    return {a.ranks(), b.ranks(), prod.ranks(), rounded.ranks()};
}

void run_svd_cross(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const Grid grid = radar_grid();
    const DenseTensor density = radar_tensor();
    const Eigen::MatrixXd M = density.as_matrix();
    constexpr Eigen::Index r_max = 4;

    {
        const TruncatedSVD svd = truncated_svd(M, r_max);
        CsvWriter csv(cfg.out_dir / "singular_values.csv");
        write_header(csv, cfg, "svd-cross");
        csv.row({"index", "sigma"});
        for (Eigen::Index i = 0; i < svd.S.size(); ++i)
            csv.row({std::to_string(i + 1), CsvWriter::format(svd.S(i))});
    }

    CsvWriter neg(cfg.out_dir / "negativity.csv");
    write_header(neg, cfg, "svd-cross");
    neg.row({"method", "rank", "negative_count", "min_value"});

    for (const auto& [name, method] :
         {std::pair{"svd", DecompMethod::Svd}, {"cross", DecompMethod::Cross}}) {
        const auto steps = update_anatomy(M, method, r_max, cfg.seed, cfg.pivot);
        for (Eigen::Index r = 1; r <= r_max; ++r) {
            const auto& step = steps[static_cast<std::size_t>(r - 1)];
            for (const auto& [kind, mat] :
                 {std::pair<const char*, const Eigen::MatrixXd*>{"approx",
                                                                 &step.approximation},
                  {"update", &step.update},
                  {"error", &step.error}}) {
                CsvWriter csv(cfg.out_dir / (std::string(name) + "_" + kind + "_r" +
                                             std::to_string(r) + ".csv"));
                write_header(csv, cfg, "svd-cross");
                csv.matrix(*mat);
            }
            neg.row({name, std::to_string(r), std::to_string(step.negative_count),
                     CsvWriter::format(step.min_value)});
        }
        if (method == DecompMethod::Cross) {
            const auto f = cross_greedy(M, r_max, cfg.seed, cfg.pivot);
            CsvWriter csv(cfg.out_dir / "cross_pivots.csv");
            write_header(csv, cfg, "svd-cross");
            csv.row({"rank", "row_index", "col_index", "x1", "x2"});
            for (std::size_t i = 0; i < f.row_indices.size(); ++i)
                csv.row({std::to_string(i + 1), std::to_string(f.row_indices[i]),
                         std::to_string(f.col_indices[i]),
                         CsvWriter::format(
                             grid.axes[0][static_cast<std::size_t>(f.row_indices[i])]),
                         CsvWriter::format(
                             grid.axes[1][static_cast<std::size_t>(f.col_indices[i])])});
        }
    }
}

void run_quadratic(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);

    CsvWriter csv(cfg.out_dir / "quadratic_ranks.csv");
    write_header(csv, cfg, "quadratic");
    csv.row({"case", "r0", "r1", "r2", "r3", "r4", "max_eval_residual"});
    for (const auto& c : quadratic_cases()) {
        const SymmetricQ q{correlation_matrix(c)};
        const QuadraticCores squeezed = squeeze_cores(build_quadratic_cores(q));
        const auto ranks = squeezed.ranks();

        double max_resid = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            Eigen::VectorXd x(4);
            for (Eigen::Index i = 0; i < 4; ++i) x(i) = unif(rng);
            const double exact = x.dot(q.Q * x);
            max_resid = std::max(
                max_resid, std::abs(eval_quadratic_cores(squeezed, x) - exact));
        }
        std::vector<std::string> fields{c.label};
        for (auto r : ranks) fields.push_back(std::to_string(r));
        fields.push_back(CsvWriter::format(max_resid));
        csv.row(fields);
    }
}

void run_gauss_ranks(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    if (gauss_grid_4d(cfg.grid_step).total_points() > 100'000'000)
        throw std::length_error("run_gauss_ranks: grid exceeds the dense memory guard");

    CsvWriter csv(cfg.out_dir / "gauss_ranks.csv");
    write_header(csv, cfg, "gauss-ranks");
    csv.row({"case", "r0", "r1", "r2", "r3", "r4", "negative_fraction"});
    for (const auto& c : gauss_rank_cases()) {
        const GaussRankResult res = gauss_rank_case(c, cfg.eps, cfg.grid_step);
        std::vector<std::string> fields{res.label};
        for (auto r : res.ranks) fields.push_back(std::to_string(r));
        fields.push_back(CsvWriter::format(res.negative_fraction));
        csv.row(fields);
    }

    const HadamardRoundingResult h = hadamard_rounding_demo(cfg.eps, cfg.grid_step);
    CsvWriter had(cfg.out_dir / "hadamard_rounding.csv");
    write_header(had, cfg, "gauss-ranks");
    had.row({"stage", "ranks"});
    had.row({"factor_a", ranks_to_string(h.factor_a)});
    had.row({"factor_b", ranks_to_string(h.factor_b)});
    had.row({"product", ranks_to_string(h.product)});
    had.row({"rounded", ranks_to_string(h.rounded)});
}

void run_grid_transform(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.out_dir);
    const Grid grid = radar_grid();
    const DenseTensor density = radar_tensor();
    const Grid target =
        make_equidistant_grid({-3.0, -3.0}, {0.1, 0.1}, {61, 61});
    const RadarSpec spec;
    const std::function<double(const Eigen::VectorXd&)> exact =
        [&](const Eigen::VectorXd& x) { return radar_pdf(spec, x(0), x(1)); };

    for (SquareRootKind kind : {SquareRootKind::Symmetric, SquareRootKind::Cholesky,
                                SquareRootKind::Eigen}) {
        const SpectrumComparison cmp =
            spectrum_comparison(density, grid, kind, target, &exact);
        const std::string tag = root_name(kind);

        CsvWriter csv(cfg.out_dir / ("spectra_" + tag + ".csv"));
        write_header(csv, cfg, "grid-transform");
        csv.row({"index", "sigma_original", "sigma_exact_resample",
                 "sigma_interpolated"});
        const Eigen::Index n = std::min({cmp.original.size(),
                                         cmp.exact_resample.size(),
                                         cmp.interpolated.size()});
        for (Eigen::Index i = 0; i < n; ++i)
            csv.row({std::to_string(i + 1), CsvWriter::format(cmp.original(i)),
                     CsvWriter::format(cmp.exact_resample(i)),
                     CsvWriter::format(cmp.interpolated(i))});

        CsvWriter mom(cfg.out_dir / ("moments_" + tag + ".csv"));
        write_header(mom, cfg, "grid-transform");
        mom.row({"quantity", "value"});
        mom.row({"mass", CsvWriter::format(cmp.moments.mass)});
        mom.row({"mean_1", CsvWriter::format(cmp.moments.mean(0))});
        mom.row({"mean_2", CsvWriter::format(cmp.moments.mean(1))});
        mom.row({"cov_11", CsvWriter::format(cmp.moments.covariance(0, 0))});
        mom.row({"cov_12", CsvWriter::format(cmp.moments.covariance(0, 1))});
        mom.row({"cov_22", CsvWriter::format(cmp.moments.covariance(1, 1))});
        mom.row({"root_11", CsvWriter::format(cmp.map.root(0, 0))});
        mom.row({"root_12", CsvWriter::format(cmp.map.root(0, 1))});
        mom.row({"root_21", CsvWriter::format(cmp.map.root(1, 0))});
        mom.row({"root_22", CsvWriter::format(cmp.map.root(1, 1))});

        const DenseTensor interp = interpolate_to_grid(
            normalize(density, grid), grid, target, cmp.map);
        CsvWriter it(cfg.out_dir / ("interpolated_" + tag + ".csv"));
        write_header(it, cfg, "grid-transform");
        it.matrix(interp.as_matrix());
    }
}

}  // namespace ttdens
