#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ttdens/densities.hpp"
#include "ttdens/grid.hpp"
#include "ttdens/grid_transform.hpp"
#include "ttdens/matdecomp.hpp"
#include "ttdens/tensor_train.hpp"

namespace ttdens {

struct ExperimentConfig {
    std::filesystem::path out_dir = "out";
    std::uint64_t seed = 0;
    double eps = 1e-5;
    double grid_step = 0.2;
    SquareRootKind root = SquareRootKind::Symmetric;
    PivotMode pivot = PivotMode::FullPivot;
};

// Canonical setups reused by experiments and tests.

/// x1 = [-5:0.2:8] (66 points), x2 = [0:0.2:8] (41 points).
Grid radar_grid();
/// The radar density sampled on radar_grid(): a 66 x 41 matrix.
DenseTensor radar_tensor(const RadarSpec& spec = {});
/// x_j = [-4:0.2:4], 41 points per axis, d = 4.
Grid gauss_grid_4d(double step = 0.2);

/// A correlation case: label plus the list of one-based correlated pairs.
struct CorrelationCase {
    std::string label;
    std::vector<std::pair<int, int>> pairs;
};

/// The eight cases of the 4-D Gaussian rank table, in table order.
std::vector<CorrelationCase> gauss_rank_cases();
/// The nine quadratic-form cases (the eight above plus "full").
std::vector<CorrelationCase> quadratic_cases();

/// Unit diagonal, value at the listed one-based pairs (default 0.5).
Eigen::MatrixXd correlation_matrix(const CorrelationCase& c, int d = 4,
                                   double value = 0.5);

struct GaussRankResult {
    std::string label;
    std::vector<Eigen::Index> ranks;
    double negative_fraction = 0.0;
};

/// Samples the 4-D Gaussian for one case and compresses it at eps.
GaussRankResult gauss_rank_case(const CorrelationCase& c, double eps,
                                double grid_step = 0.2);

struct HadamardRoundingResult {
    std::vector<Eigen::Index> factor_a;  // ranks of the (1,3) marginal train
    std::vector<Eigen::Index> factor_b;  // ranks of the (2,4) marginal train
    std::vector<Eigen::Index> product;   // ranks after the element-wise product
    std::vector<Eigen::Index> rounded;   // ranks after rounding at eps
};

/// Builds the (1,3)x(2,4) pair-marginal trains, multiplies element-wise and
/// rounds; reproduces the [1,10,100,10,1] -> [1,10,55,10,1] reduction.
HadamardRoundingResult hadamard_rounding_demo(double eps, double grid_step = 0.2);

// Experiment drivers; each writes CSV artifacts into cfg.out_dir.
void run_svd_cross(const ExperimentConfig& cfg);
void run_quadratic(const ExperimentConfig& cfg);
void run_gauss_ranks(const ExperimentConfig& cfg);
void run_grid_transform(const ExperimentConfig& cfg);

}  // namespace ttdens
