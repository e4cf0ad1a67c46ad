#pragma once

#include <functional>
#include <optional>

#include <Eigen/Core>

#include "ttdens/grid.hpp"

namespace ttdens {

enum class SquareRootKind { Symmetric, Cholesky, Eigen };

/// Affine coordinate map x = mean + root * y; its inverse decorrelates the
/// density the moments were estimated from.
struct GridMap {
    Eigen::VectorXd mean;
    Eigen::MatrixXd root;

    void validate() const;
    static GridMap identity(Eigen::Index d);
};

/// A square root R of an SPD matrix Q with R R^T = Q.
///   Symmetric: the unique SPD root (R = R^T).
///   Cholesky:  lower-triangular factor.
///   Eigen:     eigenvectors scaled by sqrt of eigenvalues, eigenvalues
///              descending, each column's largest-magnitude entry positive.
Eigen::MatrixXd covariance_square_root(const Eigen::MatrixXd& Q, SquareRootKind kind);

/// Resamples source onto target_grid through x = map(y): multilinear
/// interpolation inside the source bounding box, nearest-grid-point value
/// (per-axis clamping) outside.
DenseTensor interpolate_to_grid(const DenseTensor& source, const Grid& source_grid,
                                const Grid& target_grid, const GridMap& map);

/// Scales the tensor to unit rectangle-rule mass.
DenseTensor normalize(const DenseTensor& t, const Grid& grid);

struct SpectrumComparison {
    Eigen::VectorXd original;        // singular values over the source grid
    Eigen::VectorXd exact_resample;  // over the target grid, exact sampling
    Eigen::VectorXd interpolated;    // over the target grid, interpolated
    GridMap map;
    MomentEstimate moments;
};

/// Spectrum-degradation comparison for a 2-D density: the decorrelation map is
/// built from the normalized tensor's empirical moments, never from analytic
/// ones. exact_resample is left empty when no exact function is provided.
SpectrumComparison spectrum_comparison(
    const DenseTensor& density, const Grid& grid, SquareRootKind kind,
    const Grid& target_grid,
    const std::function<double(const Eigen::VectorXd&)>* exact_f = nullptr);

}  // namespace ttdens
