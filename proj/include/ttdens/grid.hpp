#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace ttdens {

using RowMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Regular product grid: one strictly increasing coordinate vector per axis.
struct Grid {
    std::vector<std::vector<double>> axes;

    std::size_t dims() const { return axes.size(); }
    std::vector<std::size_t> shape() const;
    std::size_t total_points() const;

    /// Uniform step of axis j; throws if the axis is not equidistant.
    double step(std::size_t axis, double rel_tol = 1e-9) const;
    /// Product of per-axis steps; throws on non-equidistant axes.
    double cell_volume(double rel_tol = 1e-9) const;

    void validate() const;
};

/// Dense d-dimensional array in row-major (last index fastest) order.
struct DenseTensor {
    std::vector<std::size_t> shape;
    std::vector<double> values;

    std::size_t dims() const { return shape.size(); }
    std::size_t size() const { return values.size(); }

    double& at(const std::vector<std::size_t>& idx);
    double at(const std::vector<std::size_t>& idx) const;
    std::size_t flat_index(const std::vector<std::size_t>& idx) const;

    /// View a 2-D tensor as an n1 x n2 matrix (shares storage layout).
    Eigen::Map<const RowMatrixXd> as_matrix() const;

    void validate() const;
};

struct MomentEstimate {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;  // symmetric as stored
    double mass = 0.0;
};

Grid make_equidistant_grid(const std::vector<double>& starts,
                           const std::vector<double>& steps,
                           const std::vector<std::size_t>& counts);

/// Samples f over all grid points, row-major (last index fastest).
/// Throws if f produces a non-finite value, naming the offending multi-index.
DenseTensor sample_function(
    const Grid& grid, const std::function<double(const Eigen::VectorXd&)>& f);

/// Rectangle-rule mass, mean and covariance over an equidistant grid.
/// Small negative values (> -1e-9 * max) are tolerated.
MomentEstimate estimate_moments(const DenseTensor& t, const Grid& grid);

}  // namespace ttdens
