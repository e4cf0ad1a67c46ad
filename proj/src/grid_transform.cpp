#include "ttdens/grid_transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ttdens {

void GridMap::validate() const {
    if (root.rows() != root.cols() || mean.size() != root.rows())
        throw std::invalid_argument("GridMap: size mismatch");
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(root);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) == 0.0 || s(0) / s(s.size() - 1) >= 1e12)
        throw std::invalid_argument("GridMap: root is not invertible");
}

GridMap GridMap::identity(Eigen::Index d) {
    return {Eigen::VectorXd::Zero(d), Eigen::MatrixXd::Identity(d, d)};
}

Eigen::MatrixXd covariance_square_root(const Eigen::MatrixXd& Q, SquareRootKind kind) {
    if (Q.rows() != Q.cols() || !Q.isApprox(Q.transpose(), 1e-10))
        throw std::invalid_argument("covariance_square_root: Q not symmetric");
    if (kind == SquareRootKind::Cholesky) {
        Eigen::LLT<Eigen::MatrixXd> llt(Q);
        if (llt.info() != Eigen::Success)
            throw std::invalid_argument("covariance_square_root: Q not positive definite");
        return llt.matrixL();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q);
    if (eig.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("covariance_square_root: Q not positive definite");
    if (kind == SquareRootKind::Symmetric) {
        return eig.eigenvectors() *
               eig.eigenvalues().cwiseSqrt().asDiagonal() *
               eig.eigenvectors().transpose();
    }
    // Eigen kind: columns ordered by descending eigenvalue, sign fixed by the
    // largest-magnitude entry of each eigenvector.
    const Eigen::Index d = Q.rows();
    // The solver sorts ascending; reorder descending while keeping the
    // original relative order of tied eigenvalues.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) order[static_cast<std::size_t>(j)] = j;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return eig.eigenvalues()(a) > eig.eigenvalues()(b);
    });
    Eigen::MatrixXd R(d, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        Eigen::VectorXd v = eig.eigenvectors().col(src);
        Eigen::Index imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        R.col(j) = v * std::sqrt(eig.eigenvalues()(src));
    }
    return R;
}

DenseTensor interpolate_to_grid(const DenseTensor& source, const Grid& source_grid,
                                const Grid& target_grid, const GridMap& map) {
    source.validate();
    source_grid.validate();
    target_grid.validate();
    map.validate();
    if (source.shape != source_grid.shape())
        throw std::invalid_argument("interpolate_to_grid: source shape mismatch");
    const std::size_t d = source_grid.dims();
    if (target_grid.dims() != d || static_cast<std::size_t>(map.mean.size()) != d)
        throw std::invalid_argument("interpolate_to_grid: dimensionality mismatch");

    DenseTensor out;
    out.shape = target_grid.shape();
    out.values.resize(target_grid.total_points());

    std::vector<std::size_t> idx(d, 0);
    Eigen::VectorXd y(static_cast<Eigen::Index>(d));
    std::vector<std::size_t> cell(d);
    std::vector<double> frac(d);

    for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
        for (std::size_t j = 0; j < d; ++j)
            y(static_cast<Eigen::Index>(j)) = target_grid.axes[j][idx[j]];
        const Eigen::VectorXd x = map.mean + map.root * y;

        // per-axis clamped cell coordinate
        for (std::size_t j = 0; j < d; ++j) {
            const auto& a = source_grid.axes[j];
            const double xj = x(static_cast<Eigen::Index>(j));
            if (xj <= a.front()) {
                cell[j] = 0;
                frac[j] = 0.0;
            } else if (xj >= a.back()) {
                cell[j] = a.size() - 2;
                frac[j] = 1.0;
            } else {
                const auto it = std::upper_bound(a.begin(), a.end(), xj);
                cell[j] = static_cast<std::size_t>(it - a.begin()) - 1;
                frac[j] = (xj - a[cell[j]]) / (a[cell[j] + 1] - a[cell[j]]);
            }
        }

        // multilinear combination over the 2^d cell corners
        double acc = 0.0;
        std::vector<std::size_t> corner(d);
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            double w = 1.0;
            for (std::size_t j = 0; j < d; ++j) {
                const bool hi = (mask >> j) & 1u;
                corner[j] = cell[j] + (hi ? 1 : 0);
                w *= hi ? frac[j] : (1.0 - frac[j]);
            }
            acc += w * source.at(corner);
        }
        out.values[flat] = acc;

        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] < out.shape[j]) break;
            idx[j] = 0;
        }
    }
    return out;
}

DenseTensor normalize(const DenseTensor& t, const Grid& grid) {
    const double mass = estimate_moments(t, grid).mass;
    if (!(mass > 0.0)) throw std::runtime_error("normalize: non-positive mass");
    DenseTensor out = t;
    for (double& v : out.values) v /= mass;
    return out;
}

namespace {

Eigen::VectorXd singular_values_of(const DenseTensor& t) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(t.as_matrix());
    return svd.singularValues();
}

}  // namespace

SpectrumComparison spectrum_comparison(
    const DenseTensor& density, const Grid& grid, SquareRootKind kind,
    const Grid& target_grid,
    const std::function<double(const Eigen::VectorXd&)>* exact_f) {
    if (grid.dims() != 2)
        throw std::invalid_argument("spectrum_comparison: d = 2 required");

    SpectrumComparison out;
    const DenseTensor normed = normalize(density, grid);
    out.original = singular_values_of(normed);
    out.moments = estimate_moments(normed, grid);
    out.map = GridMap{out.moments.mean,
                      covariance_square_root(out.moments.covariance, kind)};
    out.map.validate();

    if (exact_f != nullptr) {
        const DenseTensor exact = sample_function(
            target_grid, [&](const Eigen::VectorXd& y) {
                return (*exact_f)(out.map.mean + out.map.root * y);
            });
        out.exact_resample = singular_values_of(normalize(exact, target_grid));
    }

    const DenseTensor interp =
        interpolate_to_grid(normed, grid, target_grid, out.map);
    out.interpolated = singular_values_of(normalize(interp, target_grid));
    return out;
}

}  // namespace ttdens
