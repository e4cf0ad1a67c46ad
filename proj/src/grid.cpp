#include "ttdens/grid.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ttdens {

std::vector<std::size_t> Grid::shape() const {
    std::vector<std::size_t> s;
    s.reserve(axes.size());
    for (const auto& a : axes) s.push_back(a.size());
    return s;
}

std::size_t Grid::total_points() const {
    std::size_t n = 1;
    for (const auto& a : axes) {
        if (a.size() != 0 && n > std::numeric_limits<std::size_t>::max() / a.size())
            throw std::overflow_error("Grid: total point count overflows size_t");
        n *= a.size();
    }
    return n;
}

double Grid::step(std::size_t axis, double rel_tol) const {
    const auto& a = axes.at(axis);
    const double h = (a.back() - a.front()) / static_cast<double>(a.size() - 1);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        if (std::abs((a[i + 1] - a[i]) - h) > rel_tol * std::abs(h))
            throw std::invalid_argument("Grid: axis " + std::to_string(axis) +
                                        " is not equidistant");
    }
    return h;
}

double Grid::cell_volume(double rel_tol) const {
    double v = 1.0;
    for (std::size_t j = 0; j < axes.size(); ++j) v *= step(j, rel_tol);
    return v;
}

void Grid::validate() const {
    if (axes.empty()) throw std::invalid_argument("Grid: no axes");
    for (std::size_t j = 0; j < axes.size(); ++j) {
        const auto& a = axes[j];
        if (a.size() < 2)
            throw std::invalid_argument("Grid: axis " + std::to_string(j) +
                                        " has fewer than 2 points");
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            if (!(a[i] < a[i + 1]))
                throw std::invalid_argument("Grid: axis " + std::to_string(j) +
                                            " not strictly increasing");
    }
    (void)total_points();
}

std::size_t DenseTensor::flat_index(const std::vector<std::size_t>& idx) const {
    if (idx.size() != shape.size())
        throw std::out_of_range("DenseTensor: index dimensionality mismatch");
    std::size_t flat = 0;
    for (std::size_t j = 0; j < shape.size(); ++j) {
        if (idx[j] >= shape[j])
            throw std::out_of_range("DenseTensor: index out of bounds on axis " +
                                    std::to_string(j));
        flat = flat * shape[j] + idx[j];
    }
    return flat;
}

double& DenseTensor::at(const std::vector<std::size_t>& idx) {
    return values[flat_index(idx)];
}

double DenseTensor::at(const std::vector<std::size_t>& idx) const {
    return values[flat_index(idx)];
}

Eigen::Map<const RowMatrixXd> DenseTensor::as_matrix() const {
    if (shape.size() != 2)
        throw std::invalid_argument("DenseTensor: as_matrix requires d = 2");
    return {values.data(), static_cast<Eigen::Index>(shape[0]),
            static_cast<Eigen::Index>(shape[1])};
}

void DenseTensor::validate() const {
    std::size_t n = 1;
    for (auto s : shape) n *= s;
    if (values.size() != n)
        throw std::invalid_argument("DenseTensor: value count does not match shape");
    for (double v : values)
        if (!std::isfinite(v))
            throw std::invalid_argument("DenseTensor: non-finite value");
}

Grid make_equidistant_grid(const std::vector<double>& starts,
                           const std::vector<double>& steps,
                           const std::vector<std::size_t>& counts) {
    if (starts.size() != steps.size() || starts.size() != counts.size())
        throw std::invalid_argument("make_equidistant_grid: size mismatch");
    Grid g;
    g.axes.resize(starts.size());
    for (std::size_t j = 0; j < starts.size(); ++j) {
        if (!(steps[j] > 0.0))
            throw std::invalid_argument("make_equidistant_grid: non-positive step");
        if (counts[j] < 2)
            throw std::invalid_argument("make_equidistant_grid: count < 2");
        auto& a = g.axes[j];
        a.resize(counts[j]);
        for (std::size_t i = 0; i < counts[j]; ++i)
            a[i] = starts[j] + static_cast<double>(i) * steps[j];
    }
    g.validate();
    return g;
}

DenseTensor sample_function(
    const Grid& grid, const std::function<double(const Eigen::VectorXd&)>& f) {
    grid.validate();
    const std::size_t d = grid.dims();
    DenseTensor out;
    out.shape = grid.shape();
    out.values.resize(grid.total_points());

    std::vector<std::size_t> idx(d, 0);
    Eigen::VectorXd x(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) x[static_cast<Eigen::Index>(j)] = grid.axes[j][0];
    for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "sample_function: non-finite value at index (";
            for (std::size_t j = 0; j < d; ++j) msg << (j ? "," : "") << idx[j];
            msg << ")";
            throw std::runtime_error(msg.str());
        }
        out.values[flat] = v;
        // advance multi-index, last axis fastest
        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] < out.shape[j]) {
                x[static_cast<Eigen::Index>(j)] = grid.axes[j][idx[j]];
                break;
            }
            idx[j] = 0;
            x[static_cast<Eigen::Index>(j)] = grid.axes[j][0];
        }
    }
    return out;
}

MomentEstimate estimate_moments(const DenseTensor& t, const Grid& grid) {
    grid.validate();
    if (t.shape != grid.shape())
        throw std::invalid_argument("estimate_moments: tensor/grid shape mismatch");
    const std::size_t d = grid.dims();
    const double vol = grid.cell_volume();

    // Negative values are tolerated: low-rank approximations dip negative.
    double mass = 0.0;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    std::vector<std::size_t> idx(d, 0);
    Eigen::VectorXd x(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) x[static_cast<Eigen::Index>(j)] = grid.axes[j][0];

    auto advance = [&]() {
        for (std::size_t j = d; j-- > 0;) {
            if (++idx[j] < t.shape[j]) {
                x[static_cast<Eigen::Index>(j)] = grid.axes[j][idx[j]];
                return;
            }
            idx[j] = 0;
            x[static_cast<Eigen::Index>(j)] = grid.axes[j][0];
        }
    };

    for (std::size_t flat = 0; flat < t.values.size(); ++flat, advance()) {
        const double w = t.values[flat] * vol;
        mass += w;
        mean += w * x;
    }
    if (!(mass > 0.0))
        throw std::runtime_error("estimate_moments: non-positive mass");
    mean /= mass;

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d),
                                                static_cast<Eigen::Index>(d));
    idx.assign(d, 0);
    for (std::size_t j = 0; j < d; ++j) x[static_cast<Eigen::Index>(j)] = grid.axes[j][0];
    for (std::size_t flat = 0; flat < t.values.size(); ++flat, advance()) {
        const double w = t.values[flat] * vol;
        const Eigen::VectorXd dx = x - mean;
        cov.selfadjointView<Eigen::Lower>().rankUpdate(dx, w);
    }
    cov = cov.selfadjointView<Eigen::Lower>();
    cov /= mass;
    cov = ((cov + cov.transpose()) / 2.0).eval();  // exactly symmetric as stored

    return {mean, cov, mass};
}

}  // namespace ttdens
