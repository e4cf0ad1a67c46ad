#include "ttdens/densities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace ttdens {

void GaussianSpec::validate() const {
    if (covariance.rows() != covariance.cols())
        throw std::invalid_argument("GaussianSpec: covariance not square");
    if (mean.size() != covariance.rows())
        throw std::invalid_argument("GaussianSpec: mean/covariance size mismatch");
    if (!covariance.isApprox(covariance.transpose(), 1e-12))
        throw std::invalid_argument("GaussianSpec: covariance not symmetric");
    Eigen::LLT<Eigen::MatrixXd> llt(covariance);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("GaussianSpec: covariance not positive definite");
}

void RadarSpec::validate() const {
    if (!(sigma_r > 0.0) || !(sigma_a > 0.0))
        throw std::invalid_argument("RadarSpec: standard deviations must be positive");
}

double gaussian_pdf(const GaussianSpec& spec, const Eigen::VectorXd& x) {
    const Eigen::Index d = spec.mean.size();
    if (x.size() != d)
        throw std::invalid_argument("gaussian_pdf: dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(spec.covariance);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("gaussian_pdf: singular covariance");
    const Eigen::VectorXd diff = x - spec.mean;
    const Eigen::VectorXd z = llt.matrixL().solve(diff);
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        log_det += std::log(llt.matrixL()(i, i));
    const double log_norm =
        -0.5 * static_cast<double>(d) * std::log(2.0 * std::numbers::pi) - log_det;
    return std::exp(log_norm - 0.5 * z.squaredNorm());
}

GaussianEvaluator::GaussianEvaluator(GaussianSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    Eigen::LLT<Eigen::MatrixXd> llt(spec_.covariance);
    chol_lower_ = llt.matrixL();
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < chol_lower_.rows(); ++i)
        log_det += std::log(chol_lower_(i, i));
    log_norm_ = -0.5 * static_cast<double>(spec_.mean.size()) *
                    std::log(2.0 * std::numbers::pi) -
                log_det;
}

double GaussianEvaluator::operator()(const Eigen::VectorXd& x) const {
    const Eigen::VectorXd z =
        chol_lower_.triangularView<Eigen::Lower>().solve(x - spec_.mean);
    return std::exp(log_norm_ - 0.5 * z.squaredNorm());
}

double radar_pdf(const RadarSpec& spec, double x1, double x2) {
    // The mathematical angle is undefined at the origin, but the sampling grid
    // contains it; atan2(0, 0) == 0 per IEEE 754, which keeps the formula
    // evaluable (and the density there is negligible anyway).
    const double r = std::hypot(x1, x2);
    const double ang = std::atan2(x2, x1);
    const double er = (r - spec.mu_r) / spec.sigma_r;
    const double ea = (ang - spec.mu_a) / spec.sigma_a;
    const double norm = 1.0 / (2.0 * std::numbers::pi * spec.sigma_r * spec.sigma_a);
    return norm * std::exp(-0.5 * er * er - 0.5 * ea * ea);
}

}  // namespace ttdens
