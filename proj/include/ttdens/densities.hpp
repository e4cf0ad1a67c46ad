#pragma once

#include <Eigen/Core>

namespace ttdens {

struct GaussianSpec {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;  // symmetric positive definite

    void validate() const;
};

/// Range-angle density parameters of the radar example.
struct RadarSpec {
    double mu_r = 6.0;
    double sigma_r = 0.5;
    double mu_a = 1.2;  // radians
    double sigma_a = 0.5;

    void validate() const;
};

/// Normalized multivariate normal density at x.
double gaussian_pdf(const GaussianSpec& spec, const Eigen::VectorXd& x);

/// Caches the Cholesky factor of the covariance for repeated evaluation
/// (grid sampling touches millions of points).
class GaussianEvaluator {
public:
    explicit GaussianEvaluator(GaussianSpec spec);
    double operator()(const Eigen::VectorXd& x) const;

private:
    GaussianSpec spec_;
    Eigen::MatrixXd chol_lower_;
    double log_norm_ = 0.0;
};

///// The range-angle density in Cartesian coordinates:
///   (2 pi sr sa)^-1 exp(-1/2 (r-mu_r)^2/sr^2 - 1/2 (atan2(x2,x1)-mu_a)^2/sa^2)
/// with r = sqrt(x1^2 + x2^2). At the exact origin the angle follows the
/// atan2(0,0) = 0 convention.
double radar_pdf(const RadarSpec& spec, double x1, double x2);

}  // namespace ttdens
