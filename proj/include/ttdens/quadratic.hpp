#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

namespace ttdens {

/// Univariate polynomial of degree <= 2; coefficients are (constant, linear,
/// quadratic). Zero means the coefficient is exactly 0.0 -- the construction
/// produces exact zeros, so squeezing can test them symbolically.
struct Poly2 {
    std::array<double, 3> c{0.0, 0.0, 0.0};

    static Poly2 constant(double v) { return {{v, 0.0, 0.0}}; }
    static Poly2 linear(double v) { return {{0.0, v, 0.0}}; }
    static Poly2 quadratic(double v) { return {{0.0, 0.0, v}}; }

    double eval(double x) const { return c[0] + x * (c[1] + x * c[2]); }
    bool is_zero() const { return c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0; }
    Poly2 scaled(double s) const { return {{c[0] * s, c[1] * s, c[2] * s}}; }
    Poly2& operator+=(const Poly2& o) {
        for (int i = 0; i < 3; ++i) c[i] += o.c[i];
        return *this;
    }
};

/// Matrix with Poly2 entries.
struct PolyMatrix {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    std::vector<Poly2> entries;  // row-major

    static PolyMatrix zero(Eigen::Index r, Eigen::Index c) {
        return {r, c, std::vector<Poly2>(static_cast<std::size_t>(r * c))};
    }
    Poly2& at(Eigen::Index r, Eigen::Index c) {
        return entries[static_cast<std::size_t>(r * cols + c)];
    }
    const Poly2& at(Eigen::Index r, Eigen::Index c) const {
        return entries[static_cast<std::size_t>(r * cols + c)];
    }
    Eigen::MatrixXd eval(double x) const;
    /// Right-multiplication by a constant matrix.
    PolyMatrix times_const(const Eigen::MatrixXd& m) const;
};

struct SymmetricQ {
    Eigen::MatrixXd Q;

    void validate() const;
    Eigen::Index dim() const { return Q.rows(); }
};

/// Functional tensor-train cores for the quadratic form x^T Q x; core j holds
/// polynomials in x_j. Boundary ranks are 1.
struct QuadraticCores {
    std::vector<PolyMatrix> cores;

    std::vector<Eigen::Index> ranks() const;
};

/// Exact construction: candidate cores per dimension, the middle core for odd
/// d, and for even d a correction factor absorbed into core d/2 (left choice).
QuadraticCores build_quadratic_cores(const SymmetricQ& q);

/// Removes matched zero columns/rows in adjacent cores until fixpoint; the
/// represented function is unchanged.
QuadraticCores squeeze_cores(const QuadraticCores& c);

double eval_quadratic_cores(const QuadraticCores& c, const Eigen::VectorXd& x);

/// Ranks of the squeezed cores.
std::vector<Eigen::Index> quadratic_rank_report(const SymmetricQ& q);

}  // namespace ttdens
