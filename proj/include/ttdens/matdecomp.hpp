#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace ttdens {

/// Thrown when the cross pivot submatrix B becomes numerically singular.
struct DegradedPivotError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncatedSVD {
    Eigen::MatrixXd U;  // n_k x r, column-orthonormal
    Eigen::VectorXd S;  // descending, nonnegative
    Eigen::MatrixXd V;  // n_l x r, column-orthonormal

    Eigen::MatrixXd reconstruct() const { return U * S.asDiagonal() * V.transpose(); }
};

/// Pseudoskeleton factorization M ~ C B^-1 R built from selected columns and
/// rows. C, B, R are copied verbatim from the source matrix.
struct CrossFactorization {
    std::vector<Eigen::Index> col_indices;
    std::vector<Eigen::Index> row_indices;
    Eigen::MatrixXd C;  // n_k x r
    Eigen::MatrixXd B;  // r x r
    Eigen::MatrixXd R;  // r x n_l
    bool rank_deficient = false;  // residual vanished before the requested rank
};

enum class PivotMode { FullPivot, Stochastic };

/// Frobenius-optimal rank-r approximation. Sign convention: the entry of
/// largest magnitude in each U column is made positive.
TruncatedSVD truncated_svd(const Eigen::MatrixXd& M, Eigen::Index r);

/// Rank-incrementing greedy cross. FullPivot scans the whole residual for the
/// next pivot; Stochastic starts each step from a seeded random column and
/// alternates row/column argmax of the residual until a fixpoint.
CrossFactorization cross_greedy(const Eigen::MatrixXd& M, Eigen::Index r,
                                std::uint64_t seed = 0,
                                PivotMode mode = PivotMode::FullPivot);

/// C * B^-1 * R, with B applied through a linear solve (never inverted).
/// Throws DegradedPivotError when cond(B) exceeds 1e12.
Eigen::MatrixXd cross_reconstruct(const CrossFactorization& f);

enum class DecompMethod { Svd, Cross };

struct AnatomyStep {
    Eigen::MatrixXd approximation;  // A_r
    Eigen::MatrixXd update;         // A_r - A_{r-1}
    Eigen::MatrixXd error;          // M - A_r
    Eigen::Index negative_count = 0;
    double min_value = 0.0;
};

/// Rank-by-rank anatomy of an approximation: approximations, their updates and
/// errors for r = 1..r_max, with negativity diagnostics per approximation.
std::vector<AnatomyStep> update_anatomy(const Eigen::MatrixXd& M,
                                        DecompMethod method, Eigen::Index r_max,
                                        std::uint64_t seed = 0,
                                        PivotMode mode = PivotMode::FullPivot);

}  // namespace ttdens
