#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "ttdens/grid.hpp"

namespace ttdens {

/// One order-3 tensor-train core of shape (left, n, right), stored as the
/// left unfolding: a row-major (left*n) x right matrix.
struct TtCore {
    Eigen::Index left = 1;
    Eigen::Index n = 0;
    Eigen::Index right = 1;
    RowMatrixXd data;  // (left*n) x right

    /// The left x right slice for mode index i.
    Eigen::MatrixXd slice(Eigen::Index i) const;
};

struct TensorTrain {
    std::vector<TtCore> cores;

    std::size_t dims() const { return cores.size(); }
    std::vector<std::size_t> shape() const;
    /// [r_0 .. r_d] with r_0 = r_d = 1.
    std::vector<Eigen::Index> ranks() const;

    void validate() const;
};

struct NegativityStats {
    std::size_t count = 0;
    double fraction = 0.0;
    double min_value = 0.0;
};

/// Sequential unfold-SVD construction with relative precision eps; per-step
/// truncation threshold is eps * |t|_F / sqrt(d-1).
TensorTrain tt_svd(const DenseTensor& t, double eps);

/// G(i_1,...,i_d) = G_1(i_1) ... G_d(i_d).
double tt_eval(const TensorTrain& tt, const std::vector<std::size_t>& idx);

/// Materializes all elements; guarded at 1e8 elements.
DenseTensor tt_dense(const TensorTrain& tt);

/// Re-compression at relative precision eps: right-to-left orthogonalization
/// followed by a left-to-right truncated-SVD sweep. Never increases ranks.
TensorTrain tt_round(const TensorTrain& tt, double eps);

/// Element-wise product via core-wise Kronecker products; ranks multiply.
TensorTrain tt_hadamard(const TensorTrain& a, const TensorTrain& b);

NegativityStats negativity_stats(const DenseTensor& t);

/// Rank-r two-core factorization of a 2-D slice, e.g. from an SVD or cross
/// decomposition of the pair marginal: M ~ left * right.
struct PairFactor {
    Eigen::MatrixXd left;   // n_k x r
    Eigen::MatrixXd right;  // r x n_l
};

/// Builds the explicit construction for a density with one correlated pair
/// (k, l), zero-based, k < l: cores at k and l come from the two-core pair
/// factorization, cores strictly between are I_r scaled by the marginal
/// values, the remaining cores are rank-1 marginals. marginals[j] is ignored
/// for j in {k, l}.
TensorTrain tt_from_pair_decomposition(
    const Grid& grid, const std::vector<std::vector<double>>& marginals,
    std::size_t k, std::size_t l, const PairFactor& pair);

}  // namespace ttdens
