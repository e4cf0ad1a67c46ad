#include "ttdens/matdecomp.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ttdens {

TruncatedSVD truncated_svd(const Eigen::MatrixXd& M, Eigen::Index r) {
    if (r < 1 || r > std::min(M.rows(), M.cols()))
        throw std::invalid_argument("truncated_svd: rank out of range");
    if (!M.allFinite())
        throw std::invalid_argument("truncated_svd: non-finite input");
    Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    TruncatedSVD out;
    out.U = svd.matrixU().leftCols(r);
    out.S = svd.singularValues().head(r);
    out.V = svd.matrixV().leftCols(r);
    for (Eigen::Index j = 0; j < r; ++j) {
        Eigen::Index imax = 0;
        out.U.col(j).cwiseAbs().maxCoeff(&imax);
        if (out.U(imax, j) < 0.0) {
            out.U.col(j) = -out.U.col(j);
            out.V.col(j) = -out.V.col(j);
        }
    }
    return out;
}

namespace {

double condition_number(const Eigen::MatrixXd& B) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(B);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / s(s.size() - 1);
}

Eigen::MatrixXd reconstruct_from(const Eigen::MatrixXd& C, const Eigen::MatrixXd& B,
                                 const Eigen::MatrixXd& R) {
    if (condition_number(B) > 1e12)
        throw DegradedPivotError("cross: pivot submatrix B numerically singular");
    // A = C (B \ R); B is never inverted explicitly
    return C * B.partialPivLu().solve(R);
}

}  // namespace

CrossFactorization cross_greedy(const Eigen::MatrixXd& M, Eigen::Index r,
                                std::uint64_t seed, PivotMode mode) {
    if (r < 1 || r > std::min(M.rows(), M.cols()))
        throw std::invalid_argument("cross_greedy: rank out of range");
    if (!M.allFinite())
        throw std::invalid_argument("cross_greedy: non-finite input");

    std::mt19937_64 rng(seed);
    CrossFactorization f;
    Eigen::MatrixXd approx = Eigen::MatrixXd::Zero(M.rows(), M.cols());
    const double scale = M.cwiseAbs().maxCoeff();

    for (Eigen::Index t = 0; t < r; ++t) {
        const Eigen::MatrixXd resid = M - approx;
        Eigen::Index pk = 0, pl = 0;
        if (mode == PivotMode::FullPivot) {
            resid.cwiseAbs().maxCoeff(&pk, &pl);
        } else {
            std::uniform_int_distribution<Eigen::Index> pick(0, M.cols() - 1);
            pl = pick(rng);
            // alternate row/column argmax of the residual until stable
            for (int sweep = 0; sweep < 64; ++sweep) {
                Eigen::Index nk, nl;
                resid.col(pl).cwiseAbs().maxCoeff(&nk);
                resid.row(nk).cwiseAbs().maxCoeff(&nl);
                if (nk == pk && nl == pl) break;
                pk = nk;
                pl = nl;
            }
        }
        if (std::abs(resid(pk, pl)) <= 1e-14 * scale) {
            f.rank_deficient = true;
            break;
        }
        f.row_indices.push_back(pk);
        f.col_indices.push_back(pl);

        const Eigen::Index rr = static_cast<Eigen::Index>(f.row_indices.size());
        f.C.resize(M.rows(), rr);
        f.R.resize(rr, M.cols());
        f.B.resize(rr, rr);
        for (Eigen::Index j = 0; j < rr; ++j) {
            f.C.col(j) = M.col(f.col_indices[static_cast<std::size_t>(j)]);
            f.R.row(j) = M.row(f.row_indices[static_cast<std::size_t>(j)]);
            for (Eigen::Index i = 0; i < rr; ++i)
                f.B(i, j) = M(f.row_indices[static_cast<std::size_t>(i)],
                              f.col_indices[static_cast<std::size_t>(j)]);
        }
        approx = reconstruct_from(f.C, f.B, f.R);
    }
    if (f.row_indices.empty())
        throw std::invalid_argument("cross_greedy: zero matrix has no pivot");
    return f;
}

Eigen::MatrixXd cross_reconstruct(const CrossFactorization& f) {
    return reconstruct_from(f.C, f.B, f.R);
}

std::vector<AnatomyStep> update_anatomy(const Eigen::MatrixXd& M,
                                        DecompMethod method, Eigen::Index r_max,
                                        std::uint64_t seed, PivotMode mode) {
    if (r_max < 1) throw std::invalid_argument("update_anatomy: r_max < 1");

    std::vector<AnatomyStep> steps;
    steps.reserve(static_cast<std::size_t>(r_max));
    Eigen::MatrixXd prev = Eigen::MatrixXd::Zero(M.rows(), M.cols());

    CrossFactorization full_cross;
    if (method == DecompMethod::Cross)
        full_cross = cross_greedy(M, r_max, seed, mode);

    for (Eigen::Index r = 1; r <= r_max; ++r) {
        AnatomyStep step;
        if (method == DecompMethod::Svd) {
            step.approximation = truncated_svd(M, r).reconstruct();
        } else {
            const Eigen::Index avail =
                static_cast<Eigen::Index>(full_cross.row_indices.size());
            const Eigen::Index rr = std::min(r, avail);
            CrossFactorization sub;
            sub.row_indices.assign(full_cross.row_indices.begin(),
                                   full_cross.row_indices.begin() + rr);
            sub.col_indices.assign(full_cross.col_indices.begin(),
                                   full_cross.col_indices.begin() + rr);
            sub.C = full_cross.C.leftCols(rr);
            sub.R = full_cross.R.topRows(rr);
            sub.B = full_cross.B.topLeftCorner(rr, rr);
            step.approximation = cross_reconstruct(sub);
        }
        step.update = step.approximation - prev;
        step.error = M - step.approximation;
        step.negative_count = (step.approximation.array() < 0.0).count();
        step.min_value = step.approximation.minCoeff();
        prev = step.approximation;
        steps.push_back(std::move(step));
    }
    return steps;
}

}  // namespace ttdens
