#include "ttdens/tensor_train.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace ttdens {

namespace {

// Smallest rank whose discarded tail energy fits within delta; at least 1.
Eigen::Index select_rank(const Eigen::VectorXd& sigma, double delta) {
    const Eigen::Index n = sigma.size();
    std::vector<double> tail(static_cast<std::size_t>(n) + 1, 0.0);
    for (Eigen::Index i = n; i-- > 0;)
        tail[static_cast<std::size_t>(i)] =
            tail[static_cast<std::size_t>(i) + 1] + sigma(i) * sigma(i);
    const double budget = delta * delta;
    for (Eigen::Index r = 1; r < n; ++r)
        if (tail[static_cast<std::size_t>(r)] <= budget) return r;
    return n;
}

// Right unfolding view: left x (n*right), same row-major storage.
Eigen::Map<const RowMatrixXd> right_unfolding(const TtCore& c) {
    return {c.data.data(), c.left, c.n * c.right};
}

}  // namespace

Eigen::MatrixXd TtCore::slice(Eigen::Index i) const {
    if (i < 0 || i >= n) throw std::out_of_range("TtCore: slice index out of range");
    Eigen::MatrixXd s(left, right);
    for (Eigen::Index a = 0; a < left; ++a) s.row(a) = data.row(a * n + i);
    return s;
}

std::vector<std::size_t> TensorTrain::shape() const {
    std::vector<std::size_t> s;
    s.reserve(cores.size());
    for (const auto& c : cores) s.push_back(static_cast<std::size_t>(c.n));
    return s;
}

std::vector<Eigen::Index> TensorTrain::ranks() const {
    std::vector<Eigen::Index> r;
    r.reserve(cores.size() + 1);
    r.push_back(cores.empty() ? 1 : cores.front().left);
    for (const auto& c : cores) r.push_back(c.right);
    return r;
}

void TensorTrain::validate() const {
    if (cores.empty()) throw std::invalid_argument("TensorTrain: no cores");
    if (cores.front().left != 1 || cores.back().right != 1)
        throw std::invalid_argument("TensorTrain: boundary ranks must be 1");
    for (std::size_t j = 0; j < cores.size(); ++j) {
        const auto& c = cores[j];
        if (c.data.rows() != c.left * c.n || c.data.cols() != c.right)
            throw std::invalid_argument("TensorTrain: core shape mismatch");
        if (!c.data.allFinite())
            throw std::invalid_argument("TensorTrain: non-finite core entries");
        if (j + 1 < cores.size() && c.right != cores[j + 1].left)
            throw std::invalid_argument("TensorTrain: adjacent ranks disagree");
    }
}

TensorTrain tt_svd(const DenseTensor& t, double eps) {
    t.validate();
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("tt_svd: eps must be in (0,1)");
    const std::size_t d = t.shape.size();
    if (d == 0) throw std::invalid_argument("tt_svd: zero-dimensional tensor");

    TensorTrain tt;
    tt.cores.resize(d);
    if (d == 1) {
        auto& c = tt.cores[0];
        c.left = 1;
        c.n = static_cast<Eigen::Index>(t.shape[0]);
        c.right = 1;
        c.data = Eigen::Map<const RowMatrixXd>(t.values.data(), c.n, 1);
        return tt;
    }

    double norm2 = 0.0;
    for (double v : t.values) norm2 += v * v;
    const double delta = eps * std::sqrt(norm2) /
                         std::sqrt(static_cast<double>(d - 1));

    const Eigen::Index total = static_cast<Eigen::Index>(t.values.size());
    Eigen::Index n0 = static_cast<Eigen::Index>(t.shape[0]);
    RowMatrixXd work =
        Eigen::Map<const RowMatrixXd>(t.values.data(), n0, total / n0);
    Eigen::Index r_prev = 1;

    for (std::size_t j = 0; j + 1 < d; ++j) {
        const Eigen::Index nj = static_cast<Eigen::Index>(t.shape[j]);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(work,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::Index rk = select_rank(svd.singularValues(), delta);

        auto& c = tt.cores[j];
        c.left = r_prev;
        c.n = nj;
        c.right = rk;
        c.data = svd.matrixU().leftCols(rk);

        RowMatrixXd carry = svd.singularValues().head(rk).asDiagonal() *
                            svd.matrixV().leftCols(rk).transpose();
        const Eigen::Index n_next = static_cast<Eigen::Index>(t.shape[j + 1]);
        work = Eigen::Map<const RowMatrixXd>(carry.data(), rk * n_next,
                                             carry.cols() / n_next);
        r_prev = rk;
    }
    auto& last = tt.cores[d - 1];
    last.left = r_prev;
    last.n = static_cast<Eigen::Index>(t.shape[d - 1]);
    last.right = 1;
    last.data = work;
    return tt;
}

double tt_eval(const TensorTrain& tt, const std::vector<std::size_t>& idx) {
    if (idx.size() != tt.cores.size())
        throw std::out_of_range("tt_eval: index dimensionality mismatch");
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
    for (std::size_t j = 0; j < tt.cores.size(); ++j) {
        const auto& c = tt.cores[j];
        const Eigen::Index i = static_cast<Eigen::Index>(idx[j]);
        if (i >= c.n) throw std::out_of_range("tt_eval: index out of bounds");
        Eigen::RowVectorXd next = Eigen::RowVectorXd::Zero(c.right);
        for (Eigen::Index a = 0; a < c.left; ++a)
            next += v(a) * c.data.row(a * c.n + i);
        v = std::move(next);
    }
    return v(0);
}

DenseTensor tt_dense(const TensorTrain& tt) {
    tt.validate();
    std::size_t total = 1;
    for (auto n : tt.shape()) total *= n;
    if (total > 100'000'000)
        throw std::length_error("tt_dense: tensor exceeds the 1e8 element guard");

    RowMatrixXd acc = tt.cores[0].data;  // (n_1) x r_1
    for (std::size_t j = 1; j < tt.cores.size(); ++j) {
        const auto& c = tt.cores[j];
        RowMatrixXd prod = acc * right_unfolding(c);  // N x (n*right)
        acc = Eigen::Map<const RowMatrixXd>(prod.data(), prod.rows() * c.n, c.right);
    }
    DenseTensor out;
    out.shape = tt.shape();
    out.values.assign(acc.data(), acc.data() + acc.size());
    return out;
}

TensorTrain tt_round(const TensorTrain& tt, double eps) {
    tt.validate();
    if (!(eps > 0.0 && eps < 1.0))
        throw std::invalid_argument("tt_round: eps must be in (0,1)");
    TensorTrain out = tt;
    const std::size_t d = out.cores.size();
    if (d == 1) return out;

    // Right-to-left orthogonalization: each core becomes row-orthonormal in
    // its right unfolding; the triangular factor is pushed left.
    for (std::size_t j = d - 1; j >= 1; --j) {
        auto& c = out.cores[j];
        const Eigen::MatrixXd M = right_unfolding(c);  // left x (n*right)
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(M.transpose());
        const Eigen::Index m = std::min(M.rows(), M.cols());
        Eigen::MatrixXd thinQ =
            qr.householderQ() * Eigen::MatrixXd::Identity(M.cols(), m);
        Eigen::MatrixXd Lfac = qr.matrixQR()
                                   .topRows(m)
                                   .triangularView<Eigen::Upper>()
                                   .transpose();  // left x m
        RowMatrixXd qt = thinQ.transpose();       // m x (n*right)
        c.data = Eigen::Map<const RowMatrixXd>(qt.data(), m * c.n, c.right);
        c.left = m;
        auto& p = out.cores[j - 1];
        p.data = (p.data * Lfac).eval();
        p.right = m;
    }

    const double norm = out.cores[0].data.norm();
    const double delta = eps * norm / std::sqrt(static_cast<double>(d - 1));

    // Left-to-right truncation sweep.
    for (std::size_t j = 0; j + 1 < d; ++j) {
        auto& c = out.cores[j];
        Eigen::BDCSVD<Eigen::MatrixXd> svd(c.data,
                                           Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::Index rk = select_rank(svd.singularValues(), delta);
        rk = std::min(rk, c.right);  // rounding must never raise a rank
        c.data = svd.matrixU().leftCols(rk);
        c.right = rk;
        Eigen::MatrixXd carry = svd.singularValues().head(rk).asDiagonal() *
                                svd.matrixV().leftCols(rk).transpose();
        auto& nx = out.cores[j + 1];
        RowMatrixXd merged = carry * right_unfolding(nx);  // rk x (n*right)
        nx.data = Eigen::Map<const RowMatrixXd>(merged.data(), rk * nx.n, nx.right);
        nx.left = rk;
    }
    return out;
}

TensorTrain tt_hadamard(const TensorTrain& a, const TensorTrain& b) {
    a.validate();
    b.validate();
    if (a.shape() != b.shape())
        throw std::invalid_argument("tt_hadamard: shape mismatch");

    TensorTrain out;
    out.cores.resize(a.cores.size());
    for (std::size_t j = 0; j < a.cores.size(); ++j) {
        const auto& ca = a.cores[j];
        const auto& cb = b.cores[j];
        auto& c = out.cores[j];
        c.left = ca.left * cb.left;
        c.n = ca.n;
        c.right = ca.right * cb.right;
        c.data.setZero(c.left * c.n, c.right);
        for (Eigen::Index i = 0; i < c.n; ++i)
            for (Eigen::Index a1 = 0; a1 < ca.left; ++a1)
                for (Eigen::Index a2 = 0; a2 < cb.left; ++a2) {
                    const Eigen::Index row = (a1 * cb.left + a2) * c.n + i;
                    for (Eigen::Index b1 = 0; b1 < ca.right; ++b1)
                        for (Eigen::Index b2 = 0; b2 < cb.right; ++b2)
                            c.data(row, b1 * cb.right + b2) =
                                ca.data(a1 * ca.n + i, b1) *
                                cb.data(a2 * cb.n + i, b2);
                }
    }
    return out;
}

NegativityStats negativity_stats(const DenseTensor& t) {
    NegativityStats s;
    s.min_value = t.values.empty() ? 0.0 : t.values.front();
    for (double v : t.values) {
        if (v < 0.0) ++s.count;
        s.min_value = std::min(s.min_value, v);
    }
    s.fraction = t.values.empty()
                     ? 0.0
                     : static_cast<double>(s.count) /
                           static_cast<double>(t.values.size());
    return s;
}

TensorTrain tt_from_pair_decomposition(
    const Grid& grid, const std::vector<std::vector<double>>& marginals,
    std::size_t k, std::size_t l, const PairFactor& pair) {
    grid.validate();
    const std::size_t d = grid.dims();
    if (!(k < l && l < d))
        throw std::invalid_argument("tt_from_pair_decomposition: need k < l < d");
    if (marginals.size() != d)
        throw std::invalid_argument("tt_from_pair_decomposition: need one marginal per axis");
    const Eigen::Index r = pair.left.cols();
    if (pair.right.rows() != r)
        throw std::invalid_argument("tt_from_pair_decomposition: pair factor rank mismatch");
    if (pair.left.rows() != static_cast<Eigen::Index>(grid.axes[k].size()) ||
        pair.right.cols() != static_cast<Eigen::Index>(grid.axes[l].size()))
        throw std::invalid_argument("tt_from_pair_decomposition: pair factor size mismatch");

    TensorTrain tt;
    tt.cores.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        auto& c = tt.cores[j];
        const Eigen::Index n = static_cast<Eigen::Index>(grid.axes[j].size());
        c.n = n;
        if (j == k) {
            c.left = 1;
            c.right = r;
            c.data = pair.left;
        } else if (j == l) {
            c.left = r;
            c.right = 1;
            c.data.resize(r * n, 1);
            for (Eigen::Index a = 0; a < r; ++a)
                for (Eigen::Index i = 0; i < n; ++i)
                    c.data(a * n + i, 0) = pair.right(a, i);
        } else {
            const auto& m = marginals[j];
            if (static_cast<Eigen::Index>(m.size()) != n)
                throw std::invalid_argument(
                    "tt_from_pair_decomposition: marginal size mismatch on axis " +
                    std::to_string(j));
            if (j > k && j < l) {
                // I_r scaled by the marginal values
                c.left = r;
                c.right = r;
                c.data.setZero(r * n, r);
                for (Eigen::Index a = 0; a < r; ++a)
                    for (Eigen::Index i = 0; i < n; ++i)
                        c.data(a * n + i, a) = m[static_cast<std::size_t>(i)];
            } else {
                c.left = 1;
                c.right = 1;
                c.data.resize(n, 1);
                for (Eigen::Index i = 0; i < n; ++i)
                    c.data(i, 0) = m[static_cast<std::size_t>(i)];
            }
        }
    }
    tt.validate();
    return tt;
}

}  // namespace ttdens
