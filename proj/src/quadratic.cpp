#include "ttdens/quadratic.hpp"

#include <stdexcept>

namespace ttdens {

Eigen::MatrixXd PolyMatrix::eval(double x) const {
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = at(r, c).eval(x);
    return m;
}

PolyMatrix PolyMatrix::times_const(const Eigen::MatrixXd& m) const {
    if (m.rows() != cols)
        throw std::invalid_argument("PolyMatrix: size mismatch in constant product");
    PolyMatrix out = PolyMatrix::zero(rows, m.cols());
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            Poly2 acc;
            for (Eigen::Index k = 0; k < cols; ++k)
                if (m(k, c) != 0.0) acc += at(r, k).scaled(m(k, c));
            out.at(r, c) = acc;
        }
    return out;
}

void SymmetricQ::validate() const {
    if (Q.rows() != Q.cols())
        throw std::invalid_argument("SymmetricQ: matrix not square");
    if (Q != Q.transpose())
        throw std::invalid_argument("SymmetricQ: matrix not symmetric as stored");
}

std::vector<Eigen::Index> QuadraticCores::ranks() const {
    std::vector<Eigen::Index> r;
    r.reserve(cores.size() + 1);
    r.push_back(cores.empty() ? 1 : cores.front().rows);
    for (const auto& c : cores) r.push_back(c.cols);
    return r;
}

namespace {

// All index arithmetic below follows the one-based dimension numbering of the
// candidate-core construction; q is zero-based.
PolyMatrix candidate_core(const Eigen::MatrixXd& q, Eigen::Index d, Eigen::Index j) {
    const Eigen::Index qj = j - 1;
    if (j == 1) {
        PolyMatrix m = PolyMatrix::zero(1, 3);
        m.at(0, 0) = Poly2::constant(1.0);
        m.at(0, 1) = Poly2::linear(1.0);
        m.at(0, 2) = Poly2::quadratic(q(0, 0));
        return m;
    }
    if (j == d) {
        PolyMatrix m = PolyMatrix::zero(3, 1);
        m.at(0, 0) = Poly2::quadratic(q(d - 1, d - 1));
        m.at(1, 0) = Poly2::linear(1.0);
        m.at(2, 0) = Poly2::constant(1.0);
        return m;
    }
    if (d % 2 == 1 && j == (d + 1) / 2) {
        // middle core for odd dimension
        PolyMatrix m = PolyMatrix::zero(j + 1, d - j + 2);
        m.at(0, 0) = Poly2::constant(1.0);
        for (Eigen::Index t = 1; t <= d - j; ++t)
            m.at(0, t) = Poly2::linear(2.0 * q(qj, j + t - 1));
        m.at(0, d - j + 1) = Poly2::quadratic(q(qj, qj));
        for (Eigen::Index s = 1; s <= j - 1; ++s) {
            for (Eigen::Index t = 1; t <= d - j; ++t)
                m.at(s, t) = Poly2::constant(2.0 * q(s - 1, j + t - 1));
            m.at(s, d - j + 1) = Poly2::linear(2.0 * q(s - 1, qj));
        }
        m.at(j, d - j + 1) = Poly2::constant(1.0);
        return m;
    }
    if (j <= d / 2) {
        // left half: grow the accumulated prefix
        PolyMatrix m = PolyMatrix::zero(j + 1, j + 2);
        m.at(0, 0) = Poly2::constant(1.0);
        m.at(0, j) = Poly2::linear(1.0);
        m.at(0, j + 1) = Poly2::quadratic(q(qj, qj));
        for (Eigen::Index t = 1; t <= j - 1; ++t) {
            m.at(t, t) = Poly2::constant(1.0);
            m.at(t, j + 1) = Poly2::linear(2.0 * q(t - 1, qj));
        }
        m.at(j, j + 1) = Poly2::constant(1.0);
        return m;
    }
    // right half, written as the transpose of the mirrored structure
    PolyMatrix p = PolyMatrix::zero(d - j + 2, d - j + 3);
    p.at(0, 0) = Poly2::constant(1.0);
    for (Eigen::Index t = 1; t <= d - j; ++t) {
        p.at(t, 0) = Poly2::linear(2.0 * q(qj, j + t - 1));
        p.at(t, 1 + t) = Poly2::constant(1.0);
    }
    p.at(d - j + 1, 0) = Poly2::quadratic(q(qj, qj));
    p.at(d - j + 1, 1) = Poly2::linear(1.0);
    p.at(d - j + 1, d - j + 2) = Poly2::constant(1.0);

    PolyMatrix m = PolyMatrix::zero(p.cols, p.rows);
    for (Eigen::Index r = 0; r < p.rows; ++r)
        for (Eigen::Index c = 0; c < p.cols; ++c) m.at(c, r) = p.at(r, c);
    return m;
}

Eigen::MatrixXd correction_matrix(const Eigen::MatrixXd& q, Eigen::Index d) {
    const Eigen::Index h = d / 2;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(h + 2, h + 2);
    D(0, 0) = 1.0;
    D(h + 1, h + 1) = 1.0;
    for (Eigen::Index s = 1; s <= h; ++s)
        for (Eigen::Index t = 1; t <= h; ++t)
            D(s, t) = 2.0 * q(s - 1, h + t - 1);
    return D;
}

bool column_zero(const PolyMatrix& m, Eigen::Index c) {
    for (Eigen::Index r = 0; r < m.rows; ++r)
        if (!m.at(r, c).is_zero()) return false;
    return true;
}

bool row_zero(const PolyMatrix& m, Eigen::Index r) {
    for (Eigen::Index c = 0; c < m.cols; ++c)
        if (!m.at(r, c).is_zero()) return false;
    return true;
}

PolyMatrix drop_column(const PolyMatrix& m, Eigen::Index c) {
    PolyMatrix out = PolyMatrix::zero(m.rows, m.cols - 1);
    for (Eigen::Index r = 0; r < m.rows; ++r)
        for (Eigen::Index k = 0, o = 0; k < m.cols; ++k)
            if (k != c) out.at(r, o++) = m.at(r, k);
    return out;
}

PolyMatrix drop_row(const PolyMatrix& m, Eigen::Index r) {
    PolyMatrix out = PolyMatrix::zero(m.rows - 1, m.cols);
    for (Eigen::Index k = 0, o = 0; k < m.rows; ++k) {
        if (k == r) continue;
        for (Eigen::Index c = 0; c < m.cols; ++c) out.at(o, c) = m.at(k, c);
        ++o;
    }
    return out;
}

}  // namespace

QuadraticCores build_quadratic_cores(const SymmetricQ& sq) {
    sq.validate();
    const Eigen::Index d = sq.dim();
    if (d < 2) throw std::invalid_argument("build_quadratic_cores: need d >= 2");

    QuadraticCores qc;
    qc.cores.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index j = 1; j <= d; ++j)
        qc.cores.push_back(candidate_core(sq.Q, d, j));
    if (d % 2 == 0) {
        const Eigen::Index at = d / 2 - 1;  // absorbed into the left neighbour
        qc.cores[static_cast<std::size_t>(at)] =
            qc.cores[static_cast<std::size_t>(at)].times_const(
                correction_matrix(sq.Q, d));
    }
    return qc;
}

QuadraticCores squeeze_cores(const QuadraticCores& c) {
    QuadraticCores out = c;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t b = 0; b + 1 < out.cores.size(); ++b) {
            auto& lhs = out.cores[b];
            auto& rhs = out.cores[b + 1];
            for (Eigen::Index k = 0; k < lhs.cols;) {
                if (column_zero(lhs, k) || row_zero(rhs, k)) {
                    lhs = drop_column(lhs, k);
                    rhs = drop_row(rhs, k);
                    changed = true;
                } else {
                    ++k;
                }
            }
        }
    }
    return out;
}

double eval_quadratic_cores(const QuadraticCores& c, const Eigen::VectorXd& x) {
    if (static_cast<std::size_t>(x.size()) != c.cores.size())
        throw std::invalid_argument("eval_quadratic_cores: dimension mismatch");
    Eigen::MatrixXd acc = c.cores[0].eval(x(0));
    for (std::size_t j = 1; j < c.cores.size(); ++j)
        acc = (acc * c.cores[j].eval(x(static_cast<Eigen::Index>(j)))).eval();
    if (acc.rows() != 1 || acc.cols() != 1)
        throw std::logic_error("eval_quadratic_cores: chain did not contract to a scalar");
    return acc(0, 0);
}

std::vector<Eigen::Index> quadratic_rank_report(const SymmetricQ& q) {
    return squeeze_cores(build_quadratic_cores(q)).ranks();
}

}  // namespace ttdens
