#include "adhm/adhm_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "adhm/errors.hpp"

namespace adhm {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

const MatrixXcd* blocks(const ADHMData& d, int i) {
    switch (i) {
        case 0: return &d.B1;
        case 1: return &d.B2;
        case 2: return &d.I;
        default: return &d.J;
    }
}

MatrixXcd* blocks(ADHMData& d, int i) { return const_cast<MatrixXcd*>(blocks(static_cast<const ADHMData&>(d), i)); }

int num_vars(int k) { return 4 * k * k + 8 * k; }

}  // namespace

VectorXd pack(const ADHMData& d) {
    d.validate();
    VectorXd x(num_vars(d.k));
    int p = 0;
    for (int i = 0; i < 4; ++i) {
        const MatrixXcd& m = *blocks(d, i);
        for (int c = 0; c < m.cols(); ++c)
            for (int r = 0; r < m.rows(); ++r) {
                x[p++] = m(r, c).real();
                x[p++] = m(r, c).imag();
            }
    }
    return x;
}

ADHMData unpack(const VectorXd& x, int k, const TwistModel& m) {
    if (x.size() != num_vars(k)) throw ShapeError("unpack: wrong vector length");
    ADHMData d = ADHMData::zeros(k, m);
    int p = 0;
    for (int i = 0; i < 4; ++i) {
        MatrixXcd& a = *blocks(d, i);
        for (int c = 0; c < a.cols(); ++c)
            for (int r = 0; r < a.rows(); ++r) {
                a(r, c) = cplx(x[p], x[p + 1]);
                p += 2;
            }
    }
    return d;
}

VectorXd constraints(const ADHMData& d) {
    const int k = d.k;
    MatrixXcd c = complex_equation(d);
    MatrixXcd h = real_equation(d);
    VectorXd f(3 * k * k);
    int p = 0;
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) {
            f[p++] = c(i, j).real();
            f[p++] = c(i, j).imag();
        }
    for (int i = 0; i < k; ++i) f[p++] = h(i, i).real();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            f[p++] = std::sqrt(2.0) * h(i, j).real();
            f[p++] = std::sqrt(2.0) * h(i, j).imag();
        }
    return f;
}

MatrixXd constraint_jacobian(const ADHMData& d) {
    // the constraints are quadratic, so a unit central difference is exact
    VectorXd x = pack(d);
    MatrixXd jac(3 * d.k * d.k, x.size());
    for (int v = 0; v < x.size(); ++v) {
        VectorXd xp = x, xm = x;
        xp[v] += 1.0;
        xm[v] -= 1.0;
        jac.col(v) = 0.5 * (constraints(unpack(xp, d.k, d.model)) - constraints(unpack(xm, d.k, d.model)));
    }
    return jac;
}

namespace {

struct Attempt {
    VectorXd x;
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> history;
};

Attempt levenberg_marquardt(VectorXd x, int k, const TwistModel& m, const SolveConfig& cfg) {
    Attempt a;
    ADHMData d = unpack(x, k, m);
    VectorXd f = constraints(d);
    double cost = f.squaredNorm();
    double lambda = cfg.damping;
    a.history.push_back(adhm_residual(d).total());
    int it = 0;
    for (; it < cfg.max_iterations; ++it) {
        if (a.history.back() <= cfg.tolerance) break;
        MatrixXd jac = constraint_jacobian(d);
        // underdetermined: solve in the row space, (J J^T + lambda) y = -f, step = J^T y
        MatrixXd jjt = jac * jac.transpose();
        bool accepted = false;
        for (int tries = 0; tries < 40 && !accepted; ++tries) {
            MatrixXd A = jjt;
            A.diagonal().array() += lambda;
            VectorXd y = A.ldlt().solve(-f);
            VectorXd step = jac.transpose() * y;
            VectorXd xn = x + step;
            ADHMData dn = unpack(xn, k, m);
            VectorXd fn = constraints(dn);
            double cn = fn.squaredNorm();
            if (cn < cost) {
                x = xn;
                d = dn;
                f = fn;
                cost = cn;
                lambda = std::max(lambda / 3.0, 1e-15);
                accepted = true;
                a.history.push_back(adhm_residual(d).total());
            } else {
                lambda *= 4.0;
            }
        }
        if (!accepted) break;
    }
    a.x = x;
    a.residual = adhm_residual(d).total();
    a.iterations = it;
    return a;
}

}  // namespace

SolveResult solve(int k, const TwistModel& model, double zeta, const SolveConfig& cfg) {
    if (k < 1) throw ShapeError("k must be positive");
    if (cfg.tolerance <= 0.0 || cfg.multistarts < 1) throw ShapeError("invalid solver configuration");
    if (std::abs(zeta - model.zeta()) > 1e-12) {
        std::ostringstream os;
        os << "zeta " << zeta << " does not match the model level " << model.zeta();
        throw ModelMismatch(os.str());
    }
    std::mt19937_64 rng(cfg.rng_seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double scale = std::max(1.0, std::sqrt(std::abs(zeta)));

    bool have = false;
    SolveResult best;
    double best_norm = 0.0;
    for (int s = 0; s < cfg.multistarts; ++s) {
        VectorXd x0(num_vars(k));
        for (int i = 0; i < x0.size(); ++i) x0[i] = scale * gauss(rng) / std::sqrt(2.0);
        Attempt a = levenberg_marquardt(x0, k, model, cfg);
        double norm = a.x.norm();
        bool better = !have || a.residual < best.residual.total() ||
                      (a.residual == best.residual.total() && norm < best_norm);
        if (better) {
            have = true;
            best.data = unpack(a.x, k, model);
            best.residual = adhm_residual(best.data);
            best.iterations = a.iterations;
            best.multistart_index = s;
            best.history = a.history;
            best_norm = norm;
        }
    }
    if (best.residual.total() > cfg.tolerance) {
        std::ostringstream os;
        os << "no start reached tolerance " << cfg.tolerance << "; best residual " << best.residual.total();
        throw NoConvergence(os.str());
    }
    return best;
}

ADHMData apply_gauge(const ADHMData& d, const MatrixXcd& g) {
    if (g.rows() != d.k || g.cols() != d.k) throw ShapeError("gauge matrix must be k x k");
    MatrixXcd gi = g.inverse();
    ADHMData out = d;
    out.B1 = g * d.B1 * gi;
    out.B2 = g * d.B2 * gi;
    out.I = g * d.I;
    out.J = d.J * gi;
    return out;
}

namespace {

MatrixXcd polar_unitary(const MatrixXcd& a) {
    Eigen::JacobiSVD<MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return svd.matrixU() * svd.matrixV().adjoint();
}

MatrixXcd exp_i_hermitian(const MatrixXcd& h) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
    Eigen::VectorXcd ph = (es.eigenvalues().cast<cplx>() * cplx(0.0, 1.0)).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// Hermitian matrix from k^2 real parameters
MatrixXcd hermitian(const VectorXd& p, int k) {
    MatrixXcd h = MatrixXcd::Zero(k, k);
    int q = 0;
    for (int i = 0; i < k; ++i) h(i, i) = p[q++];
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            h(i, j) = cplx(p[q], p[q + 1]);
            h(j, i) = std::conj(h(i, j));
            q += 2;
        }
    return h;
}

VectorXd gauge_diff(const ADHMData& a, const ADHMData& b, const MatrixXcd& g) {
    return pack(a) - pack(apply_gauge(b, g));
}

double summed_distance(const ADHMData& a, const ADHMData& b, const MatrixXcd& g) {
    ADHMData gb = apply_gauge(b, g);
    return (a.B1 - gb.B1).norm() + (a.B2 - gb.B2).norm() + (a.I - gb.I).norm() + (a.J - gb.J).norm();
}

MatrixXcd refine(const ADHMData& a, const ADHMData& b, MatrixXcd g) {
    const int k = a.k, n = k * k;
    double lambda = 1e-6;
    VectorXd r = gauge_diff(a, b, g);
    for (int it = 0; it < 100; ++it) {
        MatrixXd jac(r.size(), n);
        const double h = 1e-7;
        for (int v = 0; v < n; ++v) {
            VectorXd e = VectorXd::Zero(n);
            e[v] = h;
            VectorXd rp = gauge_diff(a, b, g * exp_i_hermitian(hermitian(e, k)));
            VectorXd rm = gauge_diff(a, b, g * exp_i_hermitian(hermitian(-e, k)));
            jac.col(v) = (rp - rm) / (2 * h);
        }
        MatrixXd A = jac.transpose() * jac;
        VectorXd gr = jac.transpose() * r;
        if (gr.norm() < 1e-14) break;
        bool accepted = false;
        for (int tries = 0; tries < 30 && !accepted; ++tries) {
            MatrixXd Ad = A;
            Ad.diagonal().array() += lambda;
            VectorXd step = Ad.ldlt().solve(-gr);
            MatrixXcd gn = g * exp_i_hermitian(hermitian(step, k));
            VectorXd rn = gauge_diff(a, b, gn);
            if (rn.squaredNorm() < r.squaredNorm()) {
                g = gn;
                r = rn;
                lambda = std::max(lambda / 3.0, 1e-15);
                accepted = true;
            } else {
                lambda *= 4.0;
            }
        }
        if (!accepted) break;
    }
    return g;
}

}  // namespace

MatrixXcd random_unitary(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<MatrixXcd> qr(a);
    MatrixXcd q = qr.householderQ();
    MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        cplx d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

double gauge_distance(const ADHMData& a, const ADHMData& b) {
    a.validate();
    b.validate();
    if (a.k != b.k) throw ShapeError("gauge_distance: different k");
    const int k = a.k;
    std::vector<MatrixXcd> starts;
    starts.push_back(MatrixXcd::Identity(k, k));
    // Procrustes on the framing part
    MatrixXcd c = a.I * b.I.adjoint() + a.J.adjoint() * b.J;
    if (c.norm() > 0) starts.push_back(polar_unitary(c));
    for (int s = 0; s < 6; ++s) starts.push_back(random_unitary(k, 1000 + s));
    double best = summed_distance(a, b, starts[0]);
    for (const auto& g0 : starts) best = std::min(best, summed_distance(a, b, refine(a, b, g0)));
    return best;
}

JacobianAnalysis moduli_dimension(const ADHMData& d) {
    const double res = adhm_residual(d).total();
    if (res > 1e-10) throw NotASolution("ADHM residual " + std::to_string(res) + " exceeds 1e-10");
    const int k = d.k;
    MatrixXd jac = constraint_jacobian(d);
    Eigen::JacobiSVD<MatrixXd> svd(jac);
    JacobianAnalysis out;
    const auto& sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    double smax = sv.size() ? sv[0] : 0.0;
    out.rank_threshold = 1e-7 * smax;
    for (int i = 0; i < sv.size(); ++i)
        if (smax > 0 && sv[i] >= out.rank_threshold) ++out.rank;
    out.raw_nullity = num_vars(k) - out.rank;
    out.gauge_dimension = k * k;
    out.framed_dimension = out.raw_nullity - out.gauge_dimension;
    out.degenerate = out.rank < 3 * k * k;

    // tangent vectors of the u(k) gauge action and the su(2) frame rotations
    auto tangent = [&](const ADHMData& t) { return pack(t); };
    std::vector<VectorXd> gauge, frame;
    for (int q = 0; q < k * k; ++q) {
        VectorXd e = VectorXd::Zero(k * k);
        e[q] = 1.0;
        MatrixXcd xi = cplx(0.0, 1.0) * hermitian(e, k);
        ADHMData t = ADHMData::zeros(k, d.model);
        t.B1 = xi * d.B1 - d.B1 * xi;
        t.B2 = xi * d.B2 - d.B2 * xi;
        t.I = xi * d.I;
        t.J = -d.J * xi;
        gauge.push_back(tangent(t));
    }
    const cplx i(0.0, 1.0);
    std::array<Eigen::Matrix2cd, 3> su2;
    su2[0] << 0, i, i, 0;
    su2[1] << 0, 1, -1, 0;
    su2[2] << i, 0, 0, -i;
    for (const auto& x : su2) {
        ADHMData t = ADHMData::zeros(k, d.model);
        t.I = -d.I * x;
        t.J = x * d.J;
        frame.push_back(tangent(t));
    }
    auto rank_of = [&](const std::vector<VectorXd>& cols) {
        if (cols.empty()) return 0;
        MatrixXd m(cols[0].size(), cols.size());
        for (std::size_t c = 0; c < cols.size(); ++c) m.col(c) = cols[c];
        Eigen::JacobiSVD<MatrixXd> s(m);
        const auto& v = s.singularValues();
        double top = v.size() ? v[0] : 0.0;
        int r = 0;
        for (int c = 0; c < v.size(); ++c)
            if (top > 0 && v[c] >= 1e-7 * top) ++r;
        return r;
    };
    std::vector<VectorXd> both = gauge;
    both.insert(both.end(), frame.begin(), frame.end());
    out.frame_rotation_rank = rank_of(both) - rank_of(gauge);
    return out;
}

}  // namespace adhm
