#include "adhm/instanton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "adhm/errors.hpp"

namespace adhm {

using Eigen::MatrixXcd;

std::array<cplx, 4> fibre_point(const PointR4& x) {
    return {cplx(1.0), cplx(0.0), std::conj(x.zeta1), -x.zeta2};
}

MatrixXcd projector_V(const MonadMatrices& m, const PointR4& x) {
    const auto z = fibre_point(x);
    const std::array<cplx, 4> jz{-std::conj(z[1]), std::conj(z[0]), -std::conj(z[3]), std::conj(z[2])};
    const int n = 2 * m.k + 2, k = m.k;
    MatrixXcd V = MatrixXcd::Zero(n, 2 * k);
    for (int j = 0; j < 4; ++j) {
        V.leftCols(k) += z[j] * m.M[j];
        V.rightCols(k) += jz[j] * m.M[j];
    }
    return V;
}

std::array<MatrixXcd, 4> projector_dV(const MonadMatrices& m) {
    std::array<MatrixXcd, 4> dV;
    const MatrixXcd V0 = projector_V(m, {});
    for (int mu = 0; mu < 4; ++mu) {
        std::array<double, 4> e{0, 0, 0, 0};
        e[mu] = 1.0;
        dV[mu] = projector_V(m, PointR4::from_real(e)) - V0;
    }
    return dV;
}

namespace {

void require_classical(const ADHMData& d) {
    if (d.model.kind != ModelKind::Classical)
        throw ModelMismatch("numeric projector evaluation needs the classical model, got " + d.model.name());
}

MatrixXcd block_diag2(const MatrixXcd& a) {
    const int k = a.rows();
    MatrixXcd out = MatrixXcd::Zero(2 * k, 2 * k);
    out.topLeftCorner(k, k) = a;
    out.bottomRightCorner(k, k) = a;
    return out;
}

MatrixXcd projector_P(const MonadMatrices& m, const PointR4& x) {
    const int k = m.k;
    MatrixXcd V = projector_V(m, x);
    MatrixXcd rho2 = V.leftCols(k).adjoint() * V.leftCols(k);
    MatrixXcd R = block_diag2(rho2.inverse());
    return MatrixXcd::Identity(V.rows(), V.rows()) - V * R * V.adjoint();
}

int levi_civita(int a, int b, int c, int d) {
    std::array<int, 4> p{a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] == p[j]) return 0;
    int s = 1;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) s = -s;
    return s;
}

double frobenius2(const Curvature& F) {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) s += F[a][b].squaredNorm();
    return s;
}

}  // namespace

ConnectionSample evaluate_projector(const MonadMatrices& m, const PointR4& x) {
    const int k = m.k, n = 2 * k + 2;
    ConnectionSample s;
    s.x = x;
    s.V = projector_V(m, x);
    const MatrixXcd sz = s.V.leftCols(k), sj = s.V.rightCols(k);
    s.rho2 = sz.adjoint() * sz;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s.rho2, Eigen::EigenvaluesOnly);
    const double smin = es.eigenvalues().minCoeff();
    if (smin < kRhoCutoff) {
        std::ostringstream os;
        os << "smallest eigenvalue of rho^2 is " << smin << " at (" << x.zeta1 << ", " << x.zeta2 << ")";
        throw SingularRho(os.str());
    }
    const MatrixXcd rinv = s.rho2.inverse();
    s.Qz = sz * rinv * sz.adjoint();
    s.QJ = sj * rinv * sj.adjoint();
    s.Q = s.V * block_diag2(rinv) * s.V.adjoint();
    s.P = MatrixXcd::Identity(n, n) - s.Q;
    return s;
}

ConnectionSample evaluate_projector(const ADHMData& d, const PointR4& x) {
    require_classical(d);
    return evaluate_projector(build_monad(d), x);
}

ConnectionSample evaluate_connection(const MonadMatrices& m, const PointR4& x) {
    ConnectionSample s = evaluate_projector(m, x);
    const auto dV = projector_dV(m);
    const MatrixXcd R = block_diag2(s.rho2.inverse());
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            s.F[a][b] = s.P * (dV[a] * R * dV[b].adjoint() - dV[b] * R * dV[a].adjoint()) * s.P;
    s.has_curvature = true;
    s.asd_residual = asd_residual(s.F);
    return s;
}

ConnectionSample evaluate_connection(const ADHMData& d, const PointR4& x) {
    require_classical(d);
    return evaluate_connection(build_monad(d), x);
}

Curvature finite_difference_curvature(const MonadMatrices& m, const PointR4& x, double h) {
    std::array<MatrixXcd, 4> dP;
    const auto base = x.real();
    for (int mu = 0; mu < 4; ++mu) {
        auto xp = base, xm = base;
        xp[mu] += h;
        xm[mu] -= h;
        dP[mu] = (projector_P(m, PointR4::from_real(xp)) - projector_P(m, PointR4::from_real(xm))) / (2 * h);
    }
    const MatrixXcd P = projector_P(m, x);
    Curvature F;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) F[a][b] = P * (dP[a] * dP[b] - dP[b] * dP[a]) * P;
    return F;
}

Curvature hodge_star(const Curvature& F, int volume_sign) {
    Curvature S;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            S[a][b] = MatrixXcd::Zero(F[0][0].rows(), F[0][0].cols());
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int e = levi_civita(a, b, c, d);
                    if (e) S[a][b] += 0.5 * volume_sign * e * F[c][d];
                }
        }
    return S;
}

double asd_residual(const Curvature& F, int volume_sign) {
    const Curvature S = hodge_star(F, volume_sign);
    Curvature sum;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) sum[a][b] = F[a][b] + S[a][b];
    const double norm = std::sqrt(frobenius2(F));
    if (norm == 0.0) return 0.0;
    return std::sqrt(frobenius2(sum)) / norm;
}

double chern_density(const Curvature& F, int volume_sign) {
    cplx s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int e = levi_civita(a, b, c, d);
                    if (e) s += 0.25 * volume_sign * e * (F[a][b] * F[c][d]).trace();
                }
    return s.real();
}

std::vector<PointR4> random_points(int n, std::uint64_t seed, const PointR4& center, double scale) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, scale);
    std::vector<PointR4> out;
    const auto c = center.real();
    for (int i = 0; i < n; ++i) {
        std::array<double, 4> x;
        for (int j = 0; j < 4; ++j) x[j] = c[j] + gauss(rng);
        out.push_back(PointR4::from_real(x));
    }
    return out;
}

Report projector_identities(const ADHMData& d, const std::vector<PointR4>& points) {
    require_classical(d);
    const MonadMatrices m = build_monad(d);
    const int k = d.k;
    double herm = 0, idem_q = 0, idem_p = 0, trq = 0, trp = 0, block = 0, orth = 0, idem_qz = 0;
    for (const auto& x : points) {
        ConnectionSample s = evaluate_projector(m, x);
        herm = std::max(herm, (s.Q - s.Q.adjoint()).cwiseAbs().maxCoeff());
        herm = std::max(herm, (s.P - s.P.adjoint()).cwiseAbs().maxCoeff());
        idem_q = std::max(idem_q, (s.Q * s.Q - s.Q).cwiseAbs().maxCoeff());
        idem_p = std::max(idem_p, (s.P * s.P - s.P).cwiseAbs().maxCoeff());
        idem_qz = std::max(idem_qz, (s.Qz * s.Qz - s.Qz).cwiseAbs().maxCoeff());
        idem_qz = std::max(idem_qz, (s.QJ * s.QJ - s.QJ).cwiseAbs().maxCoeff());
        trq = std::max(trq, std::abs(s.Q.trace() - cplx(2.0 * k)));
        trp = std::max(trp, std::abs(s.P.trace() - cplx(2.0)));
        MatrixXcd vv = s.V.adjoint() * s.V;
        block = std::max(block, (vv - block_diag2(s.rho2)).norm() / vv.norm());
        orth = std::max(orth, (s.Qz * s.QJ).cwiseAbs().maxCoeff());
    }
    Report r;
    r.title = "projector identities";
    r.add("V*V is block diagonal rho^2 (relative)", block, 1e-12);
    r.add("Q and P Hermitian", herm, 1e-12);
    r.add("Q^2 = Q", idem_q, 1e-12);
    r.add("P^2 = P", idem_p, 1e-12);
    r.add("Q_z, Q_J(z) idempotent", idem_qz, 1e-12);
    r.add("Q_z Q_J(z) = 0", orth, 1e-12);
    r.add("tr Q = 2k", trq, 1e-10);
    r.add("tr P = 2", trp, 1e-10);
    return r;
}

Report curvature_asd(const ADHMData& d, const std::vector<PointR4>& points, double fd_step) {
    require_classical(d);
    const MonadMatrices m = build_monad(d);
    double asd = 0, fd = 0, anti = 0;
    for (const auto& x : points) {
        ConnectionSample s = evaluate_connection(m, x);
        asd = std::max(asd, s.asd_residual);
        Curvature F2 = finite_difference_curvature(m, x, fd_step);
        double num = 0, den = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                num += (s.F[a][b] - F2[a][b]).squaredNorm();
                den += s.F[a][b].squaredNorm();
                anti = std::max(anti, (s.F[a][b] + s.F[b][a]).cwiseAbs().maxCoeff());
            }
        fd = std::max(fd, den > 0 ? std::sqrt(num / den) : std::sqrt(num));
    }
    Report r;
    r.title = "anti-self-duality";
    r.add("max |F + *F| / |F|", asd, 1e-6);
    r.add("finite-difference curvature (relative)", fd, 1e-3);
    r.add("F antisymmetric", anti, 1e-12);
    return r;
}

namespace {

// Golub-Welsch on [a, b]
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        double beta = i / std::sqrt(4.0 * i * i - 1.0);
        T(i, i - 1) = T(i - 1, i) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double v = es.eigenvectors()(0, i);
        x[i] = 0.5 * (b - a) * es.eigenvalues()[i] + 0.5 * (b + a);
        w[i] = (b - a) * v * v;
    }
}

}  // namespace

ChargeResult charge(const ADHMData& d, const QuadratureSpec& q) {
    require_classical(d);
    if (q.resolution < 1) throw ShapeError("resolution must be at least 1");
    const MonadMatrices m = build_monad(d);
    const int nr = 24 * q.resolution, neta = 6 * q.resolution, nxi = 8 * q.resolution;
    const long evals = static_cast<long>(nr) * neta * nxi * nxi;
    if (evals > q.max_evaluations)
        throw QuadratureBudgetExceeded(std::to_string(evals) + " evaluations exceed the budget of " +
                                       std::to_string(q.max_evaluations));

    // tr rho^2 is quadratic in x; its minimum is the centre
    auto f = [&](const std::array<double, 4>& x) {
        MatrixXcd V = projector_V(m, PointR4::from_real(x));
        return (V.leftCols(d.k).adjoint() * V.leftCols(d.k)).trace().real();
    };
    const std::array<double, 4> zero{0, 0, 0, 0};
    const double f0 = f(zero);
    std::array<double, 4> c{};
    for (int i = 0; i < 4; ++i) {
        auto ep = zero, em = zero;
        ep[i] = 1.0;
        em[i] = -1.0;
        const double fp = f(ep), fm = f(em);
        c[i] = -0.5 * (fp - fm) / (fp + fm - 2 * f0);
    }
    ChargeResult res;
    res.center = PointR4::from_real(c);
    const double fc = f(c);
    if (fc / d.k < kRhoCutoff) throw SingularRho("zero-size instanton at the centre");
    res.scale = std::sqrt(fc / d.k);

    std::vector<double> tr, wr, te, we;
    gauss_legendre(nr, 0.0, std::numbers::pi / 2, tr, wr);
    gauss_legendre(neta, 0.0, std::numbers::pi / 2, te, we);
    const double dxi = 2 * std::numbers::pi / nxi;
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = res.scale * std::tan(tr[i]);
        const double jr = std::pow(r, 3) * res.scale / std::pow(std::cos(tr[i]), 2);
        for (int e = 0; e < neta; ++e) {
            const double je = std::sin(te[e]) * std::cos(te[e]);
            for (int a = 0; a < nxi; ++a)
                for (int b = 0; b < nxi; ++b) {
                    const double x1 = a * dxi, x2 = b * dxi;
                    std::array<double, 4> x{c[0] + r * std::cos(te[e]) * std::cos(x1),
                                            c[1] + r * std::cos(te[e]) * std::sin(x1),
                                            c[2] + r * std::sin(te[e]) * std::cos(x2),
                                            c[3] + r * std::sin(te[e]) * std::sin(x2)};
                    ConnectionSample s = evaluate_connection(m, PointR4::from_real(x));
                    total += wr[i] * we[e] * dxi * dxi * jr * je * chern_density(s.F);
                }
        }
    }
    res.evaluations = evals;
    res.charge = total / (8 * std::numbers::pi * std::numbers::pi);
    return res;
}

ADHMData translate(const ADHMData& d, cplx c1, cplx c2) {
    ADHMData out = d;
    out.B1 += c1 * MatrixXcd::Identity(d.k, d.k);
    out.B2 += c2 * MatrixXcd::Identity(d.k, d.k);
    return out;
}

namespace {

PolyMatrix block_diag2(const PolyMatrix& a) {
    const int k = a.size();
    PolyMatrix out = poly_zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out[i][j] = out[k + i][k + j] = a[i][j];
    return out;
}

PolyMatrix hconcat(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i) out[i].insert(out[i].end(), b[i].begin(), b[i].end());
    return out;
}

}  // namespace

Report symbolic_projector_checks(const ADHMData& d) {
    const TwistModel& model = d.model;
    const EvalParams ep = model.eval_params();
    const int k = d.k;
    const MonadMatrices m = build_monad(d);
    Report rep;
    rep.title = "symbolic projector checks (" + model.name() + ")";

    const RelationSystem rel = derive_relations(model, Space::C4);
    const PolyMatrix sz = sigma_matrix(m), sj = sigma_matrix(m, true);
    const PolyMatrix szs = poly_adjoint(sz, rel), sjs = poly_adjoint(sj, rel);
    const PolyMatrix rho2 = poly_multiply(szs, sz, rel);
    const PolyMatrix monad = poly_multiply(sjs, sz, rel);
    rep.add("sigma_J(z)* sigma_z = 0", poly_max_abs(monad, ep), 1e-10);
    const PolyMatrix rho2j = poly_multiply(sjs, sj, rel);
    rep.add("sigma_z* sigma_z = sigma_J(z)* sigma_J(z)", poly_max_abs(poly_subtract(rho2, rho2j), ep), 1e-10);

    // centrality with symbolic monad letters in the braided tensor product
    {
        const SpaceOptions o{false, 2 * k + 2, k};
        const RelationSystem br = derive_relations(model, {Space::MonadM, Space::C4}, o, {false});
        PolyMatrix s = poly_zero(2 * k + 2, k);
        for (int a = 0; a < 2 * k + 2; ++a)
            for (int c = 0; c < k; ++c)
                for (int l = 1; l <= 4; ++l)
                    s[a][c] += NCPolynomial::generator(monad_gen(Space::MonadM, l, a + 1, c + 1))
                                   .concat(NCPolynomial::generator(z(l)));
        const PolyMatrix r2 = poly_multiply(poly_adjoint(s, br), s, br);
        double worst = 0.0;
        for (const auto& row : r2)
            for (const auto& e : row)
                for (const auto& g : br.generators())
                    worst = std::max(worst, commutator(e, NCPolynomial::generator(g), br).max_abs(ep));
        rep.add("rho^2 entries central", worst, 1e-10);
    }

    // Q^2 - Q with a formal central inverse R of rho^2: the remainder after
    // R rho^2 R = R is V R (V*V - diag(rho^2, rho^2)) R V*
    {
        RelationSystem rr = rel;
        PolyMatrix R = poly_zero(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                GeneratorId g = monad_gen(Space::Aux, 5, a + 1, b + 1);
                rr.add_generator(g, monad_gen(Space::Aux, 5, b + 1, a + 1));
                R[a][b] = NCPolynomial::generator(g);
            }
        const PolyMatrix V = hconcat(sz, sj);
        const PolyMatrix Vs = poly_adjoint(V, rr);
        const PolyMatrix D = poly_subtract(poly_multiply(Vs, V, rr), block_diag2(rho2));
        const PolyMatrix RB = block_diag2(R);
        const PolyMatrix rem = poly_multiply(poly_multiply(poly_multiply(poly_multiply(V, RB, rr), D, rr), RB, rr), Vs, rr);
        rep.add("Q^2 - Q = 0 with rho^-2 adjoined", poly_max_abs(rem, ep), 1e-10);
    }
    return rep;
}

}  // namespace adhm
