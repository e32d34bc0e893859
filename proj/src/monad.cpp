#include "adhm/monad.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "adhm/errors.hpp"

namespace adhm {

using Eigen::MatrixXcd;

ADHMData ADHMData::zeros(int k, const TwistModel& m) {
    ADHMData d;
    d.k = k;
    d.model = m;
    d.B1 = MatrixXcd::Zero(k, k);
    d.B2 = MatrixXcd::Zero(k, k);
    d.I = MatrixXcd::Zero(k, 2);
    d.J = MatrixXcd::Zero(2, k);
    return d;
}

void ADHMData::validate() const {
    if (k < 1) throw ShapeError("k must be positive");
    auto check = [&](const MatrixXcd& a, int r, int c, const char* name) {
        if (a.rows() != r || a.cols() != c)
            throw ShapeError(std::string(name) + " has shape " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected " + std::to_string(r) + "x" + std::to_string(c));
        if (!a.allFinite()) throw ShapeError(std::string(name) + " has non-finite entries");
    };
    check(B1, k, k, "B1");
    check(B2, k, k, "B2");
    check(I, k, 2, "I");
    check(J, 2, k, "J");
}

MatrixXcd complex_equation(const ADHMData& d) {
    d.validate();
    cplx mu = d.model.mu();
    return std::conj(mu) * d.B1 * d.B2 - mu * d.B2 * d.B1 + d.I * d.J;
}

MatrixXcd real_equation(const ADHMData& d) {
    d.validate();
    MatrixXcd r = d.B1 * d.B1.adjoint() - d.B1.adjoint() * d.B1 + d.B2 * d.B2.adjoint() - d.B2.adjoint() * d.B2 +
                  d.I * d.I.adjoint() - d.J.adjoint() * d.J;
    r -= d.model.zeta() * MatrixXcd::Identity(d.k, d.k);
    return r;
}

AdhmResidual adhm_residual(const ADHMData& d) {
    return {complex_equation(d).norm(), real_equation(d).norm()};
}

MonadMatrices build_monad(const ADHMData& d) {
    d.validate();
    const int k = d.k, n = 2 * k + 2;
    const cplx mu = d.model.mu(), mub = std::conj(mu);
    MonadMatrices m;
    m.k = k;
    for (int j = 0; j < 4; ++j) {
        m.M[j] = MatrixXcd::Zero(n, k);
        m.N[j] = MatrixXcd::Zero(k, n);
    }
    const MatrixXcd one = MatrixXcd::Identity(k, k);
    m.M[2].block(0, 0, k, k) = one;
    m.M[3].block(k, 0, k, k) = one;
    m.N[2].block(0, k, k, k) = one;
    m.N[3].block(0, 0, k, k) = -one;

    m.M[0].block(0, 0, k, k) = d.B1;
    m.M[0].block(k, 0, k, k) = d.B2;
    m.M[0].block(2 * k, 0, 2, k) = d.J;
    m.M[1].block(0, 0, k, k) = -mub * d.B2.adjoint();
    m.M[1].block(k, 0, k, k) = mu * d.B1.adjoint();
    m.M[1].block(2 * k, 0, 2, k) = d.I.adjoint();

    m.N[0].block(0, 0, k, k) = -mu * d.B2;
    m.N[0].block(0, k, k, k) = mub * d.B1;
    m.N[0].block(0, 2 * k, k, 2) = d.I;
    m.N[1].block(0, 0, k, k) = -d.B1.adjoint();
    m.N[1].block(0, k, k, k) = -d.B2.adjoint();
    m.N[1].block(0, 2 * k, k, 2) = -d.J.adjoint();
    m.self_conjugate = true;
    return m;
}

double reality_residual(const MonadMatrices& m) {
    double r = 0.0;
    r = std::max(r, (m.N[0] - m.M[1].adjoint()).cwiseAbs().maxCoeff());
    r = std::max(r, (m.N[1] + m.M[0].adjoint()).cwiseAbs().maxCoeff());
    r = std::max(r, (m.N[2] - m.M[3].adjoint()).cwiseAbs().maxCoeff());
    r = std::max(r, (m.N[3] + m.M[2].adjoint()).cwiseAbs().maxCoeff());
    return r;
}

PolyMatrix poly_zero(int rows, int cols) {
    return PolyMatrix(rows, std::vector<NCPolynomial>(cols));
}

PolyMatrix poly_multiply(const PolyMatrix& a, const PolyMatrix& b, const RelationSystem& rel) {
    if (a.empty() || b.empty() || a[0].size() != b.size()) throw ShapeError("poly_multiply: inner dimensions differ");
    PolyMatrix out = poly_zero(a.size(), b[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j) {
            NCPolynomial s;
            for (std::size_t r = 0; r < b.size(); ++r)
                if (!a[i][r].is_zero() && !b[r][j].is_zero()) s += a[i][r].concat(b[r][j]);
            out[i][j] = normal_form(s, rel);
        }
    return out;
}

PolyMatrix poly_adjoint(const PolyMatrix& a, const RelationSystem& rel) {
    PolyMatrix out = poly_zero(a.empty() ? 0 : a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = adjoint(a[i][j], rel);
    return out;
}

PolyMatrix poly_subtract(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] -= b[i][j];
    return out;
}

double poly_max_abs(const PolyMatrix& a, const EvalParams& p) {
    double m = 0.0;
    for (const auto& row : a)
        for (const auto& e : row) m = std::max(m, e.max_abs(p));
    return m;
}

namespace {

NCPolynomial scaled(cplx c, const NCPolynomial& p) {
    if (std::abs(c) <= kCoeffTol) return {};
    return Coefficient(c) * p;
}

PolyMatrix linear_matrix(const std::array<MatrixXcd, 4>& A, const std::array<NCPolynomial, 4>& letters) {
    PolyMatrix out = poly_zero(A[0].rows(), A[0].cols());
    for (int j = 0; j < 4; ++j)
        for (int a = 0; a < A[j].rows(); ++a)
            for (int b = 0; b < A[j].cols(); ++b) out[a][b] += scaled(A[j](a, b), letters[j]);
    return out;
}

std::array<NCPolynomial, 4> z_letters() {
    return {NCPolynomial::generator(z(1)), NCPolynomial::generator(z(2)), NCPolynomial::generator(z(3)),
            NCPolynomial::generator(z(4))};
}

SpaceOptions monad_options(int k) { return {false, 2 * k + 2, k}; }

}  // namespace

PolyMatrix sigma_matrix(const MonadMatrices& m, bool quaternionic) {
    if (!quaternionic) return linear_matrix(m.M, z_letters());
    std::array<NCPolynomial, 4> jz{Coefficient(-1.0) * NCPolynomial::generator(z(2, true)),
                                   NCPolynomial::generator(z(1, true)),
                                   Coefficient(-1.0) * NCPolynomial::generator(z(4, true)),
                                   NCPolynomial::generator(z(3, true))};
    return linear_matrix(m.M, jz);
}

PolyMatrix tau_matrix(const MonadMatrices& m) { return linear_matrix(m.N, z_letters()); }

PolyMatrix monad_residual(const MonadMatrices& m, const TwistModel& model, const RelationSystem& c4) {
    const int k = m.k;
    auto zs = z_letters();
    PolyMatrix out = poly_zero(k, k);
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            MatrixXcd NM = m.N[j] * m.M[l];
            NCPolynomial word = zs[j].concat(zs[l]);
            for (int d = 0; d < k; ++d)
                for (int b = 0; b < k; ++b) out[d][b] += scaled(NM(d, b), word);
        }
    (void)model;
    for (auto& row : out)
        for (auto& e : row) e = normal_form(e, c4);
    return out;
}

PolyMatrix monad_residual(const MonadMatrices& m, const TwistModel& model) {
    return monad_residual(m, model, derive_relations(model, Space::C4));
}

SmashMonad bosonise_monad(const MonadMatrices& m, const TwistModel& model) {
    SmashMonad s;
    s.k = m.k;
    std::array<NCPolynomial, 4> parts;
    for (int r = 0; r < 4; ++r)
        for (const auto& [h, p] : coaction(model, z(r + 1)))
            parts[r] += NCPolynomial::monomial(h.word(model.torus())).concat(p);
    s.sigma = linear_matrix(m.M, parts);
    s.tau = linear_matrix(m.N, parts);
    return s;
}

namespace {

// mu(M Z) = M Z^(-1) Z^(0) on a normal-ordered word of the braided algebra
NCPolynomial bosonise(const NCPolynomial& p, const TwistModel& model) {
    NCPolynomial out;
    for (const auto& [key, v] : p.terms()) {
        Word mpart, zpart;
        for (const auto& g : key.word) (g.space == Space::C4 ? zpart : mpart).push_back(g);
        NCPolynomial coeff = NCPolynomial::monomial(mpart, Coefficient(v, key.hbar, key.mu));
        for (const auto& [h, q] : coaction(model, NCPolynomial::monomial(zpart)))
            out += coeff.concat(NCPolynomial::monomial(h.word(model.torus()))).concat(q);
    }
    return out;
}

}  // namespace

Report verify_bosonisation(const TwistModel& model, int k, int samples, std::uint64_t seed) {
    Report rep;
    rep.title = "bosonisation map";
    SpaceOptions o = monad_options(k);
    DeriveOptions quick{false};
    RelationSystem braided = derive_relations(model, {Space::MonadM, Space::C4}, o, quick);
    RelationSystem target = smash_relations(model, {Space::MonadM}, o, quick);
    target.merge(derive_relations(model, Space::C4));

    auto mgens = space_generators(Space::MonadM, o);
    auto zgens = space_generators(Space::C4);
    std::mt19937_64 rng(seed);
    auto pick = [&](const std::vector<GeneratorId>& v) { return v[rng() % v.size()]; };
    EvalParams ev = model.eval_params();

    double mult = 0.0, star = 0.0;
    for (int s = 0; s < samples; ++s) {
        NCPolynomial x = NCPolynomial::monomial({pick(mgens), pick(zgens)});
        NCPolynomial y = NCPolynomial::monomial({pick(mgens), pick(zgens)});
        NCPolynomial bx = bosonise(normal_form(x, braided), model);
        NCPolynomial by = bosonise(normal_form(y, braided), model);
        NCPolynomial lhs = multiply(bx, by, target);
        NCPolynomial rhs = normal_form(bosonise(multiply(x, y, braided), model), target);
        mult = std::max(mult, (lhs - rhs).max_abs(ev));

        NCPolynomial s1 = adjoint(normal_form(bx, target), target);
        NCPolynomial s2 = normal_form(bosonise(adjoint(normal_form(x, braided), braided), model), target);
        star = std::max(star, (s1 - s2).max_abs(ev));
    }
    rep.add("bosonisation is multiplicative on sampled products", mult, kCoeffTol);
    rep.add("bosonisation commutes with *", star, kCoeffTol);
    return rep;
}

Coefficient eta(int j, int l) {
    static const int table[4][4] = {{0, 0, 1, -1}, {0, 0, -1, 1}, {-1, 1, 0, 0}, {1, -1, 0, 0}};
    return Coefficient(1.0, 0, table[j - 1][l - 1]);
}

namespace {

NCPolynomial mletter(int j, int a, int b, bool conj = false) {
    return NCPolynomial::generator(monad_gen(Space::MonadM, j, a, b, conj));
}

NCPolynomial hletter(const TwistModel& m, int j, bool conj) {
    return NCPolynomial::generator(gen(m.hopf_space(), j, conj));
}

// s_l for l = 1..4 as a torus letter
NCPolynomial varsigma(const TwistModel& m, int l) { return hletter(m, (l + 1) / 2, l % 2 == 0); }

NCPolynomial tilde(const TwistModel& m, int j, int a, int b) {
    NCPolynomial x = mletter(j, a, b);
    if (m.kind == ModelKind::Moyal && j <= 2) {
        NCPolynomial m3 = mletter(3, a, b), m4 = mletter(4, a, b);
        if (j == 1)
            x += Coefficient(0.5) * m3.concat(hletter(m, 1, true)) - Coefficient(0.5) * m4.concat(hletter(m, 2, false));
        else
            x += Coefficient(0.5) * m3.concat(hletter(m, 2, true)) + Coefficient(0.5) * m4.concat(hletter(m, 1, false));
    } else if (m.torus() && j <= 2) {
        x = x.concat(varsigma(m, j));
    }
    return x;
}

}  // namespace

Report tilde_subalgebra_check(const TwistModel& model, int k) {
    Report rep;
    rep.title = "tilde generators";
    SpaceOptions o = monad_options(k);
    RelationSystem smash = smash_relations(model, {Space::MonadM}, o, DeriveOptions{false});
    EvalParams ev = model.eval_params();

    struct Tilde {
        int j, a, b;
        bool conj;
        NCPolynomial p;
    };
    std::vector<Tilde> gens;
    for (int j = 1; j <= 4; ++j)
        for (int a = 1; a <= 2 * k + 2; ++a)
            for (int b = 1; b <= k; ++b) {
                NCPolynomial t = normal_form(tilde(model, j, a, b), smash);
                gens.push_back({j, a, b, false, t});
                gens.push_back({j, a, b, true, adjoint(t, smash)});
            }

    double comm = 0.0;
    std::string worst;
    for (std::size_t x = 0; x < gens.size(); ++x)
        for (std::size_t y = x + 1; y < gens.size(); ++y) {
            double r = commutator(gens[x].p, gens[y].p, smash).max_abs(ev);
            if (r > comm) {
                comm = r;
                worst = "M~" + std::to_string(gens[x].j) + (gens[x].conj ? "*" : "") + ", M~" +
                        std::to_string(gens[y].j) + (gens[y].conj ? "*" : "");
            }
        }
    rep.add("tilde generators commute pairwise", comm, kCoeffTol, worst);

    // h X - X h against the action on tilde generators
    auto find = [&](int j, int a, int b, bool conj) -> const NCPolynomial& {
        for (const auto& g : gens)
            if (g.j == j && g.a == a && g.b == b && g.conj == conj) return g.p;
        throw UnknownGenerator("tilde generator");
    };
    double cross = 0.0;
    for (const auto& g : gens) {
        for (int l = 1; l <= 4; ++l) {
            NCPolynomial lhs, rhs;
            if (model.kind == ModelKind::Moyal) {
                // t_r |>' X for the letters t1, t1*, t2, t2*
                int r = (l + 1) / 2;
                bool tc = l % 2 == 0;
                NCPolynomial h = hletter(model, r, tc);
                lhs = normal_form(h.concat(g.p) - g.p.concat(h), smash);
                double a = model.alpha, b = model.beta;
                cplx i(0.0, 1.0);
                auto val = [&](cplx c, int j) { rhs = NCPolynomial::constant(Coefficient(c, 1, 0)).concat(find(j, g.a, g.b, g.conj)); };
                if (!g.conj) {
                    if (g.j == 1 && r == 1 && !tc) val(i * a, 3);
                    if (g.j == 2 && r == 1 && tc) val(-i * a, 4);
                    if (g.j == 1 && r == 2 && tc) val(-i * b, 4);
                    if (g.j == 2 && r == 2 && !tc) val(-i * b, 3);
                } else {
                    if (g.j == 1 && r == 1 && tc) val(-i * a, 3);
                    if (g.j == 2 && r == 1 && !tc) val(i * a, 4);
                    if (g.j == 1 && r == 2 && !tc) val(i * b, 4);
                    if (g.j == 2 && r == 2 && tc) val(i * b, 3);
                }
            } else if (model.torus()) {
                NCPolynomial h = varsigma(model, l);
                lhs = normal_form(h.concat(g.p), smash);
                Coefficient c = g.conj ? eta(g.j, l) : eta(l, g.j);
                rhs = normal_form((c * g.p).concat(h), smash);
            } else {
                continue;
            }
            cross = std::max(cross, normal_form(lhs - rhs, smash).max_abs(ev));
        }
    }
    if (model.kind != ModelKind::Classical) rep.add("phi respects the cross relations with H", cross, kCoeffTol);
    return rep;
}

}  // namespace adhm
