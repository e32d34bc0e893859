// One pass/fail line per acceptance criterion. Exit status is 0 when the set
// of failing criteria equals the set given with --expect-fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "adhm/adhm_solver.hpp"
#include "adhm/errors.hpp"
#include "adhm/hopf_twist.hpp"
#include "adhm/instanton.hpp"
#include "adhm/monad.hpp"
#include "adhm/twistor.hpp"
#include "reference_relations.hpp"

using namespace adhm;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const TwistModel kMoyal = TwistModel::moyal(0.25, 1.0, 1.0);  // zeta = 0.5
const TwistModel kToric = TwistModel::toric(0.25);

ADHMData solved(int k, const TwistModel& m, std::uint64_t seed = 1) {
    SolveConfig cfg;
    cfg.rng_seed = seed;
    cfg.tolerance = k == 1 ? 1e-12 : 1e-10;
    return solve(k, m, m.zeta(), cfg).data;
}

HopfMonomial random_monomial(const TwistModel& m, std::mt19937_64& rng) {
    if (m.torus()) {
        std::uniform_int_distribution<int> d(-3, 3);
        return HopfMonomial::torus(d(rng), d(rng));
    }
    std::uniform_int_distribution<int> d(0, 2);
    for (;;) {
        HopfMonomial h = HopfMonomial::trans(d(rng), d(rng), d(rng), d(rng));
        if (h.degree() <= 4) return h;
    }
}

void c1(Outcome& o) {
    int total = 0;
    for (const auto& t : reference::all_tables(0.1, 1.0, 2.0, 0.25))
        for (const auto& c : reference::check_table(t)) {
            ++total;
            if (!c.ok) o.require(false, c.name);
        }
    o.detail << " " << total << " entries compared";
}

void c2(Outcome& o) {
    auto t0 = Clock::now();
    std::mt19937_64 rng(2);
    double worst = 0.0;
    for (const auto& m : {kMoyal, TwistModel::moyal(0.3, 0.7, 1.9), kToric}) {
        const auto gens = space_generators(Space::C4);
        std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
        for (int i = 0; i < 100; ++i) {
            HopfMonomial f = random_monomial(m, rng), g = random_monomial(m, rng), h = random_monomial(m, rng);
            worst = std::max({worst, two_cocycle_residual(m, f, g, h), bicharacter_residual(m, f, g, h),
                              cotriangular_residual(m, f, g), crossmod_residual(m, f, gens[pick(rng)])});
        }
    }
    const double t = seconds_since(t0);
    o.detail << " max residual " << worst << ", " << t << "s";
    o.require(worst <= 1e-10, "residual above 1e-10");
    o.require(t < 5.0, "time");
}

void c3(Outcome& o) {
    Report r = verify_embeddings();
    r.append(verify_J_involution());
    o.detail << " " << r.checks.size() << " checks, max residual " << r.max_residual();
    o.require(r.passed() && r.max_residual() == 0.0, "twistor report");
}

void c4(Outcome& o) {
    struct Case {
        int k;
        TwistModel m;
        double tol;
    };
    for (const auto& c : {Case{1, kMoyal, 1e-12}, Case{1, kToric, 1e-12}, Case{2, TwistModel::classical(), 1e-10}}) {
        SolveConfig cfg;
        cfg.tolerance = c.tol;
        cfg.rng_seed = 11;
        auto t0 = Clock::now();
        SolveResult a = solve(c.k, c.m, c.m.zeta(), cfg);
        const double t = seconds_since(t0);
        SolveResult b = solve(c.k, c.m, c.m.zeta(), cfg);
        o.detail << " " << c.m.name() << " k=" << c.k << ": " << a.residual.total() << " in " << t << "s;";
        o.require(a.residual.total() <= c.tol, "residual");
        o.require(t < 60.0, "time");
        o.require(pack(a.data) == pack(b.data), "reproducible");
    }
}

void c5(Outcome& o) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    double worst = 0.0, lo = 1e300, hi = 0.0;
    for (const auto& m : {TwistModel::classical(), kMoyal, kToric})
        for (int k : {1, 2}) {
            const ADHMData d = solved(k, m);
            const RelationSystem rel = derive_relations(m, Space::C4);
            worst = std::max(worst, poly_max_abs(monad_residual(build_monad(d), m, rel), m.eval_params()));
            Eigen::VectorXd dir(pack(d).size());
            for (int i = 0; i < dir.size(); ++i) dir[i] = gauss(rng);
            dir.normalize();
            auto at = [&](double eps) {
                return poly_max_abs(monad_residual(build_monad(unpack(pack(d) + eps * dir, k, m)), m, rel),
                                    m.eval_params());
            };
            const double r3 = at(1e-3), r4 = at(1e-4);
            lo = std::min(lo, r3 / 1e-3);
            hi = std::max(hi, r3 / 1e-3);
            o.require(r3 > 0 && std::abs(r3 / r4 - 10.0) < 1.0, "linear response " + m.name());
        }
    o.detail << " max residual " << worst << ", perturbation slope in [" << lo << ", " << hi << "]";
    o.require(worst <= 1e-10, "residual");
    o.require(lo > 1e-3 && hi < 1e3, "slope O(1)");
}

void c6(Outcome& o) {
    for (int k : {1, 2}) {
        Report r = projector_identities(solved(k, TwistModel::classical()), random_points(20, 60 + k));
        o.detail << " k=" << k << " max residual " << r.max_residual() << ";";
        o.require(r.passed(), "identities k=" + std::to_string(k));
    }
}

void c7(Outcome& o) {
    auto t0 = Clock::now();
    for (int k : {1, 2}) {
        Report r = curvature_asd(solved(k, TwistModel::classical()), random_points(50, 70 + k));
        o.detail << " k=" << k << " asd " << r.checks[0].residual << " fd " << r.checks[1].residual << ";";
        o.require(r.passed(), "asd k=" + std::to_string(k));
    }
    const double t = seconds_since(t0);
    o.detail << " " << t << "s (orientation of the complex chart (z3, z4))";
    o.require(t < 30.0, "time");
}

void c8(Outcome& o) {
    auto t0 = Clock::now();
    const ADHMData d = solved(1, TwistModel::classical());
    const double q1 = charge(d, {1}).charge;
    const double q2 = charge(d, {2}).charge;
    const double qt = charge(translate(d, {0.8, -0.3}, {-0.5, 0.6}), {1}).charge;
    const double t = seconds_since(t0);
    o.detail << std::setprecision(10);
    o.detail << " charge " << q1 << ", doubled " << q2 << ", translated " << qt << ", " << t << "s";
    o.require(q1 >= 0.99 && q1 <= 1.01, "charge");
    o.require(std::abs(q2 - q1) <= 1e-3 * std::abs(q1), "resolution");
    o.require(std::abs(qt - q1) <= 1e-3 * std::abs(q1), "translation");
    o.require(t < 60.0, "time");
}

void c9(Outcome& o) {
    struct Case {
        int k;
        TwistModel m;
    };
    for (const auto& c : {Case{1, kMoyal}, Case{1, TwistModel::classical()}, Case{2, TwistModel::classical()},
                          Case{2, kMoyal}, Case{1, kToric}}) {
        JacobianAnalysis a = moduli_dimension(solved(c.k, c.m, 9));
        o.detail << " " << c.m.name() << " k=" << c.k << ": " << a.raw_nullity << "/" << a.framed_dimension << "/"
                 << a.framed_dimension - a.frame_rotation_rank << ";";
        o.require(a.raw_nullity == c.k * c.k + 8 * c.k, "raw nullity");
        o.require(a.framed_dimension == 8 * c.k, "framed");
        o.require(a.frame_rotation_rank == 3 && a.framed_dimension - 3 == 8 * c.k - 3, "frame rotations");
    }
}

void c10(Outcome& o) {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> gauss;
    double wdiff = 0.0, udiff = 0.0, rdiff = 0.0;
    for (int k : {1, 2}) {
        const ADHMData d = solved(k, TwistModel::classical());
        const MonadMatrices m = build_monad(d);
        const auto pts = random_points(5, 100 + k);
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::MatrixXcd W(k, k);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) W(i, j) = cplx(gauss(rng), gauss(rng));
            W += 2.0 * Eigen::MatrixXcd::Identity(k, k);
            const Eigen::MatrixXcd U = random_unitary(2 * k + 2, 1000 * k + trial);
            MonadMatrices mw = m, mu = m;
            for (int j = 0; j < 4; ++j) {
                mw.M[j] = m.M[j] * W;
                mu.M[j] = U * m.M[j];
            }
            for (const auto& x : pts) {
                const Eigen::MatrixXcd P = evaluate_projector(m, x).P;
                wdiff = std::max(wdiff, (evaluate_projector(mw, x).P - P).cwiseAbs().maxCoeff());
                udiff = std::max(udiff, (evaluate_projector(mu, x).P - U * P * U.adjoint()).cwiseAbs().maxCoeff());
            }
            // equivariance of the equations on arbitrary data, where the residual is O(1)
            ADHMData r = ADHMData::zeros(k, kToric);
            for (auto* a : {&r.B1, &r.B2, &r.I, &r.J})
                for (int i = 0; i < a->rows(); ++i)
                    for (int j = 0; j < a->cols(); ++j) (*a)(i, j) = cplx(gauss(rng), gauss(rng));
            const Eigen::MatrixXcd g = random_unitary(k, 77 + trial);
            rdiff = std::max(rdiff, std::abs(adhm_residual(apply_gauge(r, g)).total() - adhm_residual(r).total()));
            rdiff = std::max(rdiff, std::abs(adhm_residual(apply_gauge(d, g)).total() - adhm_residual(d).total()));
        }
    }
    o.detail << " P under W " << wdiff << ", P under U " << udiff << ", residual under U(k) " << rdiff;
    o.require(wdiff <= 1e-10, "W invariance");
    o.require(udiff <= 1e-10, "U covariance");
    o.require(rdiff <= 1e-12, "residual invariance");
}

void c11(Outcome& o) {
    auto t0 = Clock::now();
    for (const auto& m : {kMoyal, kToric}) {
        Report r = symbolic_projector_checks(solved(1, m));
        o.detail << " " << m.name() << " max residual " << r.max_residual() << ";";
        o.require(r.passed() && r.max_residual() == 0.0, "symbolic checks " + m.name());
    }
    const double a = 1.0, b = 2.0;
    const TwistModel probe = TwistModel::moyal(0.1, a, b);
    const NCPolynomial p = monad_residual(build_monad(ADHMData::zeros(1, probe)), probe)[0][0];
    const Coefficient c = p.coefficient({z(1), z(2)}, 1, 0);
    const bool exact = p.size() == 1 && c.value == cplx(0.0, a + b);
    o.detail << " probe " << p.to_string();
    o.require(exact, "constant shift i hbar (alpha + beta)");
    const double t = seconds_since(t0);
    o.require(t < 60.0, "time");
}

void c12(Outcome& o) {
    std::vector<GeneratorId> letters = space_generators(Space::C4);
    std::vector<Word> words{{}};
    for (const auto& g : letters) words.push_back({g});
    for (std::size_t i = 0; i < letters.size(); ++i)
        for (std::size_t j = i; j < letters.size(); ++j) words.push_back({letters[i], letters[j]});
    double worst = 0.0;
    for (const auto& m : {TwistModel::moyal(1e-6, 1.0, 1.0), TwistModel::toric(1e-6)}) {
        const RelationSystem cl = classical_relations({Space::C4});
        for (const auto& u : words)
            for (const auto& v : words) {
                NCPolynomial a = NCPolynomial::monomial(u), b = NCPolynomial::monomial(v);
                NCPolynomial tw = twist_product(m, a, b, cl).evaluated(m.eval_params());
                NCPolynomial plain = normal_form(a.concat(b), cl);
                worst = std::max(worst, (tw - plain).max_abs());
            }
        const RelationSystem r4 = classical_relations({Space::R4});
        for (const auto& g : space_generators(Space::R4))
            for (const auto& h : space_generators(Space::R4)) {
                NCPolynomial a = NCPolynomial::generator(g), b = NCPolynomial::generator(h);
                NCPolynomial tw = twist_product(m, a, b, r4).evaluated(m.eval_params());
                worst = std::max(worst, (tw - normal_form(a.concat(b), r4)).max_abs());
            }
    }
    o.detail << " " << words.size() << " words per side, max deviation " << worst;
    o.require(worst <= 1e-5, "deviation");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> expect_fail;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"relation derivation against the printed tables", c1},
        {"cocycle, bicharacter, cotriangularity, crossed module", c2},
        {"twistor embeddings and J^2", c3},
        {"ADHM solving", c4},
        {"monad equivalence", c5},
        {"projector identities", c6},
        {"anti-self-duality", c7},
        {"topological charge", c8},
        {"moduli dimensions", c9},
        {"gauge properties", c10},
        {"deformed symbolic pipeline", c11},
        {"classical-limit continuity", c12},
    };
    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const int n = static_cast<int>(i) + 1;
        if (!o.pass) failed.insert(n);
        std::printf("criterion %2d %s: %s (%.2fs)%s\n", n, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    seconds_since(t0), o.detail.str().c_str());
        std::fflush(stdout);
    }
    const std::set<int> expected(expect_fail.begin(), expect_fail.end());
    std::printf("%zu of %zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
    return failed == expected ? 0 : 1;
}
