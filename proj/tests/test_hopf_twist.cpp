#include <gtest/gtest.h>

#include <random>

#include "adhm/errors.hpp"
#include "adhm/hopf_twist.hpp"
#include "adhm/monad.hpp"
#include "reference_relations.hpp"

using namespace adhm;

namespace {

std::array<HopfMonomial, 4> trans_letters() {
    return {HopfMonomial::trans(1, 0, 0, 0), HopfMonomial::trans(0, 1, 0, 0), HopfMonomial::trans(0, 0, 1, 0),
            HopfMonomial::trans(0, 0, 0, 1)};
}

std::array<HopfMonomial, 4> torus_letters() {
    return {HopfMonomial::torus(1, 0), HopfMonomial::torus(-1, 0), HopfMonomial::torus(0, 1), HopfMonomial::torus(0, -1)};
}

HopfMonomial random_monomial(std::mt19937_64& rng, bool torus) {
    if (torus) {
        std::uniform_int_distribution<int> d(-2, 2);
        return HopfMonomial::torus(d(rng), d(rng));
    }
    std::uniform_int_distribution<int> d(0, 1);
    return HopfMonomial::trans(d(rng), d(rng), d(rng), d(rng));
}

bool same(const Coefficient& a, const Coefficient& b, const TwistModel& m) {
    return std::abs(a.evaluate(m.eval_params()) - b.evaluate(m.eval_params())) < 1e-13;
}

}  // namespace

TEST(RMatrix, MoyalValuesOnGenerators) {
    const double a = 1.5, b = 2.5;
    const TwistModel m = TwistModel::moyal(0.1, a, b);
    const auto t = trans_letters();
    // R(t1*, t1) = -i hbar alpha and R(t2*, t2) = i hbar beta
    EXPECT_TRUE(same(r_matrix(m, t[1], t[0]), Coefficient(cplx(0.0, -a), 1, 0), m));
    EXPECT_TRUE(same(r_matrix(m, t[3], t[2]), Coefficient(cplx(0.0, b), 1, 0), m));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Coefficient r = r_matrix(m, t[i], t[j]);
            // antisymmetric on generators
            EXPECT_TRUE(same(r, Coefficient(-1.0) * r_matrix(m, t[j], t[i]), m));
            if (i / 2 != j / 2 || i == j) EXPECT_NEAR(std::abs(r.evaluate(m.eval_params())), 0.0, 1e-15);
        }
}

TEST(RMatrix, ToricIsEtaOnGenerators) {
    const TwistModel m = TwistModel::toric(0.3);
    const auto s = torus_letters();
    for (int j = 1; j <= 4; ++j)
        for (int l = 1; l <= 4; ++l) {
            const Coefficient r = r_matrix(m, s[j - 1], s[l - 1]);
            EXPECT_TRUE(same(r, Coefficient(1.0, 0, reference::eta_power(j, l)), m)) << j << l;
            EXPECT_EQ(eta(j, l).mu_power, reference::eta_power(j, l));
        }
}

TEST(Cocycle, AxiomsOnRandomMonomials) {
    std::mt19937_64 rng(4);
    for (const TwistModel& m : {TwistModel::moyal(0.3, 1.0, 2.0), TwistModel::toric(0.37)}) {
        for (int trial = 0; trial < 60; ++trial) {
            const HopfMonomial f = random_monomial(rng, m.torus()), g = random_monomial(rng, m.torus()),
                               h = random_monomial(rng, m.torus());
            EXPECT_LT(two_cocycle_residual(m, f, g, h), 1e-12) << m.name();
            EXPECT_LT(bicharacter_residual(m, f, g, h), 1e-12) << m.name();
            EXPECT_LT(cotriangular_residual(m, f, g), 1e-12) << m.name();
        }
        // normalised: F(1, h) = F(h, 1) = eps(h)
        const HopfMonomial h = random_monomial(rng, m.torus());
        EXPECT_TRUE(same(cocycle_eval(m, HopfMonomial::one(), h), counit(m, h), m));
        EXPECT_TRUE(same(cocycle_eval(m, h, HopfMonomial::one()), counit(m, h), m));
    }
}

TEST(Cocycle, InverseIsConvolutionInverse) {
    const TwistModel m = TwistModel::moyal(0.2, 1.0, 3.0);
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 30; ++trial) {
        const HopfMonomial h = random_monomial(rng, false), g = random_monomial(rng, false);
        // sum F(h1, g1) F^-1(h2, g2) = eps(h) eps(g)
        cplx total = 0.0;
        for (const auto& [hl, hw] : coproduct(m, h))
            for (const auto& [gl, gw] : coproduct(m, g))
                total += hw * gw * (cocycle_eval(m, hl[0], gl[0]) * cocycle_inv_eval(m, hl[1], gl[1])).evaluate(m.eval_params());
        const cplx expect = (counit(m, h) * counit(m, g)).evaluate(m.eval_params());
        EXPECT_NEAR(std::abs(total - expect), 0.0, 1e-12);
    }
}

TEST(Coproduct, PrimitiveAndGrouplike) {
    const TwistModel mo = TwistModel::moyal(0.1, 1, 1);
    const auto cp = coproduct(mo, HopfMonomial::trans(1, 0, 0, 0));
    ASSERT_EQ(cp.size(), 2u);
    for (const auto& [legs, w] : cp) {
        EXPECT_DOUBLE_EQ(w, 1.0);
        EXPECT_TRUE(legs[0].is_one() != legs[1].is_one());
    }
    // (t1)^2 -> t1^2 (x) 1 + 2 t1 (x) t1 + 1 (x) t1^2
    double middle = 0.0;
    for (const auto& [legs, w] : coproduct(mo, HopfMonomial::trans(2, 0, 0, 0)))
        if (legs[0] == HopfMonomial::trans(1, 0, 0, 0)) middle = w;
    EXPECT_DOUBLE_EQ(middle, 2.0);
    const TwistModel to = TwistModel::toric(0.2);
    const auto gl = coproduct(to, HopfMonomial::torus(2, -1));
    ASSERT_EQ(gl.size(), 1u);
    EXPECT_TRUE(gl[0].first[0] == HopfMonomial::torus(2, -1) && gl[0].first[1] == HopfMonomial::torus(2, -1));
    EXPECT_NEAR(std::abs(counit(mo, HopfMonomial::trans(0, 1, 0, 0)).value), 0.0, 0.0);
    EXPECT_NEAR(std::abs(counit(to, HopfMonomial::torus(3, 1)).value - 1.0), 0.0, 0.0);
}

TEST(TwistProduct, Associative) {
    std::mt19937_64 rng(9);
    for (const TwistModel& m : {TwistModel::moyal(0.15, 1.0, 2.0), TwistModel::toric(0.3)}) {
        std::uniform_int_distribution<int> idx(1, 4), c(0, 1);
        for (int trial = 0; trial < 40; ++trial) {
            std::array<NCPolynomial, 3> p;
            for (auto& q : p) q = NCPolynomial::generator(z(idx(rng), c(rng) == 1));
            const NCPolynomial left = twist_product(m, twist_product(m, p[0], p[1]), p[2]);
            const NCPolynomial right = twist_product(m, p[0], twist_product(m, p[1], p[2]));
            EXPECT_LT((left - right).max_abs(m.eval_params()), 1e-12) << m.name();
        }
    }
}

// the twisted products of a pair in both orders satisfy the literal table
TEST(TwistProduct, ToricPairsMatchTable) {
    const TwistModel m = TwistModel::toric(0.3);
    const RelationSystem classical = classical_relations({Space::C4});
    for (int j = 1; j <= 4; ++j)
        for (int l = 1; l <= 4; ++l) {
            // z_j z_l = eta_lj z_l z_j and z_j z_l* = eta_jl z_l* z_j
            const NCPolynomial d1 = twist_word(m, {z(j), z(l)}, classical) -
                                    Coefficient(1.0, 0, reference::eta_power(l, j)) * twist_word(m, {z(l), z(j)}, classical);
            const NCPolynomial d2 = twist_word(m, {z(j), z(l, true)}, classical) -
                                    Coefficient(1.0, 0, reference::eta_power(j, l)) *
                                        twist_word(m, {z(l, true), z(j)}, classical);
            EXPECT_LT(d1.max_abs(m.eval_params()), 1e-13) << j << l;
            EXPECT_LT(d2.max_abs(m.eval_params()), 1e-13) << j << l;
        }
}

TEST(TwistProduct, MoyalCommutatorOfZ3Z4) {
    const double a = 1.0, b = 3.0;
    const TwistModel m = TwistModel::moyal(0.2, a, b);
    const NCPolynomial p3 = NCPolynomial::generator(z(3)), p4 = NCPolynomial::generator(z(4));
    const NCPolynomial comm = twist_product(m, p3, p4) - twist_product(m, p4, p3);
    const NCPolynomial expect = NCPolynomial::monomial({z(1), z(2)}, Coefficient(cplx(0.0, a + b), 1, 0));
    EXPECT_LT((comm - expect).max_abs(m.eval_params()), 1e-13) << comm.to_string();
    // untranslated letters stay central
    const NCPolynomial p1 = NCPolynomial::generator(z(1));
    EXPECT_LT((twist_product(m, p1, p4) - twist_product(m, p4, p1)).max_abs(m.eval_params()), 1e-13);
}

TEST(Derive, ZeroDeformationIsCommutative) {
    SpaceOptions o;
    o.calculus = true;
    for (const TwistModel& m : {TwistModel::moyal(0.0, 1, 2), TwistModel::toric(0.0), TwistModel::classical()}) {
        const RelationSystem r = derive_relations(m, Space::C4, o);
        for (const auto& [lhs, rhs] : r.rules()) {
            if (lhs.first == lhs.second && lhs.first.grade == 1) {
                EXPECT_TRUE(rhs.is_zero());
                continue;
            }
            ASSERT_EQ(rhs.size(), 1u);
            const auto& [key, v] = *rhs.terms().begin();
            EXPECT_TRUE(key.word == (Word{lhs.second, lhs.first}));
            const double sign = (lhs.first.grade * lhs.second.grade) % 2 ? -1.0 : 1.0;
            EXPECT_NEAR(std::abs(Coefficient(v, key.hbar, key.mu).evaluate(m.eval_params()) - sign), 0.0, 1e-15);
        }
    }
}

TEST(Derive, StarClosed) {
    for (const TwistModel& m : {TwistModel::moyal(0.1, 1, 2), TwistModel::toric(0.3)})
        for (Space s : {Space::C4, Space::R4}) {
            std::string why;
            EXPECT_TRUE(derive_relations(m, s).check_star_closure(&why)) << m.name() << " " << why;
        }
}

TEST(Coaction, CrossedModuleCompatibility) {
    for (const TwistModel& m : {TwistModel::moyal(0.1, 1, 2), TwistModel::toric(0.3)}) {
        const auto gens = hopf_generators(m);
        for (const auto& g : gens)
            for (int j = 1; j <= 4; ++j)
                EXPECT_LT(crossmod_residual(m, HopfMonomial::from_generator(g), z(j)), 1e-12) << m.name();
    }
}
