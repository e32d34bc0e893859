#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adhm/star_algebra.hpp"

namespace adhm {

enum class ModelKind { Classical, Moyal, Toric };

// Classical is the translation model with hbar = 0.
struct TwistModel {
    ModelKind kind = ModelKind::Classical;
    double hbar = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
    double theta = 0.0;

    static TwistModel classical() { return {}; }
    static TwistModel moyal(double hbar, double alpha, double beta);
    static TwistModel toric(double theta);

    bool torus() const { return kind == ModelKind::Toric; }
    Space hopf_space() const { return torus() ? Space::HopfTorus : Space::HopfTrans; }
    // formal hbar evaluates to i*hbar, mu to exp(i pi theta)
    EvalParams eval_params() const;
    // right side of the real moment-map equation
    double zeta() const;
    cplx mu() const;
    std::string name() const;
};

// Translations: exponents of (t1, t1*, t2, t2*), all >= 0.
// Torus: integer powers of (s1, s2) in e[0], e[1]; e[2] = e[3] = 0.
struct HopfMonomial {
    std::array<int, 4> e{0, 0, 0, 0};

    static HopfMonomial one() { return {}; }
    static HopfMonomial trans(int t1, int t1c, int t2, int t2c) { return {{t1, t1c, t2, t2c}}; }
    static HopfMonomial torus(int a, int b) { return {{a, b, 0, 0}}; }
    // from a HopfTrans/HopfTorus generator letter
    static HopfMonomial from_generator(const GeneratorId& g);

    bool is_one() const { return e == std::array<int, 4>{0, 0, 0, 0}; }
    int degree() const { return e[0] + e[1] + e[2] + e[3]; }
    HopfMonomial star(bool torus) const;
    // letters in the smash product
    Word word(bool torus) const;
    std::string label(bool torus) const;

    friend HopfMonomial operator*(const HopfMonomial& a, const HopfMonomial& b) {
        HopfMonomial r;
        for (int i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
        return r;
    }
    friend bool operator<(const HopfMonomial& a, const HopfMonomial& b) { return a.e < b.e; }
    friend bool operator==(const HopfMonomial& a, const HopfMonomial& b) { return a.e == b.e; }
};

// element of H (x) A, keyed by the Hopf monomial
using Coaction = std::map<HopfMonomial, NCPolynomial>;

// n-fold iterated coproduct of a monomial: list of (legs, multiplicity)
std::vector<std::pair<std::vector<HopfMonomial>, double>> coproduct(const TwistModel& m, const HopfMonomial& h,
                                                                    int legs = 2);
Coefficient counit(const TwistModel& m, const HopfMonomial& h);

Coefficient cocycle_eval(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g);
Coefficient cocycle_inv_eval(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g);
Coefficient r_matrix(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g);

struct SpaceOptions {
    bool calculus = false;
    int monad_rows = 4;
    int monad_cols = 1;
};

std::vector<GeneratorId> space_generators(Space s, const SpaceOptions& o = {});
std::vector<GeneratorId> hopf_generators(const TwistModel& m);

Coaction coaction(const TwistModel& m, const GeneratorId& g);
// multiplicative extension over the classical algebra; A-parts are left as
// unreduced words
Coaction coaction(const TwistModel& m, const NCPolynomial& p);

// h |> p = R(p^(-1), h) p^(0)
NCPolynomial act(const TwistModel& m, const HopfMonomial& h, const NCPolynomial& p);

// commutative graded algebra on every generator reachable from p by the coaction
RelationSystem classical_relations(const TwistModel& m, const std::vector<NCPolynomial>& ps);
RelationSystem classical_relations(const std::vector<Space>& spaces, const SpaceOptions& o = {});

// a ._F b = F(a^(-1), b^(-1)) a^(0) b^(0), reduced in the classical algebra
NCPolynomial twist_product(const TwistModel& m, const NCPolynomial& a, const NCPolynomial& b,
                           const RelationSystem& classical);
NCPolynomial twist_product(const TwistModel& m, const NCPolynomial& a, const NCPolynomial& b);
// left-nested twisted product of the letters of w
NCPolynomial twist_word(const TwistModel& m, const Word& w, const RelationSystem& classical);

struct DeriveOptions {
    bool verify = true;
};

RelationSystem derive_relations(const TwistModel& m, const std::vector<Space>& spaces, const SpaceOptions& o = {},
                                const DeriveOptions& d = {});
inline RelationSystem derive_relations(const TwistModel& m, Space s, const SpaceOptions& o = {}) {
    return derive_relations(m, std::vector<Space>{s}, o);
}

// twisted algebra on `spaces` joined with the Hopf letters by (a h)(b g) = a (h1 |> b) h2 g
RelationSystem smash_relations(const TwistModel& m, const std::vector<Space>& spaces, const SpaceOptions& o = {},
                               const DeriveOptions& d = {});

// residuals of the Hopf-level identities; all vanish for a valid model
double two_cocycle_residual(const TwistModel& m, const HopfMonomial& f, const HopfMonomial& g, const HopfMonomial& h);
double bicharacter_residual(const TwistModel& m, const HopfMonomial& f, const HopfMonomial& g, const HopfMonomial& h);
// R(h1, g1) R(g2, h2) - eps(g) eps(h)
double cotriangular_residual(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g);
// h1 v^(-1) (x) h2 |> v^(0)  versus  (h1 |> v)^(-1) h2 (x) (h1 |> v)^(0)
double crossmod_residual(const TwistModel& m, const HopfMonomial& h, const GeneratorId& v);

}  // namespace adhm
