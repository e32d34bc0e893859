#pragma once

#include <map>
#include <vector>

#include "adhm/hopf_twist.hpp"
#include "adhm/report.hpp"
#include "adhm/star_algebra.hpp"

namespace adhm {

namespace twistor {

// letters of the classical twistor algebras
GeneratorId x(int j, bool conj = false);  // x0 = x0*, x1, x2
GeneratorId a(int j);                      // diagonal of q, self-adjoint
GeneratorId u(int j, bool conj = false);
GeneratorId v(int j, bool conj = false);
GeneratorId cp1(int j, bool conj = false);  // 1 = a~1, 2 = a~2, 3 = u~1
GeneratorId inv_one_plus_zeta2();           // (1 + |zeta|^2)^-1
GeneratorId inv_one_plus_x0();              // (1 + x0)^-1
GeneratorId inv_a1_plus_a2();               // (a1 + a2)^-1

// q_{jl} in terms of a, u, v
NCPolynomial q_entry(int j, int l);

}  // namespace twistor

// Commutative ambient algebra with side relations lead -> rhs, where `lead`
// is a multiset of letters matched anywhere in a term.
class QuotientContext {
public:
    struct SideRule {
        Word lead;
        NCPolynomial rhs;
    };

    explicit QuotientContext(RelationSystem ambient) : ambient_(std::move(ambient)) {}

    void add_rule(Word lead, NCPolynomial rhs);
    const RelationSystem& ambient() const { return ambient_; }
    NCPolynomial reduce(const NCPolynomial& p) const;

private:
    RelationSystem ambient_;
    std::vector<SideRule> rules_;
};

// every letter the twistor checks use, as one commutative *-algebra
RelationSystem twistor_ambient();

// image of p under the algebra map sending each letter through `images`;
// letters without an image are kept
NCPolynomial substitute(const NCPolynomial& p, const std::map<GeneratorId, NCPolynomial>& images,
                        const RelationSystem& target);

// the quaternionic map on C4 and CP3 letters, extended as a *-anti-algebra map
NCPolynomial apply_J(const NCPolynomial& p);
NCPolynomial J_of(const GeneratorId& g);

Report verify_embeddings();

// J squares to -1 on C4 letters and to +1 on CP3 letters
Report verify_J_involution();

// Delta(J g) = (id (x) J) Delta(g) on the C4 letters
Report verify_J_equivariance(const TwistModel& m);

}  // namespace adhm
