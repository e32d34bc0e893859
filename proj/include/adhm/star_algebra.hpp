#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace adhm {

using cplx = std::complex<double>;

inline constexpr double kCoeffTol = 1e-12;
inline constexpr std::size_t kStepBudget = 1000000;

// Order of the enum is part of the generator order: monad letters sort below
// coordinates, which sort below Hopf letters.
enum class Space : int {
    MonadM,
    MonadN,
    C4,
    R4,
    S7,
    S4,
    CP3,
    CP1,
    Aux,
    HopfTrans,
    HopfTorus,
};

const char* space_name(Space s);

struct GeneratorId {
    Space space = Space::C4;
    int index = 1;
    bool conjugated = false;
    int grade = 0;
    int row = 0;
    int col = 0;

    auto key() const { return std::tie(space, index, row, col, conjugated, grade); }
    friend bool operator<(const GeneratorId& a, const GeneratorId& b) { return a.key() < b.key(); }
    friend bool operator==(const GeneratorId& a, const GeneratorId& b) { return a.key() == b.key(); }
    friend bool operator!=(const GeneratorId& a, const GeneratorId& b) { return !(a == b); }

    GeneratorId toggled() const {
        GeneratorId g = *this;
        g.conjugated = !g.conjugated;
        return g;
    }
    GeneratorId with_grade(int gr) const {
        GeneratorId g = *this;
        g.grade = gr;
        return g;
    }
    std::string label() const;
};

GeneratorId gen(Space s, int index, bool conj = false, int grade = 0);
GeneratorId monad_gen(Space s, int index, int row, int col, bool conj = false);

// shorthand for the coordinate letters
inline GeneratorId z(int j, bool conj = false) { return gen(Space::C4, j, conj); }
inline GeneratorId dz(int j, bool conj = false) { return gen(Space::C4, j, conj, 1); }
inline GeneratorId zeta(int j, bool conj = false) { return gen(Space::R4, j, conj); }
inline GeneratorId dzeta(int j, bool conj = false) { return gen(Space::R4, j, conj, 1); }

// Numeric values for the formal parameters. hbar is complex because the
// formal hbar is anti-self-adjoint (see Coefficient).
struct EvalParams {
    cplx hbar{0.0, 0.0};
    double theta = 0.0;
};

// value * hbar^hbar_power * mu^mu_power, mu = exp(i pi theta).
// Under * the formal hbar goes to -hbar and mu to mu^-1.
struct Coefficient {
    cplx value{0.0, 0.0};
    int hbar_power = 0;
    int mu_power = 0;

    Coefficient() = default;
    Coefficient(cplx v, int h = 0, int m = 0) : value(v), hbar_power(h), mu_power(m) {}
    Coefficient(double v) : value(v, 0.0) {}

    Coefficient conj() const;
    cplx evaluate(const EvalParams& p) const;
    bool approx_equal(const Coefficient& o, double tol = kCoeffTol) const;

    friend Coefficient operator*(const Coefficient& a, const Coefficient& b) {
        return {a.value * b.value, a.hbar_power + b.hbar_power, a.mu_power + b.mu_power};
    }
};

using Word = std::vector<GeneratorId>;

int total_grade(const Word& w);
// 1 on letters the translation coaction moves (z3, z4, M1, M2, N1, N2), else 0
int filtration_weight(const GeneratorId& g);
int filtration_weight(const Word& w);
std::string word_label(const Word& w);

struct TermKey {
    Word word;
    int hbar = 0;
    int mu = 0;
};

// degree, then lexicographic, then formal exponents
struct TermLess {
    bool operator()(const TermKey& a, const TermKey& b) const;
};

class NCPolynomial {
public:
    using Map = std::map<TermKey, cplx, TermLess>;

    NCPolynomial() = default;
    static NCPolynomial constant(const Coefficient& c);
    static NCPolynomial monomial(Word w, const Coefficient& c = Coefficient(1.0));
    static NCPolynomial generator(const GeneratorId& g) { return monomial({g}); }

    void add_term(const Word& w, const Coefficient& c);
    void add_term(const TermKey& k, cplx v);

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const;

    Coefficient coefficient(const Word& w, int hbar = 0, int mu = 0) const;
    // sum over formal exponents of the coefficients of w, evaluated at p
    cplx evaluated_coefficient(const Word& w, const EvalParams& p) const;
    std::set<GeneratorId> generators() const;

    NCPolynomial& operator+=(const NCPolynomial& o);
    NCPolynomial& operator-=(const NCPolynomial& o);
    NCPolynomial& operator*=(const Coefficient& c);
    friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) { return a += b; }
    friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) { return a -= b; }
    friend NCPolynomial operator*(const Coefficient& c, NCPolynomial a) { return a *= c; }
    NCPolynomial operator-() const { return Coefficient(-1.0) * *this; }

    // free (unreduced) product
    NCPolynomial concat(const NCPolynomial& o) const;
    // all formal exponents substituted, so every key has hbar = mu = 0
    NCPolynomial evaluated(const EvalParams& p) const;
    // largest |coefficient| after evaluation
    double max_abs(const EvalParams& p = {}) const;
    bool approx_equal(const NCPolynomial& o, double tol = kCoeffTol) const;

    std::string to_string() const;

private:
    Map terms_;
};

class RelationSystem {
public:
    std::string name;
    bool has_calculus = false;

    void add_generator(const GeneratorId& g);
    void add_generator(const GeneratorId& g, const GeneratorId& star);
    bool knows(const GeneratorId& g) const { return generators_.count(g) > 0; }
    const std::set<GeneratorId>& generators() const { return generators_; }
    GeneratorId star(const GeneratorId& g) const;

    // rewrite a.b -> rhs; out-of-order pairs without a rule are transposed
    // with the graded sign, odd squares without a rule vanish
    void set_rule(const GeneratorId& a, const GeneratorId& b, NCPolynomial rhs);
    const NCPolynomial* rule(const GeneratorId& a, const GeneratorId& b) const;
    const std::map<std::pair<GeneratorId, GeneratorId>, NCPolynomial>& rules() const { return rules_; }

    // union of generators and rules; rules of `o` win on clashes
    void merge(const RelationSystem& o);

    // every rhs word is below the pair it replaces in (degree, filtration, lex)
    bool check_termination() const;
    // overlap ambiguities a.b.c resolve to the same normal form
    bool check_confluence(std::string* failure = nullptr) const;
    // the adjoint of each rule is again a consequence of the rules
    bool check_star_closure(std::string* failure = nullptr) const;

    static RelationSystem commutative(const std::vector<GeneratorId>& gens, std::string name = "commutative");

private:
    std::set<GeneratorId> generators_;
    std::map<GeneratorId, GeneratorId> star_table_;
    std::map<std::pair<GeneratorId, GeneratorId>, NCPolynomial> rules_;
};

NCPolynomial normal_form(const NCPolynomial& p, const RelationSystem& rel);
NCPolynomial multiply(const NCPolynomial& a, const NCPolynomial& b, const RelationSystem& rel);
NCPolynomial adjoint(const NCPolynomial& p, const RelationSystem& rel);
NCPolynomial differential(const NCPolynomial& p, const RelationSystem& rel);
NCPolynomial commutator(const NCPolynomial& a, const NCPolynomial& b, const RelationSystem& rel);

// (-1)^{sum_{i<j} |w_i||w_j|}
int reversal_sign(const Word& w);

}  // namespace adhm
