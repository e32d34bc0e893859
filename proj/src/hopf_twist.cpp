#include "adhm/hopf_twist.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "adhm/errors.hpp"

namespace adhm {

TwistModel TwistModel::moyal(double hbar, double alpha, double beta) {
    TwistModel m;
    m.kind = ModelKind::Moyal;
    m.hbar = hbar;
    m.alpha = alpha;
    m.beta = beta;
    return m;
}

TwistModel TwistModel::toric(double theta) {
    TwistModel m;
    m.kind = ModelKind::Toric;
    m.theta = theta;
    return m;
}

EvalParams TwistModel::eval_params() const {
    EvalParams p;
    if (kind == ModelKind::Moyal) p.hbar = cplx(0.0, hbar);
    if (kind == ModelKind::Toric) p.theta = theta;
    return p;
}

double TwistModel::zeta() const { return kind == ModelKind::Moyal ? hbar * (alpha + beta) : 0.0; }

cplx TwistModel::mu() const { return kind == ModelKind::Toric ? std::polar(1.0, std::numbers::pi * theta) : cplx(1.0); }

std::string TwistModel::name() const {
    std::ostringstream os;
    switch (kind) {
        case ModelKind::Classical: os << "classical"; break;
        case ModelKind::Moyal: os << "moyal(hbar=" << hbar << ",alpha=" << alpha << ",beta=" << beta << ")"; break;
        case ModelKind::Toric: os << "toric(theta=" << theta << ")"; break;
    }
    return os.str();
}

HopfMonomial HopfMonomial::from_generator(const GeneratorId& g) {
    HopfMonomial h;
    if (g.space == Space::HopfTrans) {
        h.e[2 * (g.index - 1) + (g.conjugated ? 1 : 0)] = 1;
    } else if (g.space == Space::HopfTorus) {
        h.e[g.index - 1] = g.conjugated ? -1 : 1;
    } else {
        throw ModelMismatch(g.label() + " is not a Hopf letter");
    }
    return h;
}

HopfMonomial HopfMonomial::star(bool torus) const {
    if (torus) return HopfMonomial::torus(-e[0], -e[1]);
    return trans(e[1], e[0], e[3], e[2]);
}

Word HopfMonomial::word(bool torus) const {
    Word w;
    if (torus) {
        for (int j = 0; j < 2; ++j)
            for (int n = 0; n < std::abs(e[j]); ++n) w.push_back(gen(Space::HopfTorus, j + 1, e[j] < 0));
        return w;
    }
    for (int i = 0; i < 4; ++i)
        for (int n = 0; n < e[i]; ++n) w.push_back(gen(Space::HopfTrans, i / 2 + 1, i % 2 == 1));
    return w;
}

std::string HopfMonomial::label(bool torus) const {
    Word w = word(torus);
    return word_label(w);
}

std::vector<std::pair<std::vector<HopfMonomial>, double>> coproduct(const TwistModel& m, const HopfMonomial& h,
                                                                    int legs) {
    std::vector<std::pair<std::vector<HopfMonomial>, double>> out;
    if (m.torus()) {
        out.push_back({std::vector<HopfMonomial>(static_cast<std::size_t>(legs), h), 1.0});
        return out;
    }
    // primitive letters: distribute each exponent over the legs with multinomial weight
    std::vector<HopfMonomial> cur(static_cast<std::size_t>(legs));
    std::function<void(int, double)> rec = [&](int letter, double weight) {
        if (letter == 4) {
            out.push_back({cur, weight});
            return;
        }
        int n = h.e[letter];
        std::function<void(int, int, double)> split = [&](int leg, int left, double w) {
            if (leg == legs - 1) {
                cur[static_cast<std::size_t>(leg)].e[letter] = left;
                // multinomial: n! / prod k_i!, accumulated as w / left!
                rec(letter + 1, w / std::tgamma(left + 1));
                return;
            }
            for (int k = 0; k <= left; ++k) {
                cur[static_cast<std::size_t>(leg)].e[letter] = k;
                split(leg + 1, left - k, w / std::tgamma(k + 1));
            }
        };
        split(0, n, weight * std::tgamma(n + 1));
    };
    rec(0, 1.0);
    return out;
}

Coefficient counit(const TwistModel& m, const HopfMonomial& h) {
    if (m.torus()) return Coefficient(1.0);
    return Coefficient(h.is_one() ? 1.0 : 0.0);
}

namespace {

using Pairing = std::array<std::array<cplx, 4>, 4>;

// F(t_a, t_b) without the formal hbar
Pairing moyal_pairing(const TwistModel& m, double sign) {
    Pairing c{};
    if (m.kind != ModelKind::Moyal || m.hbar == 0.0) return c;
    const cplx i(0.0, 1.0);
    c[1][0] = sign * 0.5 * i * m.alpha;
    c[0][1] = -sign * 0.5 * i * m.alpha;
    c[3][2] = -sign * 0.5 * i * m.beta;
    c[2][3] = sign * 0.5 * i * m.beta;
    return c;
}

// exp(c^{ab} d_a (x) d_b) paired on monomials of equal degree
cplx exp_pairing(const Pairing& c, HopfMonomial h, HopfMonomial g) {
    if (h.degree() != g.degree()) return 0.0;
    if (h.degree() == 0) return 1.0;
    int a = 0;
    while (h.e[a] == 0) ++a;
    h.e[a] -= 1;
    cplx s = 0.0;
    for (int b = 0; b < 4; ++b) {
        if (g.e[b] == 0 || c[a][b] == 0.0) continue;
        HopfMonomial g2 = g;
        g2.e[b] -= 1;
        s += c[a][b] * static_cast<double>(g.e[b]) * exp_pairing(c, h, g2);
    }
    return s;
}

// mu^{n/2}, the odd half folded into the numeric value
Coefficient mu_half_power(const TwistModel& m, int n) {
    if (m.theta == 0.0) return Coefficient(1.0);
    int q = n >= 0 ? n / 2 : -((-n + 1) / 2);
    int r = n - 2 * q;
    return Coefficient(std::polar(1.0, 0.5 * std::numbers::pi * m.theta * r), 0, q);
}

Coefficient cocycle_impl(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g, double sign) {
    if (m.torus()) {
        // Theta = 1/2 [[0, -theta], [theta, 0]]
        int n = h.e[1] * g.e[0] - h.e[0] * g.e[1];
        return mu_half_power(m, static_cast<int>(sign) * n);
    }
    Pairing c = moyal_pairing(m, sign);
    if (m.kind != ModelKind::Moyal || m.hbar == 0.0) return Coefficient((h.is_one() && g.is_one()) ? 1.0 : 0.0);
    return Coefficient(exp_pairing(c, h, g), h.degree(), 0);
}

double formal_residual(const TwistModel& m, const NCPolynomial& constant) {
    std::map<int, cplx> by_hbar;
    EvalParams p;
    p.theta = m.theta;
    for (const auto& [k, v] : constant.terms()) by_hbar[k.hbar] += Coefficient(v, 0, k.mu).evaluate(p);
    double r = 0.0;
    for (const auto& [h, v] : by_hbar) r = std::max(r, std::abs(v));
    return r;
}

void add_coaction(Coaction& c, const HopfMonomial& h, const NCPolynomial& p) {
    auto& slot = c[h];
    slot += p;
    if (slot.is_zero()) c.erase(h);
}

std::array<int, 2> torus_weight(const GeneratorId& g) {
    std::array<int, 2> w{0, 0};
    int j = g.index;
    switch (g.space) {
        case Space::C4:
        case Space::MonadM:
        case Space::MonadN: {
            static const int table[5][2] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
            w = {table[j][0], table[j][1]};
            if (g.space != Space::C4) w = {-w[0], -w[1]};
            break;
        }
        case Space::R4:
            w = j == 1 ? std::array<int, 2>{1, -1} : std::array<int, 2>{-1, -1};
            break;
        default: throw MissingCoaction(g.label());
    }
    if (g.conjugated) w = {-w[0], -w[1]};
    return w;
}

Coaction translation_coaction(const GeneratorId& g) {
    Coaction c;
    add_coaction(c, HopfMonomial::one(), NCPolynomial::generator(g));
    auto letter = [&](int j) {
        GeneratorId x = g;
        x.index = j;
        return x;
    };
    auto t = [&](int j, bool conj) {
        HopfMonomial h;
        h.e[2 * (j - 1) + (conj ? 1 : 0)] = 1;
        return g.conjugated ? h.star(false) : h;
    };
    auto term = [&](double s, const HopfMonomial& h, const NCPolynomial& p) { add_coaction(c, h, Coefficient(s) * p); };
    switch (g.space) {
        case Space::C4:
            if (g.index == 3) {
                term(1.0, t(1, true), NCPolynomial::generator(letter(1)));
                term(1.0, t(2, true), NCPolynomial::generator(letter(2)));
            } else if (g.index == 4) {
                term(-1.0, t(2, false), NCPolynomial::generator(letter(1)));
                term(1.0, t(1, false), NCPolynomial::generator(letter(2)));
            }
            break;
        case Space::R4:
            if (g.grade == 0) term(1.0, t(g.index, false), NCPolynomial::constant(1.0));
            break;
        case Space::MonadM:
        case Space::MonadN:
            if (g.index == 1) {
                term(-1.0, t(1, true), NCPolynomial::generator(letter(3)));
                term(1.0, t(2, false), NCPolynomial::generator(letter(4)));
            } else if (g.index == 2) {
                term(-1.0, t(2, true), NCPolynomial::generator(letter(3)));
                term(-1.0, t(1, false), NCPolynomial::generator(letter(4)));
            }
            break;
        default: throw MissingCoaction(g.label());
    }
    return c;
}

}  // namespace

Coefficient cocycle_eval(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g) {
    return cocycle_impl(m, h, g, 1.0);
}

Coefficient cocycle_inv_eval(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g) {
    return cocycle_impl(m, h, g, -1.0);
}

Coefficient r_matrix(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g) {
    if (m.torus()) {
        if (m.theta == 0.0) return Coefficient(1.0);
        return Coefficient(1.0, 0, h.e[0] * g.e[1] - h.e[1] * g.e[0]);
    }
    if (m.kind != ModelKind::Moyal || m.hbar == 0.0) return Coefficient((h.is_one() && g.is_one()) ? 1.0 : 0.0);
    // R(h, g) = F(g1, h1) F^-1(h2, g2); every term carries hbar^{deg}
    cplx s = 0.0;
    for (const auto& [hs, hw] : coproduct(m, h))
        for (const auto& [gs, gw] : coproduct(m, g)) {
            Coefficient a = cocycle_eval(m, gs[0], hs[0]);
            if (a.value == 0.0) continue;
            Coefficient b = cocycle_inv_eval(m, hs[1], gs[1]);
            s += hw * gw * a.value * b.value;
        }
    return Coefficient(s, h.degree(), 0);
}

std::vector<GeneratorId> space_generators(Space s, const SpaceOptions& o) {
    std::vector<GeneratorId> out;
    int grades = o.calculus ? 2 : 1;
    switch (s) {
        case Space::C4:
        case Space::R4: {
            int n = s == Space::C4 ? 4 : 2;
            for (int j = 1; j <= n; ++j)
                for (int c = 0; c < 2; ++c)
                    for (int g = 0; g < grades; ++g) out.push_back(gen(s, j, c == 1, g));
            break;
        }
        case Space::MonadM:
        case Space::MonadN: {
            int rows = s == Space::MonadM ? o.monad_rows : o.monad_cols;
            int cols = s == Space::MonadM ? o.monad_cols : o.monad_rows;
            for (int j = 1; j <= 4; ++j)
                for (int a = 1; a <= rows; ++a)
                    for (int b = 1; b <= cols; ++b)
                        for (int c = 0; c < 2; ++c) out.push_back(monad_gen(s, j, a, b, c == 1));
            break;
        }
        default: throw MissingCoaction(std::string("no generator list for ") + space_name(s));
    }
    return out;
}

std::vector<GeneratorId> hopf_generators(const TwistModel& m) {
    std::vector<GeneratorId> out;
    Space s = m.hopf_space();
    for (int j = 1; j <= 2; ++j)
        for (int c = 0; c < 2; ++c) out.push_back(gen(s, j, c == 1));
    return out;
}

Coaction coaction(const TwistModel& m, const GeneratorId& g) {
    if (m.torus()) {
        auto w = torus_weight(g);
        Coaction c;
        c[HopfMonomial::torus(w[0], w[1])] = NCPolynomial::generator(g);
        return c;
    }
    return translation_coaction(g);
}

Coaction coaction(const TwistModel& m, const NCPolynomial& p) {
    Coaction out;
    for (const auto& [k, v] : p.terms()) {
        Coaction cur;
        cur[HopfMonomial::one()] = NCPolynomial::constant(Coefficient(v, k.hbar, k.mu));
        for (const auto& g : k.word) {
            Coaction cg = coaction(m, g);
            Coaction next;
            for (const auto& [h1, p1] : cur)
                for (const auto& [h2, p2] : cg) add_coaction(next, h1 * h2, p1.concat(p2));
            cur = std::move(next);
        }
        for (const auto& [h, q] : cur) add_coaction(out, h, q);
    }
    return out;
}

NCPolynomial act(const TwistModel& m, const HopfMonomial& h, const NCPolynomial& p) {
    NCPolynomial out;
    for (const auto& [hm, q] : coaction(m, p)) out += r_matrix(m, hm, h) * q;
    return out;
}

RelationSystem classical_relations(const TwistModel& m, const std::vector<NCPolynomial>& ps) {
    std::set<GeneratorId> seen;
    std::vector<GeneratorId> todo;
    for (const auto& p : ps)
        for (const auto& g : p.generators())
            if (seen.insert(g).second) todo.push_back(g);
    while (!todo.empty()) {
        GeneratorId g = todo.back();
        todo.pop_back();
        for (const auto& [h, q] : coaction(m, g))
            for (const auto& x : q.generators())
                if (seen.insert(x).second) todo.push_back(x);
    }
    return RelationSystem::commutative(std::vector<GeneratorId>(seen.begin(), seen.end()), "classical");
}

RelationSystem classical_relations(const std::vector<Space>& spaces, const SpaceOptions& o) {
    std::vector<GeneratorId> gens;
    for (Space s : spaces) {
        auto g = space_generators(s, o);
        gens.insert(gens.end(), g.begin(), g.end());
    }
    RelationSystem r = RelationSystem::commutative(gens, "classical");
    r.has_calculus = o.calculus;
    return r;
}

NCPolynomial twist_product(const TwistModel& m, const NCPolynomial& a, const NCPolynomial& b,
                           const RelationSystem& classical) {
    Coaction ca = coaction(m, a), cb = coaction(m, b);
    NCPolynomial out;
    for (const auto& [ha, pa] : ca)
        for (const auto& [hb, pb] : cb) {
            Coefficient f = cocycle_eval(m, ha, hb);
            if (std::abs(f.value) <= kCoeffTol) continue;
            out += f * pa.concat(pb);
        }
    return normal_form(out, classical);
}

NCPolynomial twist_product(const TwistModel& m, const NCPolynomial& a, const NCPolynomial& b) {
    return twist_product(m, a, b, classical_relations(m, {a, b}));
}

NCPolynomial twist_word(const TwistModel& m, const Word& w, const RelationSystem& classical) {
    NCPolynomial acc = NCPolynomial::constant(1.0);
    for (const auto& g : w) acc = twist_product(m, acc, NCPolynomial::generator(g), classical);
    return acc;
}

RelationSystem derive_relations(const TwistModel& m, const std::vector<Space>& spaces, const SpaceOptions& o,
                                const DeriveOptions& d) {
    std::vector<GeneratorId> gens;
    for (Space s : spaces) {
        auto g = space_generators(s, o);
        gens.insert(gens.end(), g.begin(), g.end());
    }
    std::map<GeneratorId, Coaction> co;
    for (const auto& g : gens) co[g] = coaction(m, g);

    RelationSystem raw;
    raw.name = m.name();
    for (Space s : spaces) raw.name += std::string(" ") + space_name(s);
    raw.has_calculus = o.calculus;
    for (const auto& g : gens) raw.add_generator(g);

    // braided commutativity: g h = (-1)^{|g||h|} R(h^(-1), g^(-1)) h^(0) g^(0)
    for (const auto& g : gens)
        for (const auto& h : gens) {
            bool odd_square = (g == h) && (g.grade % 2 == 1);
            if (!(h < g) && !odd_square) continue;
            double sign = (g.grade * h.grade) % 2 ? -1.0 : 1.0;
            NCPolynomial rhs;
            for (const auto& [hm, hp] : co[h])
                for (const auto& [gm, gp] : co[g]) {
                    Coefficient r = r_matrix(m, hm, gm);
                    if (std::abs(r.value) <= kCoeffTol) continue;
                    rhs += Coefficient(sign) * r * hp.concat(gp);
                }
            Word lhs{g, h};
            Coefficient c = rhs.coefficient(lhs);
            if (std::abs(c.value - 1.0) <= kCoeffTol) throw NonConfluent("degenerate self-rule for " + word_label(lhs));
            rhs -= NCPolynomial::monomial(lhs, c);
            rhs *= Coefficient(1.0 / (1.0 - c.value));
            raw.set_rule(g, h, rhs);
        }

    RelationSystem out = raw;
    for (const auto& [pr, rhs] : raw.rules()) out.set_rule(pr.first, pr.second, normal_form(rhs, raw));

    if (d.verify) {
        if (!out.check_termination()) throw NonTerminating("derived rules do not decrease in " + out.name);
        std::string why;
        if (!out.check_confluence(&why)) throw NonConfluent(why);
    }
    return out;
}

RelationSystem smash_relations(const TwistModel& m, const std::vector<Space>& spaces, const SpaceOptions& o,
                               const DeriveOptions& d) {
    RelationSystem sys = derive_relations(m, spaces, o, DeriveOptions{false});
    sys.name += " smash";
    std::vector<GeneratorId> alg(sys.generators().begin(), sys.generators().end());
    auto hg = hopf_generators(m);
    for (const auto& x : hg) sys.add_generator(x);
    if (m.torus()) {
        for (int j = 1; j <= 2; ++j) {
            GeneratorId s = gen(Space::HopfTorus, j), si = gen(Space::HopfTorus, j, true);
            sys.set_rule(s, si, NCPolynomial::constant(1.0));
            sys.set_rule(si, s, NCPolynomial::constant(1.0));
        }
    }
    for (const auto& x : hg) {
        HopfMonomial hx = HopfMonomial::from_generator(x);
        for (const auto& a : alg) {
            NCPolynomial moved = act(m, hx, NCPolynomial::generator(a));
            NCPolynomial rhs;
            if (m.torus()) {
                // group-like: x a = (x |> a) x
                rhs = moved.concat(NCPolynomial::generator(x));
            } else {
                // primitive: x a = a x + x |> a
                rhs = NCPolynomial::monomial({a, x}) + moved;
            }
            sys.set_rule(x, a, rhs);
        }
    }
    if (d.verify) {
        if (!sys.check_termination()) throw NonTerminating("smash rules do not decrease in " + sys.name);
        std::string why;
        if (!sys.check_confluence(&why)) throw NonConfluent(why);
    }
    return sys;
}

double two_cocycle_residual(const TwistModel& m, const HopfMonomial& f, const HopfMonomial& g, const HopfMonomial& h) {
    // F(g1, f1) F(h1, g2 f2) F^-1(h2 g3, f3) F^-1(h3, g4) = eps(f) eps(h) eps(g)
    NCPolynomial acc;
    auto cf = coproduct(m, f, 3);
    auto cg = coproduct(m, g, 4);
    auto ch = coproduct(m, h, 3);
    for (const auto& [fs, fw] : cf)
        for (const auto& [gs, gw] : cg) {
            Coefficient a = cocycle_eval(m, gs[0], fs[0]);
            if (std::abs(a.value) <= kCoeffTol) continue;
            for (const auto& [hs, hw] : ch) {
                Coefficient b = cocycle_eval(m, hs[0], gs[1] * fs[1]);
                if (std::abs(b.value) <= kCoeffTol) continue;
                Coefficient c = cocycle_inv_eval(m, hs[1] * gs[2], fs[2]);
                if (std::abs(c.value) <= kCoeffTol) continue;
                Coefficient e = cocycle_inv_eval(m, hs[2], gs[3]);
                Coefficient t = a * b * c * e;
                t.value *= fw * gw * hw;
                acc.add_term(Word{}, t);
            }
        }
    acc.add_term(Word{}, Coefficient(-1.0) * counit(m, f) * counit(m, g) * counit(m, h));
    return formal_residual(m, acc);
}

double bicharacter_residual(const TwistModel& m, const HopfMonomial& f, const HopfMonomial& g, const HopfMonomial& h) {
    double worst = 0.0;
    using Form = Coefficient (*)(const TwistModel&, const HopfMonomial&, const HopfMonomial&);
    for (Form form : {Form(&r_matrix), Form(&cocycle_eval)}) {
        // X(fg, h) = X(f, h1) X(g, h2)
        NCPolynomial left;
        left.add_term(Word{}, form(m, f * g, h));
        for (const auto& [hs, w] : coproduct(m, h)) {
            Coefficient t = form(m, f, hs[0]) * form(m, g, hs[1]);
            t.value *= -w;
            left.add_term(Word{}, t);
        }
        worst = std::max(worst, formal_residual(m, left));
        // X(f, gh) = X(f1, h) X(f2, g)
        NCPolynomial right;
        right.add_term(Word{}, form(m, f, g * h));
        for (const auto& [fs, w] : coproduct(m, f)) {
            Coefficient t = form(m, fs[0], h) * form(m, fs[1], g);
            t.value *= -w;
            right.add_term(Word{}, t);
        }
        worst = std::max(worst, formal_residual(m, right));
    }
    return worst;
}

double cotriangular_residual(const TwistModel& m, const HopfMonomial& h, const HopfMonomial& g) {
    NCPolynomial acc;
    for (const auto& [hs, hw] : coproduct(m, h))
        for (const auto& [gs, gw] : coproduct(m, g)) {
            Coefficient t = r_matrix(m, hs[0], gs[0]) * r_matrix(m, gs[1], hs[1]);
            t.value *= hw * gw;
            acc.add_term(Word{}, t);
        }
    acc.add_term(Word{}, Coefficient(-1.0) * counit(m, g) * counit(m, h));
    return formal_residual(m, acc);
}

double crossmod_residual(const TwistModel& m, const HopfMonomial& h, const GeneratorId& v) {
    Coaction lhs, rhs;
    NCPolynomial pv = NCPolynomial::generator(v);
    for (const auto& [hs, w] : coproduct(m, h)) {
        for (const auto& [vm, vp] : coaction(m, pv)) add_coaction(lhs, hs[0] * vm, Coefficient(w) * act(m, hs[1], vp));
        NCPolynomial moved = act(m, hs[0], pv);
        for (const auto& [wm, wp] : coaction(m, moved)) add_coaction(rhs, wm * hs[1], Coefficient(w) * wp);
    }
    double worst = 0.0;
    for (const auto& [k, p] : lhs) {
        NCPolynomial d = p;
        if (auto it = rhs.find(k); it != rhs.end()) d -= it->second;
        for (const auto& [t, c] : d.terms()) {
            NCPolynomial single;
            single.add_term(Word{}, Coefficient(c, t.hbar, t.mu));
            worst = std::max(worst, formal_residual(m, single));
        }
    }
    for (const auto& [k, p] : rhs)
        if (!lhs.count(k))
            for (const auto& [t, c] : p.terms()) worst = std::max(worst, std::abs(c));
    return worst;
}

}  // namespace adhm
