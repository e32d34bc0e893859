#include "adhm/twistor.hpp"

#include <algorithm>

#include "adhm/errors.hpp"

namespace adhm {

namespace twistor {

GeneratorId x(int j, bool conj) { return gen(Space::S4, j, j == 0 ? false : conj); }
GeneratorId a(int j) { return gen(Space::CP3, j); }
GeneratorId u(int j, bool conj) { return gen(Space::CP3, 10 + j, conj); }
GeneratorId v(int j, bool conj) { return gen(Space::CP3, 20 + j, conj); }
GeneratorId cp1(int j, bool conj) { return gen(Space::CP1, j, j == 3 ? conj : false); }
GeneratorId inv_one_plus_zeta2() { return gen(Space::Aux, 1); }
GeneratorId inv_one_plus_x0() { return gen(Space::Aux, 2); }
GeneratorId inv_a1_plus_a2() { return gen(Space::Aux, 3); }

NCPolynomial q_entry(int j, int l) {
    // upper triangle of q; the lower one is its adjoint
    static const int table[4][4] = {{1, 11, 12, 13}, {0, 2, 23, 22}, {0, 0, 3, 21}, {0, 0, 0, 4}};
    bool conj = j > l;
    int r = std::min(j, l), c = std::max(j, l);
    int idx = table[r - 1][c - 1];
    return NCPolynomial::generator(gen(Space::CP3, idx, idx >= 10 ? conj : false));
}

}  // namespace twistor

namespace {

using namespace twistor;

NCPolynomial P(const GeneratorId& g) { return NCPolynomial::generator(g); }
NCPolynomial C(double c) { return NCPolynomial::constant(c); }
NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) { return a.concat(b); }
NCPolynomial operator*(double s, const NCPolynomial& a) { return Coefficient(s) * a; }

bool multiset_contains(const Word& word, const Word& lead, Word* rest) {
    Word w = word;
    for (const auto& g : lead) {
        auto it = std::find(w.begin(), w.end(), g);
        if (it == w.end()) return false;
        w.erase(it);
    }
    if (rest) *rest = std::move(w);
    return true;
}

}  // namespace

void QuotientContext::add_rule(Word lead, NCPolynomial rhs) {
    std::sort(lead.begin(), lead.end());
    rules_.push_back({std::move(lead), normal_form(rhs, ambient_)});
}

NCPolynomial QuotientContext::reduce(const NCPolynomial& p) const {
    NCPolynomial::Map pending = normal_form(p, ambient_).terms();
    NCPolynomial out;
    std::size_t steps = 0;
    while (!pending.empty()) {
        auto it = std::prev(pending.end());
        TermKey key = it->first;
        cplx c = it->second;
        pending.erase(it);
        const SideRule* hit = nullptr;
        Word rest;
        for (const auto& r : rules_)
            if (multiset_contains(key.word, r.lead, &rest)) {
                hit = &r;
                break;
            }
        if (!hit) {
            out.add_term(key, c);
            continue;
        }
        if (++steps > kStepBudget) throw NonTerminating("side relations do not terminate");
        NCPolynomial rep = NCPolynomial::monomial(rest, Coefficient(c, key.hbar, key.mu)).concat(hit->rhs);
        NCPolynomial red = normal_form(rep, ambient_);
        for (const auto& [k, v] : red.terms()) {
            auto [jt, inserted] = pending.try_emplace(k, v);
            if (!inserted) jt->second += v;
            if (std::abs(jt->second) <= kCoeffTol) pending.erase(jt);
        }
    }
    return out;
}

RelationSystem twistor_ambient() {
    RelationSystem r;
    r.name = "twistor";
    for (int j = 1; j <= 4; ++j) {
        r.add_generator(z(j));
        r.add_generator(z(j, true));
    }
    for (int j = 1; j <= 2; ++j) {
        r.add_generator(zeta(j));
        r.add_generator(zeta(j, true));
        r.add_generator(x(j));
        r.add_generator(x(j, true));
    }
    r.add_generator(x(0), x(0));
    for (int j = 1; j <= 4; ++j) r.add_generator(a(j), a(j));
    for (int j = 1; j <= 3; ++j) {
        r.add_generator(u(j));
        r.add_generator(u(j, true));
        r.add_generator(v(j));
        r.add_generator(v(j, true));
    }
    r.add_generator(cp1(1), cp1(1));
    r.add_generator(cp1(2), cp1(2));
    r.add_generator(cp1(3));
    r.add_generator(cp1(3, true));
    for (const auto& g : {inv_one_plus_zeta2(), inv_one_plus_x0(), inv_a1_plus_a2()}) r.add_generator(g, g);
    return r;
}

NCPolynomial substitute(const NCPolynomial& p, const std::map<GeneratorId, NCPolynomial>& images,
                        const RelationSystem& target) {
    NCPolynomial out;
    for (const auto& [k, c] : p.terms()) {
        NCPolynomial t = NCPolynomial::constant(Coefficient(c, k.hbar, k.mu));
        for (const auto& g : k.word) {
            auto it = images.find(g);
            t = t.concat(it == images.end() ? NCPolynomial::generator(g) : it->second);
        }
        out += t;
    }
    return normal_form(out, target);
}

NCPolynomial J_of(const GeneratorId& g) {
    NCPolynomial img;
    if (g.space == Space::C4 && g.grade == 0) {
        static const int target[5] = {0, 2, 1, 4, 3};
        static const double sign[5] = {0, -1, 1, -1, 1};
        // J(z_j) = sign * z_target^*, and J(z_j^*) = J(z_j)^*
        img = Coefficient(sign[g.index]) * P(z(target[g.index], !g.conjugated));
        return img;
    }
    if (g.space == Space::CP3) {
        int i = g.index;
        GeneratorId t;
        double s = 1.0;
        bool star = false;
        if (i <= 4) {
            static const int swap[5] = {0, 2, 1, 4, 3};
            t = a(swap[i]);
        } else if (i == 11) {
            t = u(1), s = -1.0;
        } else if (i == 21) {
            t = v(1), s = -1.0;
        } else if (i == 12) {
            t = v(2), star = true;
        } else if (i == 13) {
            t = v(3), s = -1.0, star = true;
        } else if (i == 22) {
            t = u(2), star = true;
        } else if (i == 23) {
            t = u(3), s = -1.0, star = true;
        } else {
            throw UnknownGenerator(g.label());
        }
        if (i > 4 && (star != g.conjugated)) t = t.toggled();
        return Coefficient(s) * P(t);
    }
    throw UnknownGenerator("J is not defined on " + g.label());
}

NCPolynomial apply_J(const NCPolynomial& p) {
    RelationSystem amb = twistor_ambient();
    NCPolynomial out;
    for (const auto& [k, c] : p.terms()) {
        NCPolynomial t = NCPolynomial::constant(Coefficient(c, k.hbar, k.mu));
        for (auto it = k.word.rbegin(); it != k.word.rend(); ++it) t = t.concat(J_of(*it));
        out += t;
    }
    return normal_form(out, amb);
}

namespace {

NCPolynomial star_of(const NCPolynomial& p, const RelationSystem& amb) { return adjoint(p, amb); }

// (inc): S4 letters as functions on S7
std::map<GeneratorId, NCPolynomial> inc_images(const RelationSystem& amb) {
    std::map<GeneratorId, NCPolynomial> m;
    m[x(1)] = 2.0 * (P(z(1)) * P(z(3, true)) + P(z(2, true)) * P(z(4)));
    m[x(2)] = 2.0 * (P(z(2)) * P(z(3, true)) - P(z(1, true)) * P(z(4)));
    m[x(0)] = P(z(1)) * P(z(1, true)) + P(z(2)) * P(z(2, true)) - P(z(3)) * P(z(3, true)) - P(z(4)) * P(z(4, true));
    m[x(1, true)] = star_of(m[x(1)], amb);
    m[x(2, true)] = star_of(m[x(2)], amb);
    return m;
}

// (tw-inc): q_jl = z_j z_l^*
std::map<GeneratorId, NCPolynomial> twinc_images() {
    std::map<GeneratorId, NCPolynomial> m;
    for (int j = 1; j <= 4; ++j)
        for (int l = 1; l <= 4; ++l) {
            NCPolynomial q = q_entry(j, l);
            GeneratorId g = q.terms().begin()->first.word[0];
            m[g] = P(z(j)) * P(z(l, true));
        }
    return m;
}

// (tw-fib): S4 letters inside CP3
std::map<GeneratorId, NCPolynomial> fib_images(const RelationSystem& amb) {
    std::map<GeneratorId, NCPolynomial> m;
    m[x(0)] = 2.0 * (P(a(1)) + P(a(2)) - C(1.0));
    m[x(1)] = 2.0 * (P(u(2)) + P(v(2, true)));
    m[x(2)] = 2.0 * (P(v(3)) - P(u(3, true)));
    m[x(1, true)] = star_of(m[x(1)], amb);
    m[x(2, true)] = star_of(m[x(2)], amb);
    return m;
}

NCPolynomial zeta_norm2() {
    return P(zeta(1, true)) * P(zeta(1)) + P(zeta(2, true)) * P(zeta(2));
}

NCPolynomial sphere7_rhs() {
    return C(1.0) - P(z(1)) * P(z(1, true)) - P(z(2)) * P(z(2, true)) - P(z(3)) * P(z(3, true));
}

}  // namespace

Report verify_embeddings() {
    Report rep;
    rep.title = "twistor embeddings";
    const double tol = kCoeffTol;
    RelationSystem amb = twistor_ambient();

    QuotientContext s7(amb);
    s7.add_rule({z(4), z(4, true)}, sphere7_rhs());

    auto inc = inc_images(amb);
    auto twinc = twinc_images();

    // (1) the S4 relation holds on the images of (inc)
    {
        NCPolynomial rel = P(x(1, true)) * P(x(1)) + P(x(2, true)) * P(x(2)) + P(x(0)) * P(x(0)) - C(1.0);
        NCPolynomial r = s7.reduce(substitute(rel, inc, amb));
        rep.add("S4 relation on S7 images", r.max_abs(), tol, r.to_string());
    }
    // q_jl = z_j z_l^* respects the trace and projector relations
    {
        NCPolynomial tr = P(a(1)) + P(a(2)) + P(a(3)) + P(a(4)) - C(1.0);
        NCPolynomial r = s7.reduce(substitute(tr, twinc, amb));
        double worst = r.max_abs();
        for (int j = 1; j <= 4; ++j)
            for (int l = 1; l <= 4; ++l) {
                NCPolynomial q2;
                for (int s = 1; s <= 4; ++s) q2 += q_entry(j, s) * q_entry(s, l);
                worst = std::max(worst, s7.reduce(substitute(q2 - q_entry(j, l), twinc, amb)).max_abs());
            }
        rep.add("CP3 trace and projector relations on S7 images", worst, tol);
    }
    // (2) fibration images are J-fixed
    {
        auto fib = fib_images(amb);
        double worst = 0.0;
        for (const auto& [g, img] : fib) worst = std::max(worst, (apply_J(img) - img).max_abs());
        rep.add("fibration images are J-fixed", worst, tol);

        // the fibration composed with q = z z^* is (inc)
        double agree = 0.0;
        // with Tr q = 1 the x0 image consistent with (inc) is 2(a1 + a2) - 1
        auto fib_inc = fib;
        fib_inc[x(0)] = 2.0 * (P(a(1)) + P(a(2))) - C(1.0);
        for (const auto& [g, img] : fib_inc)
            agree = std::max(agree, s7.reduce(substitute(img, twinc, amb) - inc.at(g)).max_abs());
        rep.add("fibration agrees with S7 inclusion", agree, tol);
        rep.add("shifted x0 image is J-fixed", (apply_J(fib_inc[x(0)]) - fib_inc[x(0)]).max_abs(), tol);

        // J on CP3 letters is induced from J on C4
        double induced = 0.0;
        for (const auto& [g, img] : twinc) {
            NCPolynomial lhs = substitute(J_of(g), twinc, amb);
            NCPolynomial rhs = apply_J(img);
            induced = std::max(induced, (lhs - rhs).max_abs());
            if (g.index >= 10) {
                NCPolynomial lhs2 = substitute(J_of(g.toggled()), twinc, amb);
                NCPolynomial rhs2 = apply_J(star_of(img, amb));
                induced = std::max(induced, (lhs2 - rhs2).max_abs());
            }
        }
        rep.add("CP3 J table induced by C4 J", induced, tol);
    }
    // (3) stereographic chart and its inverse
    {
        GeneratorId w = inv_one_plus_zeta2(), vv = inv_one_plus_x0();
        QuotientContext r4(amb);
        r4.add_rule({w, zeta(1), zeta(1, true)}, C(1.0) - P(w) - P(w) * P(zeta(2)) * P(zeta(2, true)));
        QuotientContext s4(amb);
        s4.add_rule({x(1), x(1, true)}, C(1.0) - P(x(2)) * P(x(2, true)) - P(x(0)) * P(x(0)));
        s4.add_rule({x(0), vv}, C(1.0) - P(vv));

        std::map<GeneratorId, NCPolynomial> chart, chinv;
        chart[x(1)] = 2.0 * P(zeta(1)) * P(w);
        chart[x(1, true)] = 2.0 * P(zeta(1, true)) * P(w);
        chart[x(2)] = 2.0 * P(zeta(2)) * P(w);
        chart[x(2, true)] = 2.0 * P(zeta(2, true)) * P(w);
        chart[x(0)] = (C(1.0) - zeta_norm2()) * P(w);
        chart[vv] = 0.5 * (C(1.0) + zeta_norm2());
        chinv[zeta(1)] = P(x(1)) * P(vv);
        chinv[zeta(1, true)] = P(x(1, true)) * P(vv);
        chinv[zeta(2)] = P(x(2)) * P(vv);
        chinv[zeta(2, true)] = P(x(2, true)) * P(vv);
        chinv[w] = 0.5 * (C(1.0) + P(x(0)));

        double worst = 0.0;
        for (const auto& [g, img] : chinv)
            worst = std::max(worst, r4.reduce(substitute(img, chart, amb) - P(g)).max_abs());
        for (const auto& [g, img] : chart)
            worst = std::max(worst, s4.reduce(substitute(img, chinv, amb) - P(g)).max_abs());
        rep.add("chart and inverse chart are mutually inverse", worst, tol);

        NCPolynomial sph = P(x(1, true)) * P(x(1)) + P(x(2, true)) * P(x(2)) + P(x(0)) * P(x(0)) - C(1.0);
        NCPolynomial inv_x = P(vv) * (C(1.0) + P(x(0))) - C(1.0);
        NCPolynomial inv_z = P(w) * (C(1.0) + zeta_norm2()) - C(1.0);
        double rels = std::max({r4.reduce(substitute(sph, chart, amb)).max_abs(),
                                r4.reduce(substitute(inv_x, chart, amb)).max_abs(),
                                s4.reduce(substitute(inv_z, chinv, amb)).max_abs()});
        rep.add("chart maps preserve the defining relations", rels, tol);
    }
    // (4) localised trivialisation, checked on S7 with (a1 + a2)^-1 adjoined
    {
        GeneratorId e = inv_a1_plus_a2();
        QuotientContext loc(amb);
        loc.add_rule({z(4), z(4, true)}, sphere7_rhs());
        loc.add_rule({e, z(1), z(1, true)}, C(1.0) - P(e) * P(z(2)) * P(z(2, true)));

        std::map<GeneratorId, NCPolynomial> triv;
        triv[zeta(1)] = P(e) * (P(u(2)) + P(v(2, true)));
        triv[zeta(2)] = P(e) * (P(v(3)) - P(u(3, true)));
        triv[zeta(1, true)] = star_of(triv[zeta(1)], amb);
        triv[zeta(2, true)] = star_of(triv[zeta(2)], amb);
        triv[cp1(1)] = P(e) * P(a(1));
        triv[cp1(2)] = P(e) * P(a(2));
        triv[cp1(3)] = P(e) * P(u(1));
        triv[cp1(3, true)] = P(e) * P(u(1, true));
        // pull back to S7 through q = z z^*
        for (auto& [g, img] : triv) img = substitute(img, twinc, amb);

        NCPolynomial trace = substitute(C(1.0) + zeta_norm2(), triv, amb) - P(e);
        rep.add("trace relation: (a1+a2)^-1 maps to 1+|zeta|^2", loc.reduce(trace).max_abs(), tol);

        NCPolynomial cp1_sum = P(cp1(1)) + P(cp1(2)) - C(1.0);
        NCPolynomial cp1_det = P(cp1(1)) * P(cp1(2)) - P(cp1(3, true)) * P(cp1(3));
        double cp = std::max(loc.reduce(substitute(cp1_sum, triv, amb)).max_abs(),
                             loc.reduce(substitute(cp1_det, triv, amb)).max_abs());
        rep.add("CP1 relations preserved", cp, tol);

        double proj = 0.0;
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                for (int k = 1; k <= 4; ++k)
                    for (int l = 1; l <= 4; ++l) {
                        NCPolynomial d = q_entry(i, j) * q_entry(k, l) - q_entry(i, l) * q_entry(k, j);
                        proj = std::max(proj, loc.reduce(substitute(d, twinc, amb)).max_abs());
                    }
        rep.add("projector relations (proj) preserved", proj, tol);

        // 2(a1+a2) z3 = x1^* z1 + x2^* z2 and its companions
        NCPolynomial two_a = 2.0 * (P(z(1)) * P(z(1, true)) + P(z(2)) * P(z(2, true)));
        auto X = [&](int j, bool c) { return inc.at(x(j, c)); };
        double ids = 0.0;
        ids = std::max(ids, loc.reduce(two_a * P(z(3)) - X(1, true) * P(z(1)) - X(2, true) * P(z(2))).max_abs());
        ids = std::max(ids, loc.reduce(two_a * P(z(3, true)) - X(1, false) * P(z(1, true)) - X(2, false) * P(z(2, true))).max_abs());
        ids = std::max(ids, loc.reduce(two_a * P(z(4)) - X(1, false) * P(z(2)) + X(2, false) * P(z(1))).max_abs());
        ids = std::max(ids, loc.reduce(two_a * P(z(4, true)) - X(1, true) * P(z(2, true)) + X(2, true) * P(z(1, true))).max_abs());
        rep.add("inverse map identities for z3, z4", ids, tol);
    }
    return rep;
}

Report verify_J_involution() {
    Report rep;
    rep.title = "J involution";
    double c4 = 0.0;
    for (int j = 1; j <= 4; ++j)
        for (bool c : {false, true}) {
            NCPolynomial g = P(z(j, c));
            c4 = std::max(c4, (apply_J(apply_J(g)) + g).max_abs());
        }
    rep.add("J^2 = -id on C4 letters", c4, kCoeffTol);
    double cp3 = 0.0;
    std::vector<GeneratorId> letters;
    for (int j = 1; j <= 4; ++j) letters.push_back(a(j));
    for (int j = 1; j <= 3; ++j)
        for (bool c : {false, true}) {
            letters.push_back(u(j, c));
            letters.push_back(v(j, c));
        }
    for (const auto& g : letters) cp3 = std::max(cp3, (apply_J(apply_J(P(g))) - P(g)).max_abs());
    rep.add("J^2 = id on CP3 letters", cp3, kCoeffTol);
    return rep;
}

Report verify_J_equivariance(const TwistModel& m) {
    Report rep;
    rep.title = "J equivariance";
    double worst = 0.0;
    for (int j = 1; j <= 4; ++j)
        for (bool c : {false, true}) {
            GeneratorId g = z(j, c);
            Coaction lhs = coaction(m, J_of(g));
            Coaction rhs;
            for (const auto& [h, p] : coaction(m, g)) {
                NCPolynomial jp = apply_J(p);
                if (!jp.is_zero()) rhs[h] += jp;
            }
            for (const auto& [h, p] : lhs) {
                NCPolynomial d = p;
                if (rhs.count(h)) d -= rhs[h];
                worst = std::max(worst, d.max_abs());
            }
            for (const auto& [h, p] : rhs)
                if (!lhs.count(h)) worst = std::max(worst, p.max_abs());
        }
    rep.add("coaction commutes with J on C4 letters", worst, kCoeffTol);
    return rep;
}

}  // namespace adhm
