#include "adhm/star_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numbers>
#include <sstream>

#include "adhm/errors.hpp"

namespace adhm {

const char* space_name(Space s) {
    switch (s) {
        case Space::MonadM: return "MonadM";
        case Space::MonadN: return "MonadN";
        case Space::C4: return "C4";
        case Space::R4: return "R4";
        case Space::S7: return "S7";
        case Space::S4: return "S4";
        case Space::CP3: return "CP3";
        case Space::CP1: return "CP1";
        case Space::Aux: return "Aux";
        case Space::HopfTrans: return "HopfTrans";
        case Space::HopfTorus: return "HopfTorus";
    }
    return "?";
}

std::string GeneratorId::label() const {
    std::string base;
    switch (space) {
        case Space::MonadM:
        case Space::MonadN:
            base = (space == Space::MonadM ? "M" : "N") + std::to_string(index) + "_" + std::to_string(row) +
                   std::to_string(col);
            break;
        case Space::C4: base = "z" + std::to_string(index); break;
        case Space::R4: base = "zeta" + std::to_string(index); break;
        case Space::S7: base = "y" + std::to_string(index); break;
        case Space::S4: base = "x" + std::to_string(index); break;
        case Space::CP3:
            if (index < 10) base = "a" + std::to_string(index);
            else if (index < 20) base = "u" + std::to_string(index - 10);
            else base = "v" + std::to_string(index - 20);
            break;
        case Space::CP1: base = "p" + std::to_string(index); break;
        case Space::Aux: {
            static const char* names[] = {"aux0", "w", "v", "e", "rho2", "rhoinv2"};
            base = (index >= 0 && index <= 5) ? names[index] : "aux" + std::to_string(index);
            if (row > 0) base += "_" + std::to_string(row) + std::to_string(col);
            break;
        }
        case Space::HopfTrans: base = "t" + std::to_string(index); break;
        case Space::HopfTorus: base = "s" + std::to_string(index); break;
    }
    if (grade == 1) base = "d" + base;
    if (conjugated) base += "*";
    return base;
}

GeneratorId gen(Space s, int index, bool conj, int grade) {
    GeneratorId g;
    g.space = s;
    g.index = index;
    g.conjugated = conj;
    g.grade = grade;
    return g;
}

GeneratorId monad_gen(Space s, int index, int row, int col, bool conj) {
    GeneratorId g = gen(s, index, conj, 0);
    g.row = row;
    g.col = col;
    return g;
}

Coefficient Coefficient::conj() const {
    cplx v = std::conj(value);
    if (hbar_power % 2 != 0) v = -v;
    return {v, hbar_power, -mu_power};
}

cplx Coefficient::evaluate(const EvalParams& p) const {
    cplx r = value;
    if (hbar_power != 0) r *= std::pow(p.hbar, hbar_power);
    if (mu_power != 0) r *= std::polar(1.0, std::numbers::pi * p.theta * mu_power);
    return r;
}

bool Coefficient::approx_equal(const Coefficient& o, double tol) const {
    bool zero_a = std::abs(value) <= tol, zero_b = std::abs(o.value) <= tol;
    if (zero_a && zero_b) return true;
    return hbar_power == o.hbar_power && mu_power == o.mu_power && std::abs(value - o.value) <= tol;
}

int total_grade(const Word& w) {
    int g = 0;
    for (const auto& x : w) g += x.grade;
    return g;
}

int filtration_weight(const GeneratorId& g) {
    switch (g.space) {
        case Space::C4: return g.index >= 3 ? 1 : 0;
        case Space::MonadM:
        case Space::MonadN: return g.index <= 2 ? 1 : 0;
        default: return 0;
    }
}

int filtration_weight(const Word& w) {
    int s = 0;
    for (const auto& g : w) s += filtration_weight(g);
    return s;
}

std::string word_label(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        s += w[i].label();
    }
    return s;
}

int reversal_sign(const Word& w) {
    int odd = 0;
    for (const auto& g : w) odd += g.grade % 2;
    return ((odd * (odd - 1) / 2) % 2 == 0) ? 1 : -1;
}

bool TermLess::operator()(const TermKey& a, const TermKey& b) const {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    if (a.word != b.word) return std::lexicographical_compare(a.word.begin(), a.word.end(), b.word.begin(), b.word.end());
    if (a.hbar != b.hbar) return a.hbar < b.hbar;
    return a.mu < b.mu;
}

namespace {

void accumulate(NCPolynomial::Map& m, const TermKey& k, cplx v) {
    auto [it, inserted] = m.try_emplace(k, v);
    if (!inserted) it->second += v;
    if (std::abs(it->second) <= kCoeffTol) m.erase(it);
}

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

NCPolynomial NCPolynomial::constant(const Coefficient& c) { return monomial({}, c); }

NCPolynomial NCPolynomial::monomial(Word w, const Coefficient& c) {
    NCPolynomial p;
    p.add_term(w, c);
    return p;
}

void NCPolynomial::add_term(const Word& w, const Coefficient& c) {
    add_term(TermKey{w, c.hbar_power, c.mu_power}, c.value);
}

void NCPolynomial::add_term(const TermKey& k, cplx v) {
    if (std::abs(v) <= kCoeffTol) return;
    accumulate(terms_, k, v);
}

int NCPolynomial::degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max<int>(d, static_cast<int>(k.word.size()));
    return d;
}

Coefficient NCPolynomial::coefficient(const Word& w, int hbar, int mu) const {
    auto it = terms_.find(TermKey{w, hbar, mu});
    if (it == terms_.end()) return {0.0, hbar, mu};
    return {it->second, hbar, mu};
}

cplx NCPolynomial::evaluated_coefficient(const Word& w, const EvalParams& p) const {
    cplx s = 0;
    for (const auto& [k, v] : terms_)
        if (k.word == w) s += Coefficient(v, k.hbar, k.mu).evaluate(p);
    return s;
}

std::set<GeneratorId> NCPolynomial::generators() const {
    std::set<GeneratorId> s;
    for (const auto& [k, v] : terms_) s.insert(k.word.begin(), k.word.end());
    return s;
}

NCPolynomial& NCPolynomial::operator+=(const NCPolynomial& o) {
    for (const auto& [k, v] : o.terms_) accumulate(terms_, k, v);
    return *this;
}

NCPolynomial& NCPolynomial::operator-=(const NCPolynomial& o) {
    for (const auto& [k, v] : o.terms_) accumulate(terms_, k, -v);
    return *this;
}

NCPolynomial& NCPolynomial::operator*=(const Coefficient& c) {
    Map out;
    for (const auto& [k, v] : terms_) accumulate(out, TermKey{k.word, k.hbar + c.hbar_power, k.mu + c.mu_power}, v * c.value);
    terms_ = std::move(out);
    return *this;
}

NCPolynomial NCPolynomial::concat(const NCPolynomial& o) const {
    NCPolynomial r;
    for (const auto& [ka, va] : terms_)
        for (const auto& [kb, vb] : o.terms_) {
            TermKey k{ka.word, ka.hbar + kb.hbar, ka.mu + kb.mu};
            k.word.insert(k.word.end(), kb.word.begin(), kb.word.end());
            accumulate(r.terms_, k, va * vb);
        }
    return r;
}

NCPolynomial NCPolynomial::evaluated(const EvalParams& p) const {
    NCPolynomial r;
    for (const auto& [k, v] : terms_) accumulate(r.terms_, TermKey{k.word, 0, 0}, Coefficient(v, k.hbar, k.mu).evaluate(p));
    return r;
}

double NCPolynomial::max_abs(const EvalParams& p) const {
    double m = 0;
    for (const auto& [k, v] : evaluated(p).terms_) m = std::max(m, std::abs(v));
    return m;
}

bool NCPolynomial::approx_equal(const NCPolynomial& o, double tol) const {
    NCPolynomial d = *this - o;
    for (const auto& [k, v] : d.terms_)
        if (std::abs(v) > tol) return false;
    return true;
}

std::string NCPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    os.precision(12);
    bool first = true;
    for (const auto& [k, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i)";
        if (k.hbar) os << "*hbar^" << k.hbar;
        if (k.mu) os << "*mu^" << k.mu;
        if (!k.word.empty()) os << "*" << word_label(k.word);
    }
    return os.str();
}

void RelationSystem::add_generator(const GeneratorId& g) { generators_.insert(g); }

void RelationSystem::add_generator(const GeneratorId& g, const GeneratorId& star) {
    generators_.insert(g);
    star_table_[g] = star;
}

GeneratorId RelationSystem::star(const GeneratorId& g) const {
    auto it = star_table_.find(g);
    if (it != star_table_.end()) return it->second;
    return g.toggled();
}

void RelationSystem::set_rule(const GeneratorId& a, const GeneratorId& b, NCPolynomial rhs) {
    generators_.insert(a);
    generators_.insert(b);
    rules_[{a, b}] = std::move(rhs);
}

const NCPolynomial* RelationSystem::rule(const GeneratorId& a, const GeneratorId& b) const {
    auto it = rules_.find({a, b});
    return it == rules_.end() ? nullptr : &it->second;
}

void RelationSystem::merge(const RelationSystem& o) {
    generators_.insert(o.generators_.begin(), o.generators_.end());
    for (const auto& [g, s] : o.star_table_) star_table_[g] = s;
    for (const auto& [k, r] : o.rules_) rules_[k] = r;
    has_calculus = has_calculus || o.has_calculus;
}

bool RelationSystem::check_termination() const {
    for (const auto& [pr, rhs] : rules_) {
        Word lhs{pr.first, pr.second};
        for (const auto& [k, v] : rhs.terms()) {
            if (k.word.size() < lhs.size()) continue;
            if (k.word.size() > lhs.size()) return false;
            int wk = filtration_weight(k.word), wl = filtration_weight(lhs);
            if (wk < wl) continue;
            if (wk > wl || !word_less(k.word, lhs)) return false;
        }
    }
    return true;
}

namespace {

bool reducible_at(const RelationSystem& rel, const Word& w, std::size_t i) {
    if (rel.rule(w[i], w[i + 1])) return true;
    if (w[i + 1] < w[i]) return true;
    return w[i] == w[i + 1] && (w[i].grade % 2 == 1);
}

// one rewrite at position i of the pair (w[i], w[i+1])
NCPolynomial rewrite_at(const RelationSystem& rel, const Word& w, std::size_t i) {
    NCPolynomial out;
    Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
    Word suffix(w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
    if (const NCPolynomial* r = rel.rule(w[i], w[i + 1])) {
        for (const auto& [k, v] : r->terms()) {
            Word nw = prefix;
            nw.insert(nw.end(), k.word.begin(), k.word.end());
            nw.insert(nw.end(), suffix.begin(), suffix.end());
            out.add_term(TermKey{nw, k.hbar, k.mu}, v);
        }
        return out;
    }
    if (w[i] == w[i + 1]) return out;
    Word nw = w;
    std::swap(nw[i], nw[i + 1]);
    double sign = (w[i].grade * w[i + 1].grade) % 2 ? -1.0 : 1.0;
    out.add_term(TermKey{nw, 0, 0}, sign);
    return out;
}

}  // namespace

bool RelationSystem::check_confluence(std::string* failure) const {
    std::vector<GeneratorId> gens(generators_.begin(), generators_.end());
    for (const auto& a : gens)
        for (const auto& b : gens) {
            Word ab{a, b};
            if (!reducible_at(*this, ab, 0)) continue;
            for (const auto& c : gens) {
                Word w{a, b, c};
                if (!reducible_at(*this, w, 1)) continue;
                NCPolynomial left = normal_form(rewrite_at(*this, w, 0), *this);
                NCPolynomial right = normal_form(rewrite_at(*this, w, 1), *this);
                if (!left.approx_equal(right, 1e-10)) {
                    if (failure) *failure = "ambiguity " + word_label(w) + ": " + left.to_string() + " vs " + right.to_string();
                    return false;
                }
            }
        }
    return true;
}

bool RelationSystem::check_star_closure(std::string* failure) const {
    for (const auto& [pr, rhs] : rules_) {
        GeneratorId a = pr.first, b = pr.second;
        // (a b)* = (-1)^{|a||b|} b* a*
        Word w{star(b), star(a)};
        Coefficient sign((a.grade * b.grade) % 2 ? -1.0 : 1.0);
        NCPolynomial lhs = normal_form(sign * NCPolynomial::monomial(w), *this);
        NCPolynomial r = adjoint(rhs, *this);
        if (!lhs.approx_equal(r, 1e-10)) {
            if (failure) *failure = "rule " + a.label() + " " + b.label() + ": " + lhs.to_string() + " vs " + r.to_string();
            return false;
        }
    }
    return true;
}

RelationSystem RelationSystem::commutative(const std::vector<GeneratorId>& gens, std::string name) {
    RelationSystem r;
    r.name = std::move(name);
    for (const auto& g : gens) r.add_generator(g);
    return r;
}

NCPolynomial normal_form(const NCPolynomial& p, const RelationSystem& rel) {
    for (const auto& [k, v] : p.terms())
        for (const auto& g : k.word)
            if (!rel.knows(g)) throw UnknownGenerator(g.label() + " in " + rel.name);

    NCPolynomial::Map pending = p.terms();
    NCPolynomial out;
    std::size_t steps = 0;
    while (!pending.empty()) {
        auto it = std::prev(pending.end());
        TermKey key = it->first;
        cplx c = it->second;
        pending.erase(it);

        const Word& w = key.word;
        std::size_t pos = w.size();
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (reducible_at(rel, w, i)) {
                pos = i;
                break;
            }
        if (pos == w.size()) {
            out.add_term(key, c);
            continue;
        }
        if (++steps > kStepBudget) throw NonTerminating("step budget exceeded in " + rel.name);
        NCPolynomial r = rewrite_at(rel, w, pos);
        for (const auto& [k, v] : r.terms())
            accumulate(pending, TermKey{k.word, k.hbar + key.hbar, k.mu + key.mu}, v * c);
    }
    return out;
}

NCPolynomial multiply(const NCPolynomial& a, const NCPolynomial& b, const RelationSystem& rel) {
    return normal_form(a.concat(b), rel);
}

NCPolynomial commutator(const NCPolynomial& a, const NCPolynomial& b, const RelationSystem& rel) {
    return normal_form(a.concat(b) - b.concat(a), rel);
}

NCPolynomial adjoint(const NCPolynomial& p, const RelationSystem& rel) {
    NCPolynomial r;
    for (const auto& [k, v] : p.terms()) {
        Word w;
        w.reserve(k.word.size());
        for (auto it = k.word.rbegin(); it != k.word.rend(); ++it) {
            if (!rel.knows(*it)) throw UnknownGenerator(it->label() + " in " + rel.name);
            w.push_back(rel.star(*it));
        }
        Coefficient c = Coefficient(v, k.hbar, k.mu).conj();
        c.value *= reversal_sign(k.word);
        r.add_term(w, c);
    }
    return normal_form(r, rel);
}

NCPolynomial differential(const NCPolynomial& p, const RelationSystem& rel) {
    if (!rel.has_calculus) throw MissingCalculus(rel.name);
    NCPolynomial r;
    for (const auto& [k, v] : p.terms()) {
        int seen = 0;
        for (std::size_t i = 0; i < k.word.size(); ++i) {
            const GeneratorId& g = k.word[i];
            if (g.grade == 0) {
                GeneratorId dg = g.with_grade(1);
                if (!rel.knows(dg)) throw MissingCalculus("no differential of " + g.label());
                Word w = k.word;
                w[i] = dg;
                r.add_term(TermKey{w, k.hbar, k.mu}, (seen % 2 ? -1.0 : 1.0) * v);
            }
            seen += g.grade;
        }
    }
    return normal_form(r, rel);
}

}  // namespace adhm
