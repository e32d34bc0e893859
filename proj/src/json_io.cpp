#include "adhm/json_io.hpp"

#include <fstream>

#include "adhm/errors.hpp"

namespace adhm {

json to_json(const Coefficient& c) {
    return {{"re", c.value.real()}, {"im", c.value.imag()}, {"hbar_pow", c.hbar_power}, {"mu_pow", c.mu_power}};
}

json to_json(const NCPolynomial& p) {
    json terms = json::array();
    for (const auto& [key, v] : p.terms()) {
        json word = json::array();
        for (const auto& g : key.word) word.push_back(g.label());
        terms.push_back({{"word", word}, {"re", v.real()}, {"im", v.imag()}, {"hbar_pow", key.hbar}, {"mu_pow", key.mu}});
    }
    return {{"terms", terms}};
}

json to_json(const RelationSystem& r) {
    json out;
    out["name"] = r.name;
    out["calculus"] = r.has_calculus;
    json gens = json::array();
    for (const auto& g : r.generators()) gens.push_back(g.label());
    out["generators"] = gens;
    json rules = json::array(), phases = json::array();
    for (const auto& [lhs, rhs] : r.rules()) {
        rules.push_back({{"lhs", {lhs.first.label(), lhs.second.label()}}, {"rhs", to_json(rhs)}});
        if (rhs.size() == 1) {
            const auto& [key, v] = *rhs.terms().begin();
            if (key.word == Word{lhs.second, lhs.first})
                phases.push_back({{"left", lhs.first.label()},
                                  {"right", lhs.second.label()},
                                  {"phase", to_json(Coefficient(v, key.hbar, key.mu))}});
        }
    }
    out["rules"] = rules;
    out["phases"] = phases;
    return out;
}

json to_json(const TwistModel& m) {
    switch (m.kind) {
        case ModelKind::Classical: return {{"kind", "classical"}};
        case ModelKind::Moyal: return {{"kind", "moyal"}, {"hbar", m.hbar}, {"alpha", m.alpha}, {"beta", m.beta}};
        case ModelKind::Toric: return {{"kind", "toric"}, {"theta", m.theta}};
    }
    return {};
}

TwistModel model_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "classical") return TwistModel::classical();
    if (kind == "moyal")
        return TwistModel::moyal(j.at("hbar").get<double>(), j.at("alpha").get<double>(), j.at("beta").get<double>());
    if (kind == "toric") return TwistModel::toric(j.at("theta").get<double>());
    throw ModelMismatch("unknown model kind '" + kind + "'");
}

json to_json(const Eigen::MatrixXcd& a) {
    json rows = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back({a(i, j).real(), a(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) throw ShapeError("matrix must be a non-empty list of rows");
    const int rows = j.size(), cols = j[0].size();
    Eigen::MatrixXcd a(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) throw ShapeError("ragged matrix rows");
        for (int c = 0; c < cols; ++c) {
            const json& e = j[r][c];
            if (!e.is_array() || e.size() != 2) throw ShapeError("matrix entries are [re, im] pairs");
            a(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return a;
}

json to_json(const ADHMData& d) {
    return {{"k", d.k},           {"model", to_json(d.model)}, {"B1", to_json(d.B1)},
            {"B2", to_json(d.B2)}, {"I", to_json(d.I)},         {"J", to_json(d.J)}};
}

ADHMData data_from_json(const json& j) {
    ADHMData d;
    d.k = j.at("k").get<int>();
    d.model = model_from_json(j.at("model"));
    d.B1 = matrix_from_json(j.at("B1"));
    d.B2 = matrix_from_json(j.at("B2"));
    d.I = matrix_from_json(j.at("I"));
    d.J = matrix_from_json(j.at("J"));
    d.validate();
    return d;
}

json to_json(const AdhmResidual& r) {
    return {{"complex", r.complex_residual}, {"real", r.real_residual}, {"total", r.total()}};
}

json to_json(const JacobianAnalysis& a) {
    return {{"singular_values", a.singular_values},
            {"rank_threshold", a.rank_threshold},
            {"rank", a.rank},
            {"raw_nullity", a.raw_nullity},
            {"framed_dimension", a.framed_dimension},
            {"gauge_dimension", a.gauge_dimension},
            {"frame_rotation_rank", a.frame_rotation_rank},
            {"unframed_dimension", a.framed_dimension - a.frame_rotation_rank},
            {"degenerate", a.degenerate}};
}

ADHMData load_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return data_from_json(json::parse(in));
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace adhm
