#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "adhm/adhm_solver.hpp"
#include "adhm/errors.hpp"
#include "adhm/hopf_twist.hpp"
#include "adhm/instanton.hpp"
#include "adhm/json_io.hpp"
#include "adhm/monad.hpp"
#include "adhm/twistor.hpp"

using namespace adhm;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ModelFlags {
    std::string name = "classical";
    std::optional<double> hbar, alpha, beta, theta;

    void attach(CLI::App* app) {
        app->add_option("--model", name, "classical, moyal or toric")
            ->check(CLI::IsMember({"classical", "moyal", "toric"}));
        app->add_option("--hbar", hbar, "Moyal deformation parameter");
        app->add_option("--alpha", alpha, "Moyal coefficient of [z1, z2*]-type terms");
        app->add_option("--beta", beta, "Moyal coefficient");
        app->add_option("--theta", theta, "toric deformation parameter");
    }

    TwistModel build() const {
        if (name == "classical") {
            if (hbar || alpha || beta || theta) throw UsageError("classical model takes no deformation flags");
            return TwistModel::classical();
        }
        if (name == "moyal") {
            if (theta) throw UsageError("--theta is not a Moyal parameter");
            return TwistModel::moyal(hbar.value_or(0.0), alpha.value_or(1.0), beta.value_or(1.0));
        }
        if (hbar || alpha || beta) throw UsageError("--hbar/--alpha/--beta are not toric parameters");
        return TwistModel::toric(theta.value_or(0.0));
    }
};

Space parse_space(const std::string& s) {
    static const std::map<std::string, Space> table{{"C4", Space::C4}, {"R4", Space::R4}};
    auto it = table.find(s);
    if (it == table.end()) throw UsageError("unknown space " + s);
    return it->second;
}

int emit(const json& j, const std::string& out_path = {}) {
    if (!out_path.empty()) save_json(out_path, j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int emit_report(const Report& r, json extra = json::object()) {
    json j = r.to_json();
    for (auto& [k, v] : extra.items()) j[k] = v;
    std::cout << j.dump(2) << "\n";
    return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ADHM instantons on classical and twisted R^4"};
    app.require_subcommand(1);

    // relations
    ModelFlags rel_model;
    std::string rel_space = "C4";
    bool rel_calculus = false;
    std::string rel_out;
    auto* rel = app.add_subcommand("relations", "derive the twisted relations of a coordinate algebra");
    rel_model.attach(rel);
    rel->add_option("--space", rel_space, "C4 or R4");
    rel->add_flag("--calculus", rel_calculus, "include the differential calculus");
    rel->add_option("--out", rel_out, "also write the JSON here");

    // twistor-checks
    ModelFlags tw_model;
    auto* tw = app.add_subcommand("twistor-checks", "embeddings, J^2 and J-equivariance of the coaction");
    tw_model.attach(tw);

    // solve
    ModelFlags solve_model;
    int solve_k = 1;
    std::optional<double> solve_zeta;
    SolveConfig cfg;
    std::string solve_out;
    auto* sol = app.add_subcommand("solve", "solve the ADHM equations numerically");
    solve_model.attach(sol);
    sol->add_option("--k", solve_k, "instanton number")->check(CLI::PositiveNumber);
    sol->add_option("--zeta", solve_zeta, "right side of the real equation; defaults to the model level");
    sol->add_option("--seed", cfg.rng_seed, "random seed");
    sol->add_option("--multistarts", cfg.multistarts)->check(CLI::PositiveNumber);
    sol->add_option("--max-iterations", cfg.max_iterations)->check(CLI::PositiveNumber);
    sol->add_option("--tolerance", cfg.tolerance)->check(CLI::PositiveNumber);
    sol->add_option("--out", solve_out, "write ADHM data JSON here");

    // data-file commands
    std::string vm_data, in_data, ch_data, md_data;
    auto* vm = app.add_subcommand("verify-monad", "monad and symbolic projector residuals for a data file");
    vm->add_option("--data", vm_data)->required()->check(CLI::ExistingFile);

    int in_points = 20;
    std::uint64_t in_seed = 1;
    double in_scale = 1.0;
    bool in_asd = false;
    auto* inst = app.add_subcommand("instanton", "projector identities and anti-self-duality at random points");
    inst->add_option("--data", in_data)->required()->check(CLI::ExistingFile);
    inst->add_option("--points", in_points)->check(CLI::PositiveNumber);
    inst->add_option("--seed", in_seed);
    inst->add_option("--scale", in_scale, "standard deviation of the sample points")->check(CLI::PositiveNumber);
    inst->add_flag("--check-asd", in_asd);

    QuadratureSpec quad;
    double ch_tol = 0.01;
    auto* ch = app.add_subcommand("charge", "topological charge by quadrature");
    ch->add_option("--data", ch_data)->required()->check(CLI::ExistingFile);
    ch->add_option("--resolution", quad.resolution)->check(CLI::PositiveNumber);
    ch->add_option("--max-evaluations", quad.max_evaluations)->check(CLI::PositiveNumber);
    ch->add_option("--tolerance", ch_tol, "allowed distance from k")->check(CLI::PositiveNumber);

    auto* md = app.add_subcommand("moduli-dim", "linearised moduli dimension at a solution");
    md->add_option("--data", md_data)->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*rel) {
            const TwistModel m = rel_model.build();
            SpaceOptions o;
            o.calculus = rel_calculus;
            RelationSystem r = derive_relations(m, parse_space(rel_space), o);
            json j = to_json(r);
            j["model"] = to_json(m);
            j["space"] = rel_space;
            std::string why;
            const bool term = r.check_termination(), conf = r.check_confluence(&why);
            j["checks"] = {{"termination", term}, {"confluence", conf}};
            emit(j, rel_out);
            return term && conf ? 0 : 1;
        }
        if (*tw) {
            const TwistModel m = tw_model.build();
            Report r = verify_embeddings();
            r.append(verify_J_involution());
            r.append(verify_J_equivariance(m));
            r.title = "twistor checks (" + m.name() + ")";
            return emit_report(r);
        }
        if (*sol) {
            const TwistModel m = solve_model.build();
            const double zeta = solve_zeta.value_or(m.zeta());
            SolveResult s = solve(solve_k, m, zeta, cfg);
            json j = to_json(s.data);
            j["report"] = {{"residuals", to_json(s.residual)},
                           {"iterations", s.iterations},
                           {"multistart_index", s.multistart_index},
                           {"tolerance", cfg.tolerance},
                           {"seed", cfg.rng_seed}};
            return emit(j, solve_out);
        }
        if (*vm) {
            const ADHMData d = load_data(vm_data);
            const MonadMatrices mm = build_monad(d);
            Report r;
            r.title = "monad verification (" + d.model.name() + ")";
            r.add("ADHM residual", adhm_residual(d).total(), 1e-10);
            r.add("monad reality", reality_residual(mm), 1e-12);
            r.add("tau_z sigma_z = 0 in the twisted algebra", poly_max_abs(monad_residual(mm, d.model), d.model.eval_params()),
                  1e-10);
            r.append(symbolic_projector_checks(d));
            return emit_report(r);
        }
        if (*inst) {
            const ADHMData d = load_data(in_data);
            const auto pts = random_points(in_points, in_seed, {}, in_scale);
            Report r = projector_identities(d, pts);
            if (in_asd) r.append(curvature_asd(d, pts));
            r.title = "instanton checks";
            return emit_report(r, {{"points", in_points}, {"seed", in_seed}});
        }
        if (*ch) {
            const ADHMData d = load_data(ch_data);
            ChargeResult c = charge(d, quad);
            Report r;
            r.title = "topological charge";
            r.add("charge - k", std::abs(c.charge - d.k), ch_tol);
            const auto ctr = c.center.real();
            return emit_report(r, {{"charge", c.charge},
                                   {"center", ctr},
                                   {"scale", c.scale},
                                   {"evaluations", c.evaluations},
                                   {"resolution", quad.resolution}});
        }
        if (*md) {
            const ADHMData d = load_data(md_data);
            JacobianAnalysis a = moduli_dimension(d);
            Report r;
            r.title = "moduli dimension";
            r.add_flag("constraints regular", !a.degenerate);
            r.add_flag("framed dimension = 8k", a.framed_dimension == 8 * d.k);
            r.add_flag("frame rotation rank = 3", a.frame_rotation_rank == 3);
            return emit_report(r, {{"analysis", to_json(a)}});
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ModelMismatch& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cout << json{{"pass", false}, {"error", e.what()}}.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
