#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "adhm/adhm_solver.hpp"
#include "adhm/errors.hpp"
#include "adhm/json_io.hpp"

using namespace adhm;

TEST(Json, ModelRoundTrip) {
    for (const TwistModel& m : {TwistModel::classical(), TwistModel::moyal(0.1, 1.5, 2.0), TwistModel::toric(0.3)}) {
        const TwistModel r = model_from_json(to_json(m));
        EXPECT_EQ(r.kind, m.kind);
        EXPECT_EQ(r.name(), m.name());
        EXPECT_EQ(r.zeta(), m.zeta());
    }
    EXPECT_THROW(model_from_json(json{{"kind", "nope"}}), ModelMismatch);
}

TEST(Json, DataRoundTripIsExact) {
    SolveConfig cfg;
    cfg.rng_seed = 3;
    const TwistModel m = TwistModel::toric(0.25);
    const ADHMData d = solve(2, m, m.zeta(), cfg).data;
    const auto path = std::filesystem::temp_directory_path() / "adhm_roundtrip.json";
    save_json(path.string(), to_json(d));
    const ADHMData e = load_data(path.string());
    std::remove(path.string().c_str());
    EXPECT_EQ(e.k, 2);
    EXPECT_EQ(pack(d), pack(e));
    EXPECT_EQ(e.model.theta, 0.25);
}

TEST(Json, MalformedDataIsRejected) {
    json j = to_json(ADHMData::zeros(1, TwistModel::classical()));
    j["I"] = json::array({json::array({json::array({1.0, 0.0})})});
    EXPECT_THROW(data_from_json(j), ShapeError);
    j = to_json(ADHMData::zeros(1, TwistModel::classical()));
    j["B1"] = json::array({json::array({1.0})});
    EXPECT_THROW(data_from_json(j), ShapeError);
    j = to_json(ADHMData::zeros(1, TwistModel::classical()));
    j.erase("J");
    EXPECT_THROW(data_from_json(j), json::exception);
}

TEST(Json, RelationPhasesAreListed) {
    const RelationSystem r = derive_relations(TwistModel::toric(0.25), Space::C4);
    const json j = to_json(r);
    bool found = false;
    for (const auto& p : j.at("phases"))
        if (p.at("left") == z(3).label() && p.at("right") == z(1).label()) {
            found = true;
            // z3 z1 = mu z1 z3
            EXPECT_EQ(p.at("phase").at("mu_pow"), 1);
            EXPECT_EQ(p.at("phase").at("re"), 1.0);
        }
    EXPECT_TRUE(found);
    EXPECT_EQ(j.at("rules").size(), r.rules().size());
}

TEST(Json, CoefficientFields) {
    const json c = to_json(Coefficient(cplx(0.5, -2.0), 1, -3));
    EXPECT_EQ(c.at("re"), 0.5);
    EXPECT_EQ(c.at("im"), -2.0);
    EXPECT_EQ(c.at("hbar_pow"), 1);
    EXPECT_EQ(c.at("mu_pow"), -3);
}
