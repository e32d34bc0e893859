#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "adhm/monad.hpp"

namespace adhm {

struct SolveConfig {
    int max_iterations = 500;
    double damping = 1e-3;
    double tolerance = 1e-12;
    int multistarts = 4;
    std::uint64_t rng_seed = 1;
};

struct SolveResult {
    ADHMData data;
    AdhmResidual residual;
    int iterations = 0;
    int multistart_index = 0;
    // residual after every accepted step of the winning start
    std::vector<double> history;
};

// real coordinates (Re, Im) of B1, B2, I, J in that order; 4k^2 + 8k entries
Eigen::VectorXd pack(const ADHMData& d);
ADHMData unpack(const Eigen::VectorXd& x, int k, const TwistModel& m);
// 2k^2 components of the complex equation, then k^2 of the Hermitian one
Eigen::VectorXd constraints(const ADHMData& d);
Eigen::MatrixXd constraint_jacobian(const ADHMData& d);

SolveResult solve(int k, const TwistModel& model, double zeta, const SolveConfig& cfg = {});

// B -> g B g^-1, I -> g I, J -> J g^-1
ADHMData apply_gauge(const ADHMData& d, const Eigen::MatrixXcd& g);
Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed);
double gauge_distance(const ADHMData& a, const ADHMData& b);

struct JacobianAnalysis {
    std::vector<double> singular_values;
    double rank_threshold = 0.0;
    int rank = 0;
    int raw_nullity = 0;
    int framed_dimension = 0;
    int gauge_dimension = 0;
    int frame_rotation_rank = 0;
    bool degenerate = false;
};

JacobianAnalysis moduli_dimension(const ADHMData& d);

}  // namespace adhm
