#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "adhm/hopf_twist.hpp"
#include "adhm/report.hpp"
#include "adhm/star_algebra.hpp"

namespace adhm {

// I is k x 2 and J is 2 x k, so every term of both equations is k x k.
struct ADHMData {
    int k = 1;
    TwistModel model;
    Eigen::MatrixXcd B1, B2, I, J;

    static ADHMData zeros(int k, const TwistModel& m);
    void validate() const;
};

struct AdhmResidual {
    double complex_residual = 0.0;
    double real_residual = 0.0;
    double total() const { return complex_residual + real_residual; }
};

// mu^-1 B1 B2 - mu B2 B1 + I J
Eigen::MatrixXcd complex_equation(const ADHMData& d);
// [B1,B1*] + [B2,B2*] + I I* - J* J - zeta 1
Eigen::MatrixXcd real_equation(const ADHMData& d);
AdhmResidual adhm_residual(const ADHMData& d);

// M^j is (2k+2) x k, N^j is k x (2k+2); mu is evaluated numerically
struct MonadMatrices {
    int k = 1;
    std::array<Eigen::MatrixXcd, 4> M, N;
    bool self_conjugate = false;
};

MonadMatrices build_monad(const ADHMData& d);
// largest entry of N1 - M2^+, N2 + M1^+, N3 - M4^+, N4 + M3^+
double reality_residual(const MonadMatrices& m);

using PolyMatrix = std::vector<std::vector<NCPolynomial>>;

PolyMatrix poly_zero(int rows, int cols);
PolyMatrix poly_multiply(const PolyMatrix& a, const PolyMatrix& b, const RelationSystem& rel);
PolyMatrix poly_adjoint(const PolyMatrix& a, const RelationSystem& rel);
PolyMatrix poly_subtract(const PolyMatrix& a, const PolyMatrix& b);
double poly_max_abs(const PolyMatrix& a, const EvalParams& p);

// sigma_z = sum_j M^j z_j, or sigma_J(z) = -M1 z2* + M2 z1* - M3 z4* + M4 z3*
PolyMatrix sigma_matrix(const MonadMatrices& m, bool quaternionic = false);
PolyMatrix tau_matrix(const MonadMatrices& m);

// k x k matrix of normal forms of sum_{j,l} (N^j M^l) z_j z_l in the twisted C4
PolyMatrix monad_residual(const MonadMatrices& m, const TwistModel& model);
PolyMatrix monad_residual(const MonadMatrices& m, const TwistModel& model, const RelationSystem& c4);

// sigma~_z = sum_r M^r z_r^(-1) z_r^(0): entries are words (Hopf letters)(C4 letters)
struct SmashMonad {
    int k = 1;
    PolyMatrix sigma, tau;
};
SmashMonad bosonise_monad(const MonadMatrices& m, const TwistModel& model);

// the bosonisation map on symbolic monad letters is a *-algebra map
Report verify_bosonisation(const TwistModel& model, int k = 1, int samples = 40, std::uint64_t seed = 1);

// tilde generators inside the smash product commute, and phi respects the
// cross relations with the Hopf letters
Report tilde_subalgebra_check(const TwistModel& model, int k = 1);

// eta_{jl} = F^-2(s_j, s_l) with s = (s1, s1*, s2, s2*)
Coefficient eta(int j, int l);

}  // namespace adhm
