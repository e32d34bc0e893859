#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "adhm/monad.hpp"
#include "adhm/report.hpp"

namespace adhm {

inline constexpr double kRhoCutoff = 1e-10;
// orientation of R^4 relative to dx1 dx2 dx3 dx4: the chart coordinates
// (z3, z4) = (conj zeta1, -zeta2) are complex, and their orientation is -1
inline constexpr int kVolumeSign = -1;

// real coordinates (Re zeta1, Im zeta1, Re zeta2, Im zeta2)
struct PointR4 {
    cplx zeta1{0.0, 0.0};
    cplx zeta2{0.0, 0.0};

    static PointR4 from_real(const std::array<double, 4>& x) { return {{x[0], x[1]}, {x[2], x[3]}}; }
    std::array<double, 4> real() const { return {zeta1.real(), zeta1.imag(), zeta2.real(), zeta2.imag()}; }
};

using Curvature = std::array<std::array<Eigen::MatrixXcd, 4>, 4>;

struct ConnectionSample {
    PointR4 x;
    Eigen::MatrixXcd V, rho2, Q, Qz, QJ, P;
    bool has_curvature = false;
    Curvature F;
    double asd_residual = 0.0;
};

// homogeneous representative z = (1, 0, conj(zeta1), -zeta2) of the fibre over x
std::array<cplx, 4> fibre_point(const PointR4& x);

// V = (sigma_z, sigma_J(z)) at x; d/dx_mu V is constant
Eigen::MatrixXcd projector_V(const MonadMatrices& m, const PointR4& x);
std::array<Eigen::MatrixXcd, 4> projector_dV(const MonadMatrices& m);

ConnectionSample evaluate_projector(const MonadMatrices& m, const PointR4& x);
ConnectionSample evaluate_projector(const ADHMData& d, const PointR4& x);
// F_{mu nu} = P (d_mu V rho^-2 d_nu V* - d_nu V rho^-2 d_mu V*) P
ConnectionSample evaluate_connection(const MonadMatrices& m, const PointR4& x);
ConnectionSample evaluate_connection(const ADHMData& d, const PointR4& x);
// F_{mu nu} = P [d_mu P, d_nu P] P by central differences of P
Curvature finite_difference_curvature(const MonadMatrices& m, const PointR4& x, double h = 1e-5);

Curvature hodge_star(const Curvature& F, int volume_sign = kVolumeSign);
double asd_residual(const Curvature& F, int volume_sign = kVolumeSign);
// tr(F ^ F) / d^4x
double chern_density(const Curvature& F, int volume_sign = kVolumeSign);

std::vector<PointR4> random_points(int n, std::uint64_t seed, const PointR4& center = {}, double scale = 1.0);

// Hermiticity, idempotency, traces, V*V block form, Q_z Q_J(z) = 0
Report projector_identities(const ADHMData& d, const std::vector<PointR4>& points);
Report curvature_asd(const ADHMData& d, const std::vector<PointR4>& points, double fd_step = 1e-5);

struct QuadratureSpec {
    int resolution = 1;
    long max_evaluations = 4000000;
};

struct ChargeResult {
    double charge = 0.0;
    PointR4 center;
    double scale = 0.0;
    long evaluations = 0;
};

// (1/8 pi^2) int tr(F ^ F) in hyperspherical coordinates around the
// minimum of tr rho^2, radius r = s tan(t)
ChargeResult charge(const ADHMData& d, const QuadratureSpec& q = {});

// B_j -> B_j + c_j 1; moves the instanton in the classical model
ADHMData translate(const ADHMData& d, cplx c1, cplx c2);

// in the twisted algebra: (1) sigma_J(z)* sigma_z = 0, (2) sigma_z* sigma_z =
// sigma_J(z)* sigma_J(z), (3) rho^2 central, (4) Q^2 - Q = 0 given a formal
// central inverse of rho^2
Report symbolic_projector_checks(const ADHMData& d);

}  // namespace adhm
