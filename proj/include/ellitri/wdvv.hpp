#ifndef ELLITRI_WDVV_HPP
#define ELLITRI_WDVV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ellitri/core.hpp"

// Vector-system (vee-system) conditions, the elliptic prepotential
//   F(u, z, tau) = (1/2) u^2 tau - (1/2) u (z,z) + sum_a h_a f((z,a), tau)
// with its h_vee-dependent Li3(1,q) correction, the structure matrices
// (F_i)_j^k = g^{kr} d^3F/dx^i dx^j dx^r over the coordinates (u, z_1..z_N, tau)
// with g = 2 du dtau - (dz,dz), and the WDVV commutator residuals.

namespace ellitri {

// A weighted vector configuration with a symmetric bilinear form.  The same
// form is used for pairings (z,a) and for the metric block -(dz,dz).
struct VeeSystem {
    int dim = 0;
    std::vector<std::vector<cplx>> vectors;
    std::vector<cplx> weights;
    std::vector<std::vector<cplx>> form;  // N x N; identity if left empty

    void validate() const;
    // (x, y) under the form.
    cplx pair(const std::vector<cplx>& x, const std::vector<cplx>& y) const;
    // B*a, the covector of a vector.
    std::vector<cplx> lowered(const std::vector<cplx>& a) const;
};

struct PrepotentialPoint {
    cplx u;
    std::vector<cplx> zvec;
    HalfPlanePoint tau;
};

struct WellDistributedResult {
    bool is_wd = false;
    cplx h_vee = 0.0;
    double max_dev = 0.0;  // max entry of M - 2 h_vee B
};

// Builds M = sum h_a (Ba)(Ba)^T and compares against 2 h_vee B, h_vee read
// off the first nonzero diagonal ratio; `trials` random pairs re-check the
// bilinear statement.
WellDistributedResult check_well_distributed(const VeeSystem& sys, int trials = 16,
                                             std::uint64_t seed = 1);

struct QuarticResult {
    bool ok = false;
    double max_dev_tensor = 0.0;  // worst entry of sum h a^4 - 3 sym(B x B)
    double max_dev_points = 0.0;  // worst random-point deviation
};

// sum_a h_a (a,z)^4 = 3 (z,z)^2, checked on the symmetrized coefficient
// tensors and on random points.
QuarticResult check_quartic(const VeeSystem& sys, int trials = 16, std::uint64_t seed = 1);

struct PlaneConditionRow {
    int n;
    double s1, s2, s3;  // magnitudes of the three sums
};

struct PlaneConditionReport {
    bool reducible = false;
    std::vector<PlaneConditionRow> rows;
};

// The three 2-plane sums sum_b h_b (a,b) (wedge powers) (b, a_perp)^n for
// n = 0..n_max, with a_perp normalized to (a_perp,a_perp) = (a,a).  Only
// N = 2 systems carry a canonical plane; reducible configurations (two
// orthogonal subsystems) are flagged.
PlaneConditionReport check_plane_conditions(const VeeSystem& sys, int alpha_index,
                                            int n_max = 4);

// True iff (p, a) is an integer within 1e-10 for every basis vector p and
// every configuration vector a.
bool check_weight_lattice(const VeeSystem& sys,
                          const std::vector<std::vector<cplx>>& lattice_basis);

// d^3 F / dx_i dx_j dx_k, assembled analytically from f^(n,m); coordinates
// are indexed 0 = u, 1..N = z, N+1 = tau.  When the system is well
// distributed with h_vee != 0, the (tau,tau,tau) entry carries the
// 10 h_vee^2/3 * (d/dtau)^3 (2 pi i)^-3 Li3(1,q) correction.
cplx prepotential_third_derivs(const VeeSystem& sys, const PrepotentialPoint& pt, int i, int j,
                               int k, const SeriesPolicy& policy = {});

// Max over i<j of the max-entry magnitude of [F_i, F_j].
double wdvv_residual(const VeeSystem& sys, const PrepotentialPoint& pt,
                     const SeriesPolicy& policy = {});

// The N = 1 system encoding h(z) = f(2z) - 4f(z): form [[2]],
// vectors {1, 1/2}, weights {1, -4}; F is the A1-Jacobi dual prepotential.
VeeSystem a1_dual_system();

// Named built-ins: a1-dual, a1-weight3, a2-roots-unit-weights,
// a2-full-roots-unit-weights, a1xa1.
VeeSystem builtin_system(const std::string& name);
std::vector<std::string> builtin_system_names();

// h given as sum_k c_k f(lambda_k z, tau) + c0 (2 pi i)^-3 Li3(1, q).
struct TrilogCombination {
    std::vector<std::pair<cplx, cplx>> terms;  // (c_k, lambda_k)
    cplx li3_coeff = 0.0;                      // c0
};

// Left side of h30 h12 - h21^2 + (1/3) h03 with derivatives assembled by the
// chain rule (each z-derivative of f(lambda z) contributes a factor lambda).
cplx pde_residual_h(const TrilogCombination& h_spec, cplx z, const HalfPlanePoint& tau,
                    const SeriesPolicy& policy = {});

// Flat text format: `dim N`, optional `form <N*N entries>`,
// `vector <N complex> weight <complex>` lines; complex literals a+bi.
VeeSystem parse_vee_system(std::istream& in);
VeeSystem load_vee_system(const std::string& path);

}  // namespace ellitri

#endif
