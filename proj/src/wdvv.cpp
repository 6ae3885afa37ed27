#include "ellitri/wdvv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ellitri/special.hpp"
#include "ellitri/trilog.hpp"

namespace ellitri {

void VeeSystem::validate() const {
    if (dim < 1) throw domain_error("VeeSystem: dim must be >= 1");
    if (vectors.empty()) throw domain_error("VeeSystem: no vectors");
    if (vectors.size() != weights.size())
        throw domain_error("VeeSystem: vectors and weights differ in length");
    for (const auto& v : vectors) {
        if (static_cast<int>(v.size()) != dim) throw domain_error("VeeSystem: vector of wrong dimension");
        double norm = 0.0;
        for (cplx c : v) norm += std::abs(c);
        if (norm == 0.0) throw domain_error("VeeSystem: zero vector");
    }
    if (!form.empty()) {
        if (static_cast<int>(form.size()) != dim) throw domain_error("VeeSystem: form of wrong size");
        for (const auto& row : form)
            if (static_cast<int>(row.size()) != dim) throw domain_error("VeeSystem: form of wrong size");
    }
}

cplx VeeSystem::pair(const std::vector<cplx>& x, const std::vector<cplx>& y) const {
    cplx s = 0.0;
    if (form.empty()) {
        for (int i = 0; i < dim; ++i) s += x[i] * y[i];
    } else {
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) s += x[i] * form[i][j] * y[j];
    }
    return s;
}

std::vector<cplx> VeeSystem::lowered(const std::vector<cplx>& a) const {
    std::vector<cplx> out(dim, 0.0);
    if (form.empty()) return a;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) out[i] += form[i][j] * a[j];
    return out;
}

namespace {

cplx form_entry(const VeeSystem& sys, int i, int j) {
    if (sys.form.empty()) return i == j ? 1.0 : 0.0;
    return sys.form[i][j];
}

// Gauss-Jordan inverse for the small complex form block.
std::vector<std::vector<cplx>> invert(std::vector<std::vector<cplx>> a) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<cplx>> inv(n, std::vector<cplx>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-14) throw domain_error("degenerate bilinear form");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        cplx d = a[col][col];
        for (int c = 0; c < n; ++c) {
            a[col][c] /= d;
            inv[col][c] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            cplx f = a[r][col];
            if (f == cplx(0.0)) continue;
            for (int c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

std::vector<cplx> random_vector(SplitMix64& rng, int dim) {
    std::vector<cplx> v(dim);
    for (auto& c : v) c = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return v;
}

}  // namespace

WellDistributedResult check_well_distributed(const VeeSystem& sys, int trials,
                                             std::uint64_t seed) {
    sys.validate();
    const int n = sys.dim;
    std::vector<std::vector<cplx>> M(n, std::vector<cplx>(n, 0.0));
    for (std::size_t k = 0; k < sys.vectors.size(); ++k) {
        auto ba = sys.lowered(sys.vectors[k]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M[i][j] += sys.weights[k] * ba[i] * ba[j];
    }
    WellDistributedResult res;
    for (int i = 0; i < n; ++i) {
        if (std::abs(form_entry(sys, i, i)) > 1e-12) {
            res.h_vee = M[i][i] / (2.0 * form_entry(sys, i, i));
            break;
        }
    }
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            res.max_dev = std::max(res.max_dev,
                                   std::abs(M[i][j] - 2.0 * res.h_vee * form_entry(sys, i, j)));
            scale = std::max(scale, std::abs(M[i][j]));
        }
    res.is_wd = res.max_dev < 1e-10 * std::max(1.0, scale);
    // Random bilinear probes of sum h (a,u)(a,v) = 2 h_vee (u,v).
    SplitMix64 rng(seed);
    for (int t = 0; t < trials && res.is_wd; ++t) {
        auto u = random_vector(rng, n), v = random_vector(rng, n);
        cplx lhs = 0.0;
        for (std::size_t k = 0; k < sys.vectors.size(); ++k)
            lhs += sys.weights[k] * sys.pair(sys.vectors[k], u) * sys.pair(sys.vectors[k], v);
        if (std::abs(lhs - 2.0 * res.h_vee * sys.pair(u, v)) > 1e-9 * std::max(1.0, std::abs(lhs)))
            res.is_wd = false;
    }
    return res;
}

QuarticResult check_quartic(const VeeSystem& sys, int trials, std::uint64_t seed) {
    sys.validate();
    const int n = sys.dim;
    QuarticResult res;
    // T_ijkl = sum h (Ba)_i (Ba)_j (Ba)_k (Ba)_l vs B_ij B_kl + B_ik B_jl + B_il B_jk.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cplx t = 0.0;
                    for (std::size_t v = 0; v < sys.vectors.size(); ++v) {
                        auto ba = sys.lowered(sys.vectors[v]);
                        t += sys.weights[v] * ba[i] * ba[j] * ba[k] * ba[l];
                    }
                    cplx rhs = form_entry(sys, i, j) * form_entry(sys, k, l) +
                               form_entry(sys, i, k) * form_entry(sys, j, l) +
                               form_entry(sys, i, l) * form_entry(sys, j, k);
                    res.max_dev_tensor = std::max(res.max_dev_tensor, std::abs(t - rhs));
                }
    SplitMix64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        auto z = random_vector(rng, n);
        cplx lhs = 0.0;
        for (std::size_t v = 0; v < sys.vectors.size(); ++v)
            lhs += sys.weights[v] * std::pow(sys.pair(sys.vectors[v], z), 4);
        cplx zz = sys.pair(z, z);
        res.max_dev_points = std::max(res.max_dev_points, std::abs(lhs - 3.0 * zz * zz));
    }
    res.ok = res.max_dev_tensor < 1e-10;
    return res;
}

PlaneConditionReport check_plane_conditions(const VeeSystem& sys, int alpha_index, int n_max) {
    sys.validate();
    if (sys.dim != 2)
        throw domain_error("check_plane_conditions: plane basis unavailable for N != 2");
    if (alpha_index < 0 || alpha_index >= static_cast<int>(sys.vectors.size()))
        throw domain_error("check_plane_conditions: alpha_index out of range");

    PlaneConditionReport rep;
    // Reducible iff the non-orthogonality graph is disconnected.
    const std::size_t nv = sys.vectors.size();
    std::vector<int> comp(nv, -1);
    std::vector<std::size_t> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
        std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < nv; ++j)
            if (comp[j] < 0 && std::abs(sys.pair(sys.vectors[cur], sys.vectors[j])) > 1e-10) {
                comp[j] = 0;
                stack.push_back(j);
            }
    }
    for (std::size_t j = 0; j < nv; ++j)
        if (comp[j] < 0) rep.reducible = true;

    const auto& alpha = sys.vectors[alpha_index];
    // Coordinate solution of (alpha, x) = 0, rescaled to (x,x) = (alpha,alpha).
    auto ba = sys.lowered(alpha);
    std::vector<cplx> perp{-ba[1], ba[0]};
    cplx pp = sys.pair(perp, perp);
    if (std::abs(pp) < 1e-12)
        throw domain_error("check_plane_conditions: isotropic orthogonal complement");
    cplx scale = std::sqrt(sys.pair(alpha, alpha) / pp);
    for (auto& c : perp) c *= scale;
    const cplx perp_norm = sys.pair(perp, perp);

    for (int n = 0; n <= n_max; ++n) {
        cplx s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (std::size_t v = 0; v < nv; ++v) {
            cplx ab = sys.pair(alpha, sys.vectors[v]);
            cplx bp = sys.pair(sys.vectors[v], perp);
            cplx wedge = bp / perp_norm;  // alpha-wedge coefficient in the plane basis
            cplx common = sys.weights[v] * ab * std::pow(bp, n);
            s1 += common;
            s2 += common * wedge;
            s3 += common * wedge * wedge;
        }
        rep.rows.push_back({n, std::abs(s1), std::abs(s2), std::abs(s3)});
    }
    return rep;
}

bool check_weight_lattice(const VeeSystem& sys,
                          const std::vector<std::vector<cplx>>& lattice_basis) {
    sys.validate();
    for (const auto& p : lattice_basis) {
        if (static_cast<int>(p.size()) != sys.dim)
            throw domain_error("check_weight_lattice: basis vector of wrong dimension");
        for (const auto& a : sys.vectors) {
            cplx v = sys.pair(p, a);
            if (std::abs(v - std::round(v.real())) > 1e-10) return false;
        }
    }
    return true;
}

namespace {

// All pairings (z, a) with admissibility guards.
std::vector<ThirdDerivs> root_derivs(const VeeSystem& sys, const PrepotentialPoint& pt,
                                     const SeriesPolicy& policy) {
    std::vector<ThirdDerivs> out;
    out.reserve(sys.vectors.size());
    for (const auto& a : sys.vectors) {
        auto ba = sys.lowered(a);
        cplx t = 0.0;
        for (int i = 0; i < sys.dim; ++i) t += pt.zvec[i] * ba[i];
        if (lattice_distance(t, pt.tau) < 1e-6)
            throw domain_error("prepotential: pairing (z,a) within 1e-6 of the lattice");
        out.push_back(f_third_derivs(t, pt.tau, policy));
    }
    return out;
}

cplx tau3_correction(const VeeSystem& sys, const HalfPlanePoint& tau,
                     const SeriesPolicy& policy) {
    WellDistributedResult wd = check_well_distributed(sys);
    if (!wd.is_wd || std::abs(wd.h_vee) < 1e-12) return 0.0;
    return 10.0 * wd.h_vee * wd.h_vee / 3.0 * elliptic_li3_one_tau3(tau, policy);
}

// d^3F for coordinate triple (i,j,k) given per-vector third derivatives.
cplx tensor_entry(const VeeSystem& sys, const std::vector<ThirdDerivs>& d, cplx corr, int i,
                  int j, int k) {
    const int N = sys.dim;
    const int tau_idx = N + 1;
    int cu = (i == 0) + (j == 0) + (k == 0);
    int ct = (i == tau_idx) + (j == tau_idx) + (k == tau_idx);
    int zidx[3];
    int nz = 0;
    for (int c : {i, j, k})
        if (c != 0 && c != tau_idx) zidx[nz++] = c - 1;
    if (cu > 0) {
        if (cu == 2 && ct == 1) return 1.0;                                  // (1/2) u^2 tau
        if (cu == 1 && nz == 2) return -form_entry(sys, zidx[0], zidx[1]);   // -(1/2) u (z,z)
        return 0.0;
    }
    cplx sum = 0.0;
    for (std::size_t v = 0; v < sys.vectors.size(); ++v) {
        auto ba = sys.lowered(sys.vectors[v]);
        cplx coeff = sys.weights[v];
        for (int t = 0; t < nz; ++t) coeff *= ba[zidx[t]];
        const ThirdDerivs& dv = d[v];
        cplx fv = (ct == 0) ? dv.f30 : (ct == 1) ? dv.f21 : (ct == 2) ? dv.f12 : dv.f03;
        sum += coeff * fv;
    }
    if (ct == 3) sum += corr;
    return sum;
}

}  // namespace

cplx prepotential_third_derivs(const VeeSystem& sys, const PrepotentialPoint& pt, int i, int j,
                               int k, const SeriesPolicy& policy) {
    sys.validate();
    const int top = sys.dim + 1;
    for (int c : {i, j, k})
        if (c < 0 || c > top) throw domain_error("prepotential_third_derivs: coordinate index out of range");
    auto d = root_derivs(sys, pt, policy);
    cplx corr = tau3_correction(sys, pt.tau, policy);
    return tensor_entry(sys, d, corr, i, j, k);
}

double wdvv_residual(const VeeSystem& sys, const PrepotentialPoint& pt,
                     const SeriesPolicy& policy) {
    sys.validate();
    const int N = sys.dim;
    const int dim = N + 2;
    auto d = root_derivs(sys, pt, policy);
    cplx corr = tau3_correction(sys, pt.tau, policy);

    // g^{-1}: swap block for (u,tau), -B^{-1} for the z block.
    std::vector<std::vector<cplx>> B(N, std::vector<cplx>(N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) B[i][j] = form_entry(sys, i, j);
    auto Binv = invert(B);
    std::vector<std::vector<cplx>> ginv(dim, std::vector<cplx>(dim, 0.0));
    ginv[0][dim - 1] = ginv[dim - 1][0] = 1.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) ginv[1 + i][1 + j] = -Binv[i][j];

    // F3 tensor and structure matrices.
    std::vector<cplx> F3(dim * dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = j; k < dim; ++k) {
                cplx v = tensor_entry(sys, d, corr, i, j, k);
                F3[(i * dim + j) * dim + k] = v;
                F3[(i * dim + k) * dim + j] = v;
            }
    auto mat = [&](int i) {
        std::vector<cplx> Fi(dim * dim, 0.0);
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                cplx s = 0.0;
                for (int r = 0; r < dim; ++r) s += ginv[k][r] * F3[(i * dim + j) * dim + r];
                Fi[j * dim + k] = s;
            }
        return Fi;
    };
    std::vector<std::vector<cplx>> F(dim);
    for (int i = 0; i < dim; ++i) F[i] = mat(i);

    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) {
                    cplx ab = 0.0, ba = 0.0;
                    for (int l = 0; l < dim; ++l) {
                        ab += F[i][r * dim + l] * F[j][l * dim + c];
                        ba += F[j][r * dim + l] * F[i][l * dim + c];
                    }
                    worst = std::max(worst, std::abs(ab - ba));
                }
        }
    return worst;
}

VeeSystem a1_dual_system() {
    VeeSystem s;
    s.dim = 1;
    s.form = {{2.0}};
    s.vectors = {{1.0}, {0.5}};
    s.weights = {1.0, -4.0};
    return s;
}

namespace {

VeeSystem a2_system(bool full) {
    VeeSystem s;
    s.dim = 2;
    const double r2 = std::sqrt(2.0), hr2 = std::sqrt(0.5), r32 = std::sqrt(1.5);
    s.vectors = {{r2, 0.0}, {-hr2, r32}, {hr2, r32}};
    if (full)
        for (int i = 0; i < 3; ++i)
            s.vectors.push_back({-s.vectors[i][0], -s.vectors[i][1]});
    s.weights.assign(s.vectors.size(), 1.0);
    return s;
}

}  // namespace

VeeSystem builtin_system(const std::string& name) {
    if (name == "a1-dual") return a1_dual_system();
    if (name == "a1-weight3") {
        VeeSystem s;
        s.dim = 1;
        s.vectors = {{1.0}};
        s.weights = {3.0};
        return s;
    }
    if (name == "a2-roots-unit-weights") return a2_system(false);
    if (name == "a2-full-roots-unit-weights") return a2_system(true);
    if (name == "a1xa1") {
        VeeSystem s;
        s.dim = 2;
        s.vectors = {{1.0, 0.0}, {0.0, 1.0}};
        s.weights = {1.0, 1.0};
        return s;
    }
    throw domain_error("unknown builtin system: " + name);
}

std::vector<std::string> builtin_system_names() {
    return {"a1-dual", "a1-weight3", "a2-roots-unit-weights", "a2-full-roots-unit-weights",
            "a1xa1"};
}

cplx pde_residual_h(const TrilogCombination& h_spec, cplx z, const HalfPlanePoint& tau,
                    const SeriesPolicy& policy) {
    cplx h30 = 0.0, h21 = 0.0, h12 = 0.0, h03 = 0.0;
    for (const auto& [c, lambda] : h_spec.terms) {
        ThirdDerivs d = f_third_derivs(lambda * z, tau, policy);
        h30 += c * lambda * lambda * lambda * d.f30;
        h21 += c * lambda * lambda * d.f21;
        h12 += c * lambda * d.f12;
        h03 += c * d.f03;
    }
    if (h_spec.li3_coeff != cplx(0.0))
        h03 += h_spec.li3_coeff * elliptic_li3_one_tau3(tau, policy);
    return h30 * h12 - h21 * h21 + h03 / 3.0;
}

VeeSystem parse_vee_system(std::istream& in) {
    VeeSystem sys;
    std::string line;
    int lineno = 0;
    bool have_dim = false, have_form = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word) || word[0] == '#') continue;
        if (word == "dim") {
            if (have_dim) throw parse_error(lineno, "duplicate dim");
            if (!(ls >> sys.dim) || sys.dim < 1) throw parse_error(lineno, "bad dimension");
            have_dim = true;
        } else if (word == "form") {
            if (!have_dim) throw parse_error(lineno, "form before dim");
            if (have_form) throw parse_error(lineno, "duplicate form");
            sys.form.assign(sys.dim, std::vector<cplx>(sys.dim));
            for (int i = 0; i < sys.dim; ++i)
                for (int j = 0; j < sys.dim; ++j) {
                    std::string tok;
                    if (!(ls >> tok)) throw parse_error(lineno, "form needs N*N entries");
                    try {
                        sys.form[i][j] = parse_complex(tok);
                    } catch (const std::exception& e) {
                        throw parse_error(lineno, e.what());
                    }
                }
            have_form = true;
        } else if (word == "vector") {
            if (!have_dim) throw parse_error(lineno, "vector before dim");
            std::vector<cplx> v(sys.dim);
            for (int i = 0; i < sys.dim; ++i) {
                std::string tok;
                if (!(ls >> tok)) throw parse_error(lineno, "vector needs N entries");
                try {
                    v[i] = parse_complex(tok);
                } catch (const std::exception& e) {
                    throw parse_error(lineno, e.what());
                }
            }
            std::string kw, wtok;
            if (!(ls >> kw >> wtok) || kw != "weight")
                throw parse_error(lineno, "expected `weight <complex>`");
            try {
                sys.weights.push_back(parse_complex(wtok));
            } catch (const std::exception& e) {
                throw parse_error(lineno, e.what());
            }
            sys.vectors.push_back(std::move(v));
        } else {
            throw parse_error(lineno, "unknown directive `" + word + "`");
        }
    }
    if (!have_dim) throw parse_error(lineno, "missing dim line");
    if (sys.vectors.empty()) throw parse_error(lineno, "no vector lines");
    sys.validate();
    return sys;
}

VeeSystem load_vee_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open system file: " + path);
    return parse_vee_system(in);
}

}  // namespace ellitri
