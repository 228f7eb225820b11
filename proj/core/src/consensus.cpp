#include "dacs/consensus.hpp"

#include <cassert>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "consensus_detail.hpp"

namespace dacs {

void ConsensusConfig::validate() const {
    if (!(c > 0.0)) throw std::invalid_argument("consensus.c: must be > 0");
    if (!(theta >= 0.0 && theta < 1.0)) throw std::invalid_argument("consensus.theta: must be in [0,1)");
    if (t_max < 1) throw std::invalid_argument("consensus.t_max: must be >= 1");
}

NodeVector x_update(const NodeVector& s, const EdgeField& z, const ConsensusConfig& cfg,
                    const IncidenceData& inc) {
    assert(static_cast<int>(z.size()) == 2 * inc.m);
    return detail::x_update_t<double>(s, z, cfg.c, inc);
}

EdgeField z_update(const EdgeField& z, const NodeVector& x, const ConsensusConfig& cfg,
                   const IncidenceData& inc) {
    return detail::z_update_t<double>(z, x, cfg.c, cfg.theta, inc);
}

Trajectory run_plain(const NodeVector& s, const ConsensusConfig& cfg, const IncidenceData& inc,
                     const EdgeField& z0) {
    cfg.validate();
    Trajectory traj;
    traj.x.assign(cfg.t_max + 1, NodeVector(inc.n, 0.0));
    EdgeField z = z0;
    for (int t = 1; t <= cfg.t_max; ++t) {
        traj.x[t] = x_update(s, z, cfg, inc);
        z = z_update(z, traj.x[t], cfg, inc);
    }
    return traj;
}

Trajectory run_broadcast(const NodeVector& s, const ConsensusConfig& cfg, const IncidenceData& inc,
                         const EdgeField& z0) {
    cfg.validate();
    Trajectory traj;
    traj.x.assign(cfg.t_max + 1, NodeVector(inc.n, 0.0));
    EdgeField z = z0;
    for (int t = 1; t <= cfg.t_max; ++t) {
        traj.x[t] = x_update(s, z, cfg, inc);
        // after the broadcast of x, each node evaluates the same expression
        // for both directions of its edges; entrywise identical to z_update
        EdgeField znew(z.size());
        for (int d = 0; d < 2 * inc.m; ++d) {
            int sd = inc.swapped(d);
            znew[d] = cfg.theta * z[d] +
                      (1.0 - cfg.theta) *
                          (z[sd] + 2.0 * cfg.c * inc.weight[sd] * traj.x[t][inc.holder[sd]]);
        }
        z = std::move(znew);
    }
    return traj;
}

std::pair<NodeVector, EdgeField> compact_step(const NodeVector& x, const EdgeField& z,
                                              const NodeVector& s, const ConsensusConfig& cfg,
                                              const IncidenceData& inc) {
    (void)x;  // the compact x-update does not depend on the previous x
    // I + c C^T C must be diagonal with entries 1 + c d_i; assert it.
    const int n = inc.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double acc = 0.0;
            for (int r = 0; r < 2 * inc.m; ++r) acc += inc.C(r, a) * inc.C(r, b);
            double want = (a == b) ? static_cast<double>(inc.degree[a]) : 0.0;
            if (std::fabs(acc - want) > 1e-12)
                throw std::logic_error("compact_step: C^T C is not the degree diagonal");
        }

    NodeVector ctz = inc.C.multiply_transposed(z);
    NodeVector xp(n);
    for (int i = 0; i < n; ++i) xp[i] = (s[i] - ctz[i]) / (1.0 + cfg.c * inc.degree[i]);

    EdgeField cx = inc.C.multiply(xp);
    EdgeField pz = inc.apply_P(z);
    EdgeField pcx = inc.apply_P(cx);
    EdgeField zp(z.size());
    for (std::size_t d = 0; d < z.size(); ++d)
        zp[d] = cfg.theta * z[d] + (1.0 - cfg.theta) * (pz[d] + 2.0 * cfg.c * pcx[d]);
    return {xp, zp};
}

namespace {

double norm2(const EdgeField& v) {
    double acc = 0.0;
    for (double a : v) acc += a * a;
    return std::sqrt(acc);
}

double dot(const EdgeField& a, const EdgeField& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace

SubspaceBasis subspace_basis(const IncidenceData& inc, double tol) {
    const int two_m = 2 * inc.m;
    // candidate vectors: columns of C, then columns of PC
    std::vector<EdgeField> cand;
    cand.reserve(2 * inc.n);
    double max_norm = 0.0;
    for (int pass = 0; pass < 2; ++pass)
        for (int col = 0; col < inc.n; ++col) {
            EdgeField v(two_m);
            for (int r = 0; r < two_m; ++r) v[r] = inc.C(r, col);
            if (pass == 1) v = inc.apply_P(v);
            max_norm = std::max(max_norm, norm2(v));
            cand.push_back(std::move(v));
        }
    if (tol <= 0.0) tol = 1e-10 * max_norm;

    SubspaceBasis out;
    out.tol = tol;
    for (auto& v : cand) {
        for (int pass = 0; pass < 2; ++pass)  // re-orthogonalize once
            for (const auto& b : out.basis) {
                double p = dot(v, b);
                for (int r = 0; r < two_m; ++r) v[r] -= p * b[r];
            }
        double nv = norm2(v);
        if (nv < tol) continue;
        for (double& a : v) a /= nv;
        out.basis.push_back(std::move(v));
    }
    return out;
}

std::pair<EdgeField, EdgeField> project(const EdgeField& z, const SubspaceBasis& basis) {
    EdgeField z_psi(z.size(), 0.0);
    for (const auto& b : basis.basis) {
        double p = dot(z, b);
        for (std::size_t r = 0; r < z.size(); ++r) z_psi[r] += p * b[r];
    }
    EdgeField z_perp(z.size());
    for (std::size_t r = 0; r < z.size(); ++r) z_perp[r] = z[r] - z_psi[r];
    return {z_psi, z_perp};
}

EdgeField closed_form_zperp(const EdgeField& z0_perp, int t, double theta,
                            const IncidenceData& inc) {
    EdgeField pz = inc.apply_P(z0_perp);
    double decay = std::pow(2.0 * theta - 1.0, t);
    EdgeField out(z0_perp.size());
    for (std::size_t r = 0; r < out.size(); ++r)
        out[r] = 0.5 * (z0_perp[r] + pz[r]) + 0.5 * decay * (z0_perp[r] - pz[r]);
    return out;
}

double mse(const NodeVector& x, const NodeVector& target) {
    if (x.size() != target.size()) throw std::invalid_argument("mse: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x[i] - target[i];
        acc += d * d;
    }
    return acc / static_cast<double>(x.size());
}

double mse(const NodeVector& x, double target) {
    double acc = 0.0;
    for (double xi : x) {
        double d = xi - target;
        acc += d * d;
    }
    return acc / static_cast<double>(x.size());
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,node,x\n";
    os.precision(17);
    for (int t = 1; t <= traj.t_max(); ++t)
        for (std::size_t i = 0; i < traj.x[t].size(); ++i)
            os << t << ',' << i << ',' << traj.x[t][i] << '\n';
}

void write_mse_csv(std::ostream& os, const std::vector<double>& mse_by_t, int t_first) {
    os << "t,mse\n";
    os.precision(17);
    for (std::size_t i = 0; i < mse_by_t.size(); ++i) os << (t_first + static_cast<int>(i)) << ',' << mse_by_t[i] << '\n';
}

}  // namespace dacs
