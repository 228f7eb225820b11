#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "dacs/graph.hpp"

namespace dacs {

/// One real value per directed edge, 2m entries in IncidenceData order.
/// Houses the auxiliary variable z and, by reuse, zhat, dz and the
/// quantization noises.
using EdgeField = std::vector<double>;

struct ConsensusConfig {
    double c = 1.0;      ///< step constant, > 0; controls convergence rate
    double theta = 0.0;  ///< operator averaging in [0,1); 0 = PDMM, 0.5 = ADMM
    int t_max = 400;     ///< fixed iteration budget (no early exit)

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// x trajectory of a run; x[t] is the iterate x^(t) for t = 1..t_max.
/// x[0] is a zero placeholder so indices line up with the update equations.
struct Trajectory {
    std::vector<NodeVector> x;

    int t_max() const { return static_cast<int>(x.size()) - 1; }
    const NodeVector& at(int t) const { return x[t]; }
};

/// x_i = (s_i - sum_j B_{i|j} z_{i|j}) / (1 + c d_i)
NodeVector x_update(const NodeVector& s, const EdgeField& z, const ConsensusConfig& cfg,
                    const IncidenceData& inc);

/// z'_{j|i} = theta z_{j|i} + (1-theta)(z_{i|j} + 2c B_{i|j} x_i)
EdgeField z_update(const EdgeField& z, const NodeVector& x, const ConsensusConfig& cfg,
                   const IncidenceData& inc);

/// Alternates the two updates for t_max rounds from z0. With z0 = 0 the
/// iterates converge to the average of s.
Trajectory run_plain(const NodeVector& s, const ConsensusConfig& cfg, const IncidenceData& inc,
                     const EdgeField& z0);

/// Broadcast variant: each node sends x_i once per round and neighbors
/// derive both edge variables locally. Algebraically identical to
/// run_plain; message count per round is 2m x-values instead of 2m
/// directed z-values.
Trajectory run_broadcast(const NodeVector& s, const ConsensusConfig& cfg, const IncidenceData& inc,
                         const EdgeField& z0);

/// Dense-matrix form of one iteration,
///   x+ = (I + c C^T C)^{-1} (s - C^T z),   z+ = theta z + (1-theta)(P z + 2c P C x+).
/// Cross-check oracle for the per-node updates; uses the dense matrices and
/// the fact that C^T C equals diag(d_i) exactly for this construction.
std::pair<NodeVector, EdgeField> compact_step(const NodeVector& x, const EdgeField& z,
                                              const NodeVector& s, const ConsensusConfig& cfg,
                                              const IncidenceData& inc);

/// Orthonormal basis of Psi = ran(C) + ran(PC) inside R^{2m}.
struct SubspaceBasis {
    std::vector<EdgeField> basis;  ///< pairwise orthonormal spanning vectors
    double tol = 0.0;              ///< rank tolerance actually used

    int rank() const { return static_cast<int>(basis.size()); }
};

/// Sequential (modified Gram-Schmidt) orthogonalization of the columns of C
/// then PC, discarding residuals below tol. tol <= 0 selects the default
/// 1e-10 * (largest column norm).
SubspaceBasis subspace_basis(const IncidenceData& inc, double tol = -1.0);

/// Splits z into its Psi projection and Psi-orthogonal remainder;
/// C^T z_perp = 0 and (PC)^T z_perp = 0 up to tolerance.
std::pair<EdgeField, EdgeField> project(const EdgeField& z, const SubspaceBasis& basis);

/// Closed-form evolution of the Psi-orthogonal component:
///   zp^(t) = (zp0 + P zp0)/2 + ((2 theta - 1)^t) (zp0 - P zp0)/2.
EdgeField closed_form_zperp(const EdgeField& z0_perp, int t, double theta,
                            const IncidenceData& inc);

/// (1/n) ||x - target||^2
double mse(const NodeVector& x, const NodeVector& target);
double mse(const NodeVector& x, double target);

/// CSV exports: trajectory as "t,node,x", an MSE curve as "t,mse".
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_mse_csv(std::ostream& os, const std::vector<double>& mse_by_t, int t_first = 1);

}  // namespace dacs
