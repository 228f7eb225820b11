#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dacs/consensus.hpp"
#include "dacs/quantizer.hpp"
#include "dacs/transcript.hpp"

namespace dacs {

// ---------------------------------------------------------------------------
// ADQSP: subspace perturbation + adaptive differential dithered quantization
// ---------------------------------------------------------------------------

struct AdqspConfig {
    double sigma_z2 = 1e6;  ///< variance of the Gaussian z^(0) initialization
    QuantizerSchedule sched;
    ConsensusConfig consensus;
    /// Runs exceeding this many saturation events throw; default unlimited
    /// (saturations are always counted and reported).
    std::int64_t saturation_budget = std::numeric_limits<std::int64_t>::max();
    /// Monte Carlo grids switch this off to skip building large transcripts.
    bool record_transcript = true;

    double sigma_z() const;
    void validate() const;

    /// Schedule with delta0 filled from the default heuristic when the
    /// caller left it unset (<= 0).
    QuantizerSchedule effective_sched() const;
};

struct AdqspResult {
    Trajectory traj;                ///< x^(1) .. x^(t_max)
    Transcript transcript;
    std::vector<EdgeField> noise;   ///< noise[t] = n^(t), valid for 1 <= t <= t_max-1
    std::int64_t saturations = 0;
    EdgeField z0;                   ///< ground-truth initialization (simulator only)
};

/// Full ADQSP run. t = 0 exchanges Gaussian z^(0) over secure channels and
/// takes one exact step; every later round exchanges quantized differences
/// over public channels and updates from the shared reconstruction zhat.
AdqspResult run_adqsp(const NodeVector& s, const IncidenceData& inc, const AdqspConfig& cfg,
                      std::uint64_t seed);

/// Predicted converged MSE for delta_min > 0:
///   (1/n) sum_i d_i (delta_min^2/12) / (1 + c d_i)^2,
/// the residual variance when every edge noise is an independent
/// Uniform(-delta_min/2, delta_min/2).
double adqsp_mse_floor_prediction(const IncidenceData& inc, const AdqspConfig& cfg);

// ---------------------------------------------------------------------------
// SMPC: additive secret sharing over Z_p + broadcast consensus
// ---------------------------------------------------------------------------

struct SmpcConfig {
    std::uint64_t p = (std::uint64_t{1} << 61) - 1;  ///< modulus, prime, < 2^62
    std::int64_t scale = 1000000;                    ///< fixed-point scaling
    ConsensusConfig consensus;

    void validate() const;
};

// Z_p helpers. Negative reals map to modular additive inverses.
std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t embed_fixed(double value, const SmpcConfig& cfg);
double unembed_fixed(std::uint64_t residue, const SmpcConfig& cfg);
/// Signed centered representative in (-p/2, p/2].
std::int64_t center_mod(std::uint64_t residue, std::uint64_t p);

struct SmpcShares {
    std::vector<std::uint64_t> to_neighbors;  ///< r_i^j, aligned with the neighbor list
    std::uint64_t own = 0;                    ///< r_i^i = s_i - sum_j r_i^j mod p
};

/// Shares sum to the secret mod p; any strict subset is uniform.
SmpcShares smpc_share(std::uint64_t secret, int n_neighbors, std::uint64_t p, Rng& rng);

struct SmpcResult {
    std::vector<std::uint64_t> s_masked;  ///< s'_i in Z_p
    double output = 0.0;                  ///< recovered average, exact at scale resolution
    Transcript transcript;
    std::int64_t recovered_sum = 0;       ///< centered sum of the fixed-point inputs
};

/// Masks the inputs with telescoping shares, runs the broadcast consensus on
/// the real-embedded masked values (extended precision internally), and
/// finalizes (n * s'_ave mod p) / n before unscaling. Output equals the true
/// average exactly at the fixed-point resolution. Throws on wraparound risk.
SmpcResult smpc_mask_and_average(const NodeVector& s, const IncidenceData& inc,
                                 const SmpcConfig& cfg, std::uint64_t seed);

// ---------------------------------------------------------------------------
// DP: local perturbation + plain broadcast consensus
// ---------------------------------------------------------------------------

struct DpConfig {
    enum class Mechanism { laplace, uniform };
    Mechanism mechanism = Mechanism::laplace;
    double M = 1.0;        ///< data range parameter (laplace)
    double epsilon = 1.0;  ///< privacy parameter (laplace), noise scale M/epsilon
    double u_r = 0.1;      ///< width of the uniform mechanism
    ConsensusConfig consensus;
    bool record_transcript = true;

    void validate() const;
};

struct DpResult {
    NodeVector output;      ///< per-node final iterate
    Trajectory traj;
    Transcript transcript;
    NodeVector noises;      ///< the r_i actually added
    double e_dp = 0.0;      ///< (1/n) sum r_i^2
};

/// Perturbs s_i with the configured mechanism and runs the plain broadcast
/// consensus (z0 = 0, no subspace perturbation) on the perturbed data.
DpResult run_dp(const NodeVector& s, const IncidenceData& inc, const DpConfig& cfg,
                std::uint64_t seed);

}  // namespace dacs
