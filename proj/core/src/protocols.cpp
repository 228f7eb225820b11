#include "dacs/protocols.hpp"

#include <cmath>
#include <stdexcept>

#include "consensus_detail.hpp"

namespace dacs {

// ---------------------------------------------------------------------------
// ADQSP
// ---------------------------------------------------------------------------

double AdqspConfig::sigma_z() const { return std::sqrt(sigma_z2); }

QuantizerSchedule AdqspConfig::effective_sched() const {
    QuantizerSchedule s = sched;
    if (s.delta0 <= 0.0) s.delta0 = QuantizerSchedule::default_delta0(sigma_z(), consensus.c);
    return s;
}

void AdqspConfig::validate() const {
    if (!(sigma_z2 >= 0.0)) throw std::invalid_argument("adqsp.sigma_z2: must be >= 0");
    consensus.validate();
    effective_sched().validate();  // rejects sigma_z = 0 with unset delta0
}

AdqspResult run_adqsp(const NodeVector& s, const IncidenceData& inc, const AdqspConfig& cfg,
                      std::uint64_t seed) {
    cfg.validate();
    const QuantizerSchedule sched = cfg.effective_sched();
    const ConsensusConfig& cc = cfg.consensus;
    const int two_m = 2 * inc.m;
    const int t_max = cc.t_max;

    AdqspResult res;
    res.traj.x.assign(t_max + 1, NodeVector(inc.n, 0.0));
    res.noise.assign(t_max, EdgeField());

    // t = 0: Gaussian initialization, exchanged over secure channels.
    Rng init_rng(mix_seed(seed, 0x2e107ULL));
    EdgeField z0(two_m);
    const double sz = cfg.sigma_z();
    for (int d = 0; d < two_m; ++d) z0[d] = sz > 0.0 ? init_rng.normal(0.0, sz) : 0.0;
    if (cfg.record_transcript)
        for (int d = 0; d < two_m; ++d)
            res.transcript.add(0, inc.holder[d], inc.other[d], MsgKind::z_init, true, z0[d]);
    res.z0 = z0;

    std::vector<DitherStream> dither;
    dither.reserve(two_m);
    for (int d = 0; d < two_m; ++d) dither.emplace_back(seed, static_cast<std::uint64_t>(d));

    // one exact step from z^(0)
    EdgeField zhat = z0;
    res.traj.x[1] = detail::x_update_t<double>(s, z0, cc.c, inc);
    EdgeField z_new = detail::z_update_t<double>(z0, res.traj.x[1], cc.c, cc.theta, inc);

    for (int t = 1; t < t_max; ++t) {  // t is the message index
        res.noise[t].resize(two_m);
        for (int d = 0; d < two_m; ++d) {
            DiffEncodeResult enc = diff_encode(z_new[d], zhat[d], t, sched, dither[d]);
            res.noise[t][d] = enc.noise;
            if (enc.saturated) ++res.saturations;
            // the delta for z_{holder|other} travels from the opposite endpoint
            if (cfg.record_transcript)
                res.transcript.add(t, inc.other[d], inc.holder[d], MsgKind::delta_hat, false,
                                   enc.delta_hat, enc.level);
            zhat[d] = diff_decode(zhat[d], enc.delta_hat);
        }
        if (res.saturations > cfg.saturation_budget)
            throw std::runtime_error("adqsp: saturation budget exceeded (quantizer overflow)");
        res.traj.x[t + 1] = detail::x_update_t<double>(s, zhat, cc.c, inc);
        z_new = detail::z_update_t<double>(zhat, res.traj.x[t + 1], cc.c, cc.theta, inc);
    }
    return res;
}

double adqsp_mse_floor_prediction(const IncidenceData& inc, const AdqspConfig& cfg) {
    const QuantizerSchedule sched = cfg.effective_sched();
    const double var = sched.delta_min * sched.delta_min / 12.0;
    double acc = 0.0;
    for (int i = 0; i < inc.n; ++i) {
        double denom = 1.0 + cfg.consensus.c * inc.degree[i];
        acc += inc.degree[i] * var / (denom * denom);
    }
    return acc / inc.n;
}

// ---------------------------------------------------------------------------
// SMPC
// ---------------------------------------------------------------------------

void SmpcConfig::validate() const {
    if (p < 3 || p >= (std::uint64_t{1} << 62)) throw std::invalid_argument("smpc.p: must be in [3, 2^62)");
    if (scale < 1) throw std::invalid_argument("smpc.scale: must be >= 1");
    consensus.validate();
}

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t r = a + b;  // both < p < 2^62, no overflow
    return r >= p ? r - p : r;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t embed_fixed(double value, const SmpcConfig& cfg) {
    long long v = std::llround(value * static_cast<double>(cfg.scale));
    if (v >= 0) return static_cast<std::uint64_t>(v) % cfg.p;
    return sub_mod(0, static_cast<std::uint64_t>(-v) % cfg.p, cfg.p);
}

std::int64_t center_mod(std::uint64_t residue, std::uint64_t p) {
    if (residue > p / 2) return static_cast<std::int64_t>(residue) - static_cast<std::int64_t>(p);
    return static_cast<std::int64_t>(residue);
}

double unembed_fixed(std::uint64_t residue, const SmpcConfig& cfg) {
    return static_cast<double>(center_mod(residue, cfg.p)) / static_cast<double>(cfg.scale);
}

SmpcShares smpc_share(std::uint64_t secret, int n_neighbors, std::uint64_t p, Rng& rng) {
    SmpcShares sh;
    sh.to_neighbors.resize(n_neighbors);
    std::uint64_t sum = 0;
    for (auto& r : sh.to_neighbors) {
        r = rng.uniform_below(p);
        sum = add_mod(sum, r, p);
    }
    sh.own = sub_mod(secret % p, sum, p);
    return sh;
}

SmpcResult smpc_mask_and_average(const NodeVector& s, const IncidenceData& inc,
                                 const SmpcConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    const int n = inc.n;
    const std::uint64_t p = cfg.p;

    // wraparound guard: the true fixed-point sum must stay in (-p/2, p/2)
    double max_abs = 0.0;
    for (double v : s) max_abs = std::max(max_abs, std::fabs(v));
    if (static_cast<double>(n) * static_cast<double>(cfg.scale) * (max_abs + 1.0) >=
        static_cast<double>(p) / 2.0)
        throw std::runtime_error("smpc: wraparound detected (modulus too small for n*scale*max|s|)");

    SmpcResult res;
    std::vector<std::uint64_t> secret(n);
    for (int i = 0; i < n; ++i) secret[i] = embed_fixed(s[i], cfg);

    // share phase: r_i^j uniform, own share completes the telescope
    Rng rng(mix_seed(seed, 0x5a4eULL));
    std::vector<std::uint64_t> own(n);
    std::vector<std::vector<std::uint64_t>> sent(n);  // aligned with adjacency order
    for (int i = 0; i < n; ++i) {
        const auto& nb = inc.neighbors[i];
        SmpcShares sh = smpc_share(secret[i], static_cast<int>(nb.size()), p, rng);
        own[i] = sh.own;
        sent[i] = sh.to_neighbors;
        for (std::size_t a = 0; a < nb.size(); ++a)
            res.transcript.add(0, i, nb[a], MsgKind::share, true,
                               static_cast<long double>(sh.to_neighbors[a]));
    }

    // s'_i = r_i^i + sum of received shares
    res.s_masked.resize(n);
    for (int i = 0; i < n; ++i) {
        std::uint64_t acc = own[i];
        const auto& nb = inc.neighbors[i];
        for (int j : nb) {
            const auto& nbj = inc.neighbors[j];
            for (std::size_t a = 0; a < nbj.size(); ++a)
                if (nbj[a] == i) acc = add_mod(acc, sent[j][a], p);
        }
        res.s_masked[i] = acc;
    }

    // broadcast consensus on the real-embedded masked inputs, extended
    // precision so that n * s'_ave recovers the exact integer sum
    using Quad = __float128;
    std::vector<Quad> sq(n);
    for (int i = 0; i < n; ++i) sq[i] = static_cast<Quad>(res.s_masked[i]);
    std::vector<Quad> z(2 * inc.m, Quad(0));
    std::vector<Quad> x;
    for (int t = 1; t <= cfg.consensus.t_max; ++t) {
        x = detail::x_update_t<Quad>(sq, z, cfg.consensus.c, inc);
        for (int i = 0; i < n; ++i) {
            const auto& nb = inc.neighbors[i];
            for (int j : nb)
                res.transcript.add(t, i, j, MsgKind::x_broadcast, false,
                                   static_cast<long double>(x[i]));
        }
        z = detail::z_update_t<Quad>(z, x, cfg.consensus.c, cfg.consensus.theta, inc);
    }

    // finalize: round n * s'_ave to the integer sum, reduce mod p, center
    Quad total = static_cast<Quad>(n) * x[0];
    __int128 rounded = static_cast<__int128>(total + (total < Quad(0) ? Quad(-0.5) : Quad(0.5)));
    __int128 pp = static_cast<__int128>(p);
    __int128 residue = ((rounded % pp) + pp) % pp;
    std::uint64_t res_u = static_cast<std::uint64_t>(residue);
    res.recovered_sum = center_mod(res_u, p);
    res.output = static_cast<double>(static_cast<long double>(res.recovered_sum) /
                                     (static_cast<long double>(n) * cfg.scale));
    return res;
}

// ---------------------------------------------------------------------------
// DP
// ---------------------------------------------------------------------------

void DpConfig::validate() const {
    if (mechanism == Mechanism::laplace) {
        if (!(M > 0.0)) throw std::invalid_argument("dp.M: must be > 0");
        if (!(epsilon > 0.0)) throw std::invalid_argument("dp.epsilon: must be > 0");
    } else {
        if (!(u_r > 0.0)) throw std::invalid_argument("dp.u_r: must be > 0");
    }
    consensus.validate();
}

DpResult run_dp(const NodeVector& s, const IncidenceData& inc, const DpConfig& cfg,
                std::uint64_t seed) {
    cfg.validate();
    const int n = inc.n;

    DpResult res;
    res.noises.resize(n);
    Rng rng(mix_seed(seed, 0xd9ULL));
    for (int i = 0; i < n; ++i)
        res.noises[i] = cfg.mechanism == DpConfig::Mechanism::laplace
                            ? rng.laplace(cfg.M / cfg.epsilon)
                            : rng.uniform(-cfg.u_r / 2.0, cfg.u_r / 2.0);

    NodeVector perturbed(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        perturbed[i] = s[i] + res.noises[i];
        acc += res.noises[i] * res.noises[i];
    }
    res.e_dp = acc / n;

    EdgeField z(2 * inc.m, 0.0);
    res.traj.x.assign(cfg.consensus.t_max + 1, NodeVector(n, 0.0));
    for (int t = 1; t <= cfg.consensus.t_max; ++t) {
        res.traj.x[t] = detail::x_update_t<double>(perturbed, z, cfg.consensus.c, inc);
        if (cfg.record_transcript)
            for (int i = 0; i < n; ++i)
                for (int j : inc.neighbors[i])
                    res.transcript.add(t, i, j, MsgKind::x_broadcast, false, res.traj.x[t][i]);
        z = detail::z_update_t<double>(z, res.traj.x[t], cfg.consensus.c, cfg.consensus.theta, inc);
    }
    res.output = res.traj.x[cfg.consensus.t_max];
    return res;
}

}  // namespace dacs
