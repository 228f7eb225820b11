#pragma once

#include <cstdint>

#include "dacs/rng.hpp"

namespace dacs {

/// l-bit uniform mid-rise quantizer with geometrically decaying cell width.
/// Representation levels at step t are Delta^(t) * (a + 1/2) for
/// a in {-2^(l-1), ..., 2^(l-1)-1}.
struct QuantizerSchedule {
    double delta0 = 1.0;     ///< initial cell width, > 0
    double gamma = 0.9;      ///< decay rate in (0,1)
    double delta_min = 0.0;  ///< cell-width floor, >= 0
    int bits = 2;            ///< l >= 1

    void validate() const;

    /// Default initial cell width when none is configured: the first
    /// differentials scale with the z-initialization spread.
    static double default_delta0(double sigma_z, double c);
};

/// Delta^(t) = max(gamma^t * delta0, delta_min)
double cell_width(const QuantizerSchedule& sched, int t);

struct QuantizeResult {
    double value = 0.0;      ///< emitted value, q - dither
    std::int64_t level = 0;  ///< level index a after clamping
    bool saturated = false;  ///< input fell outside the representable range
};

/// Subtractive dithering: snap (value + dither) to the nearest level,
/// clamping to the extreme levels, then subtract the dither again. On
/// non-saturating inputs the error (output - value) is
/// Uniform(-Delta/2, Delta/2) and independent of the input. Boundary ties
/// round half away from zero.
QuantizeResult quantize(double value, const QuantizerSchedule& sched, int t, double dither);

/// Pseudorandom dither sequence for one directed edge. Sender and receiver
/// construct the same stream from the same (run seed, edge id) pair, so the
/// reconstructions never diverge.
class DitherStream {
  public:
    DitherStream(std::uint64_t run_seed, std::uint64_t edge_id)
        : rng_(mix_seed(run_seed, 0xd17e4ULL, edge_id)) {}

    /// One draw from Uniform(-delta/2, delta/2).
    double next(double delta) { return delta * (rng_.uniform01() - 0.5); }

  private:
    Rng rng_;
};

struct DiffEncodeResult {
    double delta_hat = 0.0;  ///< quantized difference to transmit
    double noise = 0.0;      ///< delta_hat - dz, equals zhat_new - z_new
    std::int64_t level = 0;
    bool saturated = false;
};

/// Encodes z_new against the receiver-synchronized reconstruction
/// zhat_prev; t is the message index (cell width Delta^(t)).
DiffEncodeResult diff_encode(double z_new, double zhat_prev, int t, const QuantizerSchedule& sched,
                             DitherStream& dither);

/// zhat_new = zhat_prev + delta_hat; telescopes to
/// zhat^(t) = z^(0) + sum of transmitted differences.
inline double diff_decode(double zhat_prev, double delta_hat) { return zhat_prev + delta_hat; }

}  // namespace dacs
