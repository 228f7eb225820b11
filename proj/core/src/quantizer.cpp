#include "dacs/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dacs {

void QuantizerSchedule::validate() const {
    if (!(delta0 > 0.0)) throw std::invalid_argument("adqsp.delta0: must be > 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("adqsp.gamma: must be in (0,1)");
    if (!(delta_min >= 0.0)) throw std::invalid_argument("adqsp.delta_min: must be >= 0");
    if (bits < 1 || bits > 62) throw std::invalid_argument("adqsp.bits: must be in [1,62]");
}

double QuantizerSchedule::default_delta0(double sigma_z, double c) {
    return 4.0 * sigma_z * std::max(1.0, 2.0 * c);
}

double cell_width(const QuantizerSchedule& sched, int t) {
    if (t < 0) throw std::invalid_argument("cell_width: t must be >= 0");
    return std::max(std::pow(sched.gamma, t) * sched.delta0, sched.delta_min);
}

QuantizeResult quantize(double value, const QuantizerSchedule& sched, int t, double dither) {
    const double delta = cell_width(sched, t);
    const std::int64_t a_max = (std::int64_t{1} << (sched.bits - 1)) - 1;
    const std::int64_t a_min = -(std::int64_t{1} << (sched.bits - 1));

    const double u = (value + dither) / delta;
    double af = std::floor(u);
    if (u == af && u < 0.0) af -= 1.0;  // boundary tie: round half away from zero

    QuantizeResult res;
    res.saturated = af < static_cast<double>(a_min) || af > static_cast<double>(a_max);
    res.level = static_cast<std::int64_t>(
        std::clamp(af, static_cast<double>(a_min), static_cast<double>(a_max)));
    res.value = delta * (static_cast<double>(res.level) + 0.5) - dither;
    return res;
}

DiffEncodeResult diff_encode(double z_new, double zhat_prev, int t, const QuantizerSchedule& sched,
                             DitherStream& dither) {
    const double dz = z_new - zhat_prev;
    const double d = dither.next(cell_width(sched, t));
    QuantizeResult q = quantize(dz, sched, t, d);
    return {q.value, q.value - dz, q.level, q.saturated};
}

}  // namespace dacs
