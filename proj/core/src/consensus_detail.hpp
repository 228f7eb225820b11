#pragma once

// Scalar-generic forms of the two local update rules. Instantiated with
// double for the ordinary runs and with __float128 for the SMPC path, where
// the masked inputs occupy 61 bits and the averaged sum must be recovered
// to the exact integer.

#include <vector>

#include "dacs/graph.hpp"

namespace dacs::detail {

template <class Real>
std::vector<Real> x_update_t(const std::vector<Real>& s, const std::vector<Real>& z, double c,
                             const IncidenceData& inc) {
    std::vector<Real> x(inc.n);
    for (int i = 0; i < inc.n; ++i) {
        Real acc = s[i];
        for (int d : inc.held[i]) acc -= Real(inc.weight[d]) * z[d];
        x[i] = acc / Real(1.0 + c * inc.degree[i]);
    }
    return x;
}

template <class Real>
std::vector<Real> z_update_t(const std::vector<Real>& z, const std::vector<Real>& x, double c,
                             double theta, const IncidenceData& inc) {
    std::vector<Real> out(z.size());
    for (int d = 0; d < 2 * inc.m; ++d) {
        int sd = inc.swapped(d);  // z'_d is "z_{j|i}" with (i|j) = sd
        Real inner = z[sd] + Real(2.0 * c) * Real(inc.weight[sd]) * x[inc.holder[sd]];
        out[d] = Real(theta) * z[d] + Real(1.0 - theta) * inner;
    }
    return out;
}

}  // namespace dacs::detail
