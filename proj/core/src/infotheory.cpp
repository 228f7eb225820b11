#include "dacs/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "dacs/rng.hpp"

namespace dacs {

double digamma(double x) {
    // recurrence up into the asymptotic regime, then the standard series
    double acc = 0.0;
    while (x < 6.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    return acc + std::log(x) - 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 / 252.0));
}

namespace {

// Per-column jitter proportional to the column scale, to break ties the way
// the usual k-NN MI implementations do.
SampleMatrix jittered(const SampleMatrix& in, std::uint64_t seed) {
    SampleMatrix out = in;
    Rng rng(mix_seed(seed, 0x11e7ULL));
    const int d = in.dim();
    for (int c = 0; c < d; ++c) {
        double scale = 0.0;
        for (int r = 0; r < in.n; ++r) scale = std::max(scale, std::fabs(in.at(r, c)));
        if (scale == 0.0) scale = 1.0;
        for (int r = 0; r < in.n; ++r) out.at(r, c) += 1e-10 * scale * rng.uniform01();
    }
    return out;
}

void check_samples(const SampleMatrix& s, int k) {
    if (s.n <= k + 1) throw std::invalid_argument("mi estimator: need N > k + 1 samples");
    // degenerate check: a duplicate of row 0 everywhere
    bool all_same = true;
    for (int r = 1; r < s.n && all_same; ++r)
        for (int c = 0; c < s.dim(); ++c)
            if (s.at(r, c) != s.at(0, c)) {
                all_same = false;
                break;
            }
    if (all_same) throw std::invalid_argument("mi estimator: degenerate samples (all identical)");
}

}  // namespace

MiEstimate ksg_mi(const SampleMatrix& samples, int k, std::uint64_t jitter_seed) {
    if (samples.dim_x < 1 || samples.dim_y < 1)
        throw std::invalid_argument("ksg_mi: both blocks must be non-empty");
    check_samples(samples, k);
    const SampleMatrix s = jittered(samples, jitter_seed);
    const int n = s.n, dx = s.dim_x, dy = s.dim_y, d = dx + dy;

    std::vector<double> distx(n), disty(n), joint(n);
    double psi_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* pi = &s.data[static_cast<std::size_t>(i) * d];
        for (int j = 0; j < n; ++j) {
            const double* pj = &s.data[static_cast<std::size_t>(j) * d];
            double mx = 0.0;
            for (int c = 0; c < dx; ++c) mx = std::max(mx, std::fabs(pi[c] - pj[c]));
            double my = 0.0;
            for (int c = dx; c < d; ++c) my = std::max(my, std::fabs(pi[c] - pj[c]));
            distx[j] = mx;
            disty[j] = my;
            joint[j] = std::max(mx, my);
        }
        joint[i] = std::numeric_limits<double>::infinity();  // exclude self
        std::vector<double> scratch = joint;
        std::nth_element(scratch.begin(), scratch.begin() + (k - 1), scratch.end());
        const double eps = scratch[k - 1];  // distance to k-th neighbor

        int nx = 0, ny = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (distx[j] < eps) ++nx;
            if (disty[j] < eps) ++ny;
        }
        psi_sum += digamma(nx + 1) + digamma(ny + 1);
    }
    MiEstimate est;
    est.k = k;
    est.n_samples = n;
    est.nats = digamma(k) + digamma(n) - psi_sum / n;
    return est;
}

double knn_entropy(const SampleMatrix& samples, int k, std::uint64_t jitter_seed) {
    check_samples(samples, k);
    const SampleMatrix s = jittered(samples, jitter_seed);
    const int n = s.n, d = s.dim();

    double log_eps_sum = 0.0;
    std::vector<double> dist(n);
    for (int i = 0; i < n; ++i) {
        const double* pi = &s.data[static_cast<std::size_t>(i) * d];
        for (int j = 0; j < n; ++j) {
            const double* pj = &s.data[static_cast<std::size_t>(j) * d];
            double m = 0.0;
            for (int c = 0; c < d; ++c) m = std::max(m, std::fabs(pi[c] - pj[c]));
            dist[j] = m;
        }
        dist[i] = std::numeric_limits<double>::infinity();
        std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
        if (dist[k - 1] <= 0.0) throw std::invalid_argument("knn_entropy: degenerate samples");
        log_eps_sum += std::log(dist[k - 1]);
    }
    // max-norm ball of radius eps has volume (2 eps)^d
    return digamma(n) - digamma(k) + d * std::log(2.0) +
           static_cast<double>(d) / n * log_eps_sum;
}

double discrete_mi(const std::vector<std::vector<std::int64_t>>& x,
                   const std::vector<std::vector<std::int64_t>>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("discrete_mi: need equally many x and y samples");
    const double n = static_cast<double>(x.size());
    std::map<std::vector<std::int64_t>, int> cx, cy;
    std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, int> cxy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        ++cx[x[i]];
        ++cy[y[i]];
        ++cxy[{x[i], y[i]}];
    }
    double mi = 0.0;
    for (const auto& [key, nxy] : cxy) {
        double pxy = nxy / n;
        double px = cx[key.first] / n;
        double py = cy[key.second] / n;
        mi += pxy * std::log(pxy / (px * py));
    }
    return mi;
}

double nmi(double nats) { return 1.0 - std::exp(-2.0 * std::max(nats, 0.0)); }
double nmi(const MiEstimate& est) { return nmi(est.nats); }

double gaussian_mi(double rho) {
    if (!(std::fabs(rho) < 1.0)) throw std::invalid_argument("gaussian_mi: need |rho| < 1");
    return -0.5 * std::log(1.0 - rho * rho);
}

void whiten(SampleMatrix& s, double ridge) {
    auto whiten_block = [&](int col0, int dim) {
        if (dim == 0) return;
        std::vector<double> mean(dim, 0.0);
        for (int r = 0; r < s.n; ++r)
            for (int c = 0; c < dim; ++c) mean[c] += s.at(r, col0 + c);
        for (double& m : mean) m /= s.n;

        std::vector<double> cov(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int r = 0; r < s.n; ++r)
            for (int a = 0; a < dim; ++a) {
                double da = s.at(r, col0 + a) - mean[a];
                for (int b = a; b < dim; ++b)
                    cov[a * dim + b] += da * (s.at(r, col0 + b) - mean[b]);
            }
        double trace = 0.0;
        for (int a = 0; a < dim; ++a) trace += cov[a * dim + a];
        for (int a = 0; a < dim; ++a)
            for (int b = a; b < dim; ++b) {
                cov[a * dim + b] /= std::max(1, s.n - 1);
                cov[b * dim + a] = cov[a * dim + b];
            }
        double lam = ridge * std::max(trace / std::max(1, (s.n - 1) * dim), 1e-300);
        for (int a = 0; a < dim; ++a) cov[a * dim + a] += lam;

        // Cholesky cov = L L^T
        std::vector<double> L(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b <= a; ++b) {
                double acc = cov[a * dim + b];
                for (int c = 0; c < b; ++c) acc -= L[a * dim + c] * L[b * dim + c];
                if (a == b) {
                    if (acc <= 0.0) throw std::runtime_error("whiten: covariance not positive definite");
                    L[a * dim + a] = std::sqrt(acc);
                } else {
                    L[a * dim + b] = acc / L[b * dim + b];
                }
            }

        // row <- L^{-1} (row - mean), forward substitution
        std::vector<double> v(dim);
        for (int r = 0; r < s.n; ++r) {
            for (int c = 0; c < dim; ++c) v[c] = s.at(r, col0 + c) - mean[c];
            for (int a = 0; a < dim; ++a) {
                double acc = v[a];
                for (int c = 0; c < a; ++c) acc -= L[a * dim + c] * v[c];
                v[a] = acc / L[a * dim + a];
            }
            for (int c = 0; c < dim; ++c) s.at(r, col0 + c) = v[c];
        }
    };
    whiten_block(0, s.dim_x);
    whiten_block(s.dim_x, s.dim_y);
}

void write_mi_csv(std::ostream& os, const std::vector<MiRecord>& records) {
    os << "experiment,x_desc,y_desc,n_samples,k,mi_nats,nmi\n";
    os.precision(12);
    for (const auto& r : records)
        os << r.experiment << ',' << r.x_desc << ',' << r.y_desc << ',' << r.n_samples << ','
           << r.k << ',' << r.mi_nats << ',' << r.nmi << '\n';
}

}  // namespace dacs
