#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dacs {

/// N joint samples with an X block of dim_x columns followed by a Y block
/// of dim_y columns, row-major.
struct SampleMatrix {
    int n = 0;
    int dim_x = 0;
    int dim_y = 0;
    std::vector<double> data;

    SampleMatrix() = default;
    SampleMatrix(int n_, int dx, int dy)
        : n(n_), dim_x(dx), dim_y(dy), data(static_cast<std::size_t>(n_) * (dx + dy), 0.0) {}

    int dim() const { return dim_x + dim_y; }
    double& at(int row, int col) { return data[static_cast<std::size_t>(row) * dim() + col]; }
    double at(int row, int col) const { return data[static_cast<std::size_t>(row) * dim() + col]; }
};

struct MiEstimate {
    double nats = 0.0;  ///< raw estimate; small negatives possible
    int k = 0;
    int n_samples = 0;
};

/// Kraskov-Stoegbauer-Grassberger estimator (algorithm 1) with max-norm
/// neighborhoods:  psi(k) + psi(N) - <psi(n_x + 1) + psi(n_y + 1)>.
/// Ties are broken with an infinitesimal seeded jitter (1e-10 x column
/// scale), so the result is deterministic given the samples. Throws on
/// degenerate input (all rows identical) or N <= k + 1.
MiEstimate ksg_mi(const SampleMatrix& samples, int k = 3, std::uint64_t jitter_seed = 0x9e77);

/// Kozachenko-Leonenko differential entropy in nats over all columns.
double knn_entropy(const SampleMatrix& samples, int k = 3, std::uint64_t jitter_seed = 0x9e77);

/// Plug-in discrete mutual information over empirical joint frequencies;
/// for variables living on atoms, where k-NN estimators are inconsistent.
double discrete_mi(const std::vector<std::vector<std::int64_t>>& x,
                   const std::vector<std::vector<std::int64_t>>& y);

/// 1 - exp(-2 I): maps nats onto [0,1], the squared correlation a bivariate
/// Gaussian with the same mutual information would have. Negative estimates
/// clip to 0.
double nmi(const MiEstimate& est);
double nmi(double nats);

/// Closed form -0.5 ln(1 - rho^2) for a bivariate Gaussian; calibration
/// oracle for the estimator. Throws for |rho| >= 1.
double gaussian_mi(double rho);

/// Standardizes each block (X and Y separately) by an invertible affine
/// map: center, then multiply by the inverse Cholesky factor of the block
/// covariance. Mutual information is invariant under such maps, but the
/// k-NN geometry improves enormously when raw coordinate scales differ by
/// orders of magnitude.
void whiten(SampleMatrix& samples, double ridge = 1e-12);

double digamma(double x);

/// One estimator invocation for the CSV log
/// "experiment,x_desc,y_desc,n_samples,k,mi_nats,nmi".
struct MiRecord {
    std::string experiment;
    std::string x_desc;
    std::string y_desc;
    int n_samples = 0;
    int k = 0;
    double mi_nats = 0.0;
    double nmi = 0.0;
};

void write_mi_csv(std::ostream& os, const std::vector<MiRecord>& records);

}  // namespace dacs
