#include "dacs/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace dacs {

AdversaryView collect_view(const Transcript& transcript, const CorruptModel& model,
                           ProtocolKind protocol, const NodeVector& s, int n) {
    AdversaryView view;
    view.protocol = protocol;
    view.n = n;
    view.corrupt = model.corrupt;
    std::sort(view.corrupt.begin(), view.corrupt.end());
    view.corrupt.erase(std::unique(view.corrupt.begin(), view.corrupt.end()), view.corrupt.end());
    if (static_cast<int>(view.corrupt.size()) >= n)
        throw std::invalid_argument("collect_view: corrupt set must leave an honest node");
    view.eavesdrop = model.eavesdrop;
    view.is_corrupt.assign(n, 0);
    for (int c : view.corrupt) {
        view.is_corrupt[c] = 1;
        view.known_inputs.emplace_back(c, s[c]);
    }
    for (const auto& msg : transcript.messages) {
        bool incident = view.is_corrupt[msg.from] || view.is_corrupt[msg.to];
        if (incident || (model.eavesdrop && !msg.secure)) view.observed.push_back(msg);
    }
    return view;
}

Trajectory predict_trajectory(const NodeVector& x1, const NodeVector& x2,
                              const IncidenceData& inc, const ConsensusConfig& cfg, int t_end) {
    if (t_end < 2) throw std::invalid_argument("predict_trajectory: t_end must be >= 2");
    Trajectory traj;
    traj.x.assign(t_end + 1, NodeVector(inc.n, 0.0));
    traj.x[1] = x1;
    traj.x[2] = x2;
    const double th = cfg.theta, c = cfg.c;
    for (int t = 3; t <= t_end; ++t) {
        const NodeVector& xa = traj.x[t - 2];  // x^(t+1) in the recursion
        const NodeVector& xb = traj.x[t - 1];  // x^(t+2)
        for (int i = 0; i < inc.n; ++i) {
            double acc = 0.0;
            for (int j : inc.neighbors[i]) acc += (1.0 - th) * xa[i] + th * xa[j] - xb[j];
            traj.x[t][i] = 2.0 * th * xb[i] - (2.0 * th - 1.0) * xa[i] -
                           2.0 * c * (1.0 - th) / (1.0 + c * inc.degree[i]) * acc;
        }
    }
    return traj;
}

namespace {

// visible x_j^(1): first broadcast from j (any receiver)
std::vector<long double> first_broadcast(const AdversaryView& view, int n) {
    std::vector<long double> x1(n, std::numeric_limits<long double>::quiet_NaN());
    for (const auto& m : view.observed)
        if (m.kind == MsgKind::x_broadcast && m.t == 1) x1[m.from] = m.value;
    return x1;
}

}  // namespace

std::vector<double> extract_component_sums(const AdversaryView& view, const IncidenceData& inc,
                                           const HonestPartition& partition,
                                           const SmpcConfig& cfg) {
    if (view.protocol != ProtocolKind::smpc)
        throw std::invalid_argument("extract_component_sums: needs an SMPC view");
    const std::uint64_t p = cfg.p;

    // s'_j from the bijection with the first iterate (z^(0) = 0)
    std::vector<long double> x1 = first_broadcast(view, inc.n);
    std::vector<std::uint64_t> masked(inc.n, 0);
    for (int j = 0; j < inc.n; ++j) {
        if (view.is_corrupt[j]) continue;
        if (std::isnan(static_cast<double>(x1[j])))
            throw std::runtime_error("extract_component_sums: x^(1) of an honest node not in view");
        long double v = (1.0L + cfg.consensus.c * inc.degree[j]) * x1[j];
        long long rounded = std::llroundl(v);
        if (rounded < 0) throw std::runtime_error("extract_component_sums: negative masked input");
        masked[j] = static_cast<std::uint64_t>(rounded) % p;
    }

    // visible shares on corrupt-incident channels
    std::map<std::pair<int, int>, std::uint64_t> share;  // (from,to) -> r_from^to
    for (const auto& m : view.observed)
        if (m.kind == MsgKind::share)
            share[{m.from, m.to}] = static_cast<std::uint64_t>(m.value);

    std::vector<double> sums;
    sums.reserve(partition.components.size());
    for (const auto& comp : partition.components) {
        std::uint64_t acc = 0;
        for (int j : comp) {
            acc = add_mod(acc, masked[j], p);
            // masks on honest-honest edges cancel inside the component;
            // corrupt-incident masks are known and removed explicitly
            for (int l : inc.neighbors[j]) {
                if (!partition.is_corrupt[l]) continue;
                auto recv = share.find({l, j});
                auto sent = share.find({j, l});
                if (recv == share.end() || sent == share.end())
                    throw std::runtime_error("extract_component_sums: corrupt-incident share missing");
                acc = sub_mod(acc, recv->second, p);
                acc = add_mod(acc, sent->second, p);
            }
        }
        sums.push_back(static_cast<double>(center_mod(acc, p)) / static_cast<double>(cfg.scale));
    }
    return sums;
}

double theorem3_coefficient(const IncidenceData& inc, const ConsensusConfig& cfg, int i, int k) {
    return (1.0 + cfg.c * inc.degree[i]) /
           ((1.0 - cfg.theta) * 2.0 * cfg.c * inc.edge_weight(i, k));
}

std::vector<std::pair<int, double>> reconstruct_noisy_secret(const AdversaryView& view,
                                                             const IncidenceData& inc,
                                                             const ConsensusConfig& cfg, int t) {
    if (view.protocol != ProtocolKind::adqsp)
        throw std::invalid_argument("reconstruct_noisy_secret: needs an ADQSP view");
    if (static_cast<int>(view.corrupt.size()) != view.n - 1)
        throw std::invalid_argument("reconstruct_noisy_secret: requires all-but-one corruption");
    if (t < 0) throw std::invalid_argument("reconstruct_noisy_secret: t must be >= 0");

    int target = -1;
    for (int i = 0; i < view.n; ++i)
        if (!view.is_corrupt[i]) target = i;

    // zhat series for both directions of every edge at the target: start
    // from the secure initial values and accumulate the public differences
    // through message index t (t+1 for the forward difference).
    const auto& nbrs = inc.neighbors[target];
    std::map<std::pair<int, int>, double> z0;          // (holder,other) -> z^(0)
    std::map<std::pair<int, int>, double> zhat_t;      // reconstruction at time t
    std::map<std::pair<int, int>, double> delta_next;  // transmitted difference t+1
    for (const auto& m : view.observed) {
        if (m.kind == MsgKind::z_init)
            z0[{m.from, m.to}] = static_cast<double>(m.value);  // sender's own variable
    }
    auto init_of = [&](int holder, int other) {
        auto it = z0.find({holder, other});
        if (it == z0.end())
            throw std::runtime_error("reconstruct_noisy_secret: z_init not visible");
        return it->second;
    };
    for (int k : nbrs) {
        zhat_t[{target, k}] = init_of(target, k);
        zhat_t[{k, target}] = init_of(k, target);
    }
    for (const auto& m : view.observed) {
        if (m.kind != MsgKind::delta_hat) continue;
        // delta from -> to updates z_{to|from}
        std::pair<int, int> key{m.to, m.from};
        if (m.to != target && m.from != target) continue;
        auto it = zhat_t.find(key);
        if (it == zhat_t.end()) continue;
        if (m.t <= t) it->second += static_cast<double>(m.value);
        if (m.t == t + 1) delta_next[key] = static_cast<double>(m.value);
    }

    double held_sum = 0.0;  // sum_k B_{i|k} zhat_{i|k}^(t), all neighbors corrupt
    for (int k : nbrs) held_sum += inc.edge_weight(target, k) * zhat_t[{target, k}];

    std::vector<std::pair<int, double>> out;
    out.reserve(nbrs.size());
    const double c = cfg.c, th = cfg.theta;
    const double di = 1.0 + c * inc.degree[target];
    for (int k : nbrs) {
        auto dn = delta_next.find({k, target});
        if (dn == delta_next.end())
            throw std::runtime_error("reconstruct_noisy_secret: missing difference at t+1");
        const double b = inc.edge_weight(target, k);
        double value = di * ((zhat_t[{k, target}] - zhat_t[{target, k}]) / (2.0 * c * b) +
                             dn->second / (2.0 * c * b * (1.0 - th))) +
                       held_sum;
        out.emplace_back(k, value);
    }
    return out;
}

SampleMatrix ideal_leakage_samples(const HonestPartition& partition, int i,
                                   const std::vector<NodeVector>& s_samples) {
    const std::vector<int>* comp = nullptr;
    for (const auto& c : partition.components)
        if (std::binary_search(c.begin(), c.end(), i)) comp = &c;
    if (!comp) throw std::invalid_argument("ideal_leakage_samples: node is not honest");

    SampleMatrix out(static_cast<int>(s_samples.size()), 1, 1);
    for (std::size_t r = 0; r < s_samples.size(); ++r) {
        double acc = 0.0;
        for (int j : *comp) acc += s_samples[r][j];
        out.at(static_cast<int>(r), 0) = s_samples[r][i];
        out.at(static_cast<int>(r), 1) = acc;
    }
    return out;
}

void write_attack_report_csv(std::ostream& os, const std::vector<AttackRecord>& records) {
    os << "trial,target_node,quantity,reconstructed,ground_truth,residual\n";
    os.precision(17);
    for (const auto& r : records)
        os << r.trial << ',' << r.target_node << ',' << r.quantity << ',' << r.reconstructed
           << ',' << r.ground_truth << ',' << r.residual << '\n';
}

}  // namespace dacs
