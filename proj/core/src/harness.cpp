#include "dacs/harness.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <thread>

#include <json.hpp>

#include "dacs/adversary.hpp"

namespace dacs {

using json = nlohmann::json;
namespace fs = std::filesystem;

// Panel grids from the reference experiment setup.
static const std::vector<double> kThetaGrid = {0.0, 0.2, 0.5};
static const std::vector<double> kSigmaGrid = {10.0, 100.0, 1000.0};
static const std::vector<double> kDeltaMinGrid = {1e-3, 1e-2, 1e-1};
static const std::vector<double> kSigmaGridNmi = {1.0, 10.0, 100.0, 1000.0};
static const std::vector<double> kDpDeltaGrid = {1e-2, 1e-1};
// Slow enough that log-MSE stays above the double-precision floor through
// the whole slope-measurement window of the sigma_z sweep.
static constexpr double kConvergenceGamma = 0.95;

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

AdqspConfig ExperimentConfig::adqsp_config() const {
    AdqspConfig a;
    a.sigma_z2 = adqsp.sigma_z * adqsp.sigma_z;
    a.sched.delta0 = adqsp.delta0;
    a.sched.gamma = adqsp.gamma;
    a.sched.delta_min = adqsp.delta_min;
    a.sched.bits = adqsp.bits;
    a.consensus = consensus;
    return a;
}

ExperimentConfig ExperimentConfig::defaults() { return {}; }

void ExperimentConfig::validate() const {
    static const std::set<std::string> kinds = {"convergence", "smpc-compare", "dp-compare",
                                                "attack-verify"};
    if (!kinds.count(experiment)) throw ConfigError("experiment", "unknown experiment name");
    if (n < 2) throw ConfigError("n", "must be >= 2");
    if (trials < 1) throw ConfigError("trials", "must be >= 1");
    try {
        consensus.validate();
        adqsp_config().validate();
        smpc.validate();
        dp.validate();
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        auto colon = msg.find(':');
        throw ConfigError(msg.substr(0, colon), colon == std::string::npos ? msg : msg.substr(colon + 2));
    }
    if (corrupt.mode == CorruptSpec::Mode::count && (corrupt.value < 0 || corrupt.value >= n))
        throw ConfigError("corrupt.value", "count must be in [0, n)");
    if (corrupt.mode == CorruptSpec::Mode::explicit_set) {
        if (static_cast<int>(corrupt.nodes.size()) >= n)
            throw ConfigError("corrupt.nodes", "must leave at least one honest node");
        for (int v : corrupt.nodes)
            if (v < 0 || v >= n) throw ConfigError("corrupt.nodes", "node id out of range");
    }
}

namespace {

void reject_unknown(const json& j, const std::string& scope, const std::set<std::string>& known) {
    for (const auto& item : j.items())
        if (!known.count(item.key()))
            throw ConfigError(scope.empty() ? item.key() : scope + "." + item.key(), "unknown field");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("(document)", e.what());
    }
    ExperimentConfig cfg = defaults();
    reject_unknown(j, "", {"experiment", "n", "trials", "seed", "consensus", "adqsp", "smpc",
                           "dp", "corrupt"});
    cfg.experiment = j.value("experiment", cfg.experiment);
    cfg.n = j.value("n", cfg.n);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("consensus")) {
        const auto& c = j["consensus"];
        reject_unknown(c, "consensus", {"c", "theta", "t_max"});
        cfg.consensus.c = c.value("c", cfg.consensus.c);
        cfg.consensus.theta = c.value("theta", cfg.consensus.theta);
        cfg.consensus.t_max = c.value("t_max", cfg.consensus.t_max);
    }
    if (j.contains("adqsp")) {
        const auto& a = j["adqsp"];
        reject_unknown(a, "adqsp", {"sigma_z", "delta0", "gamma", "delta_min", "bits"});
        cfg.adqsp.sigma_z = a.value("sigma_z", cfg.adqsp.sigma_z);
        cfg.adqsp.delta0 = a.value("delta0", cfg.adqsp.delta0);
        cfg.adqsp.gamma = a.value("gamma", cfg.adqsp.gamma);
        cfg.adqsp.delta_min = a.value("delta_min", cfg.adqsp.delta_min);
        cfg.adqsp.bits = a.value("bits", cfg.adqsp.bits);
    }
    if (j.contains("smpc")) {
        const auto& s = j["smpc"];
        reject_unknown(s, "smpc", {"p", "scale"});
        cfg.smpc.p = s.value("p", cfg.smpc.p);
        cfg.smpc.scale = s.value("scale", cfg.smpc.scale);
    }
    if (j.contains("dp")) {
        const auto& d = j["dp"];
        reject_unknown(d, "dp", {"mechanism", "M", "epsilon", "u_r"});
        std::string mech = d.value("mechanism", std::string(cfg.dp.mechanism == DpConfig::Mechanism::laplace
                                                                ? "laplace"
                                                                : "uniform"));
        if (mech == "laplace")
            cfg.dp.mechanism = DpConfig::Mechanism::laplace;
        else if (mech == "uniform")
            cfg.dp.mechanism = DpConfig::Mechanism::uniform;
        else
            throw ConfigError("dp.mechanism", "must be \"laplace\" or \"uniform\"");
        cfg.dp.M = d.value("M", cfg.dp.M);
        cfg.dp.epsilon = d.value("epsilon", cfg.dp.epsilon);
        cfg.dp.u_r = d.value("u_r", cfg.dp.u_r);
    }
    if (j.contains("corrupt")) {
        const auto& c = j["corrupt"];
        reject_unknown(c, "corrupt", {"mode", "value", "nodes"});
        std::string mode = c.value("mode", std::string("count"));
        if (mode == "count")
            cfg.corrupt.mode = CorruptSpec::Mode::count;
        else if (mode == "explicit")
            cfg.corrupt.mode = CorruptSpec::Mode::explicit_set;
        else if (mode == "all-but-one")
            cfg.corrupt.mode = CorruptSpec::Mode::all_but_one;
        else
            throw ConfigError("corrupt.mode", "must be count, explicit or all-but-one");
        cfg.corrupt.value = c.value("value", cfg.corrupt.value);
        cfg.corrupt.nodes = c.value("nodes", cfg.corrupt.nodes);
    }
    cfg.smpc.consensus = cfg.consensus;
    cfg.dp.consensus = cfg.consensus;
    cfg.validate();
    return cfg;
}

void for_each_trial(int trials, const std::function<void(int)>& fn) {
    unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    if (workers == 1 || trials < 4) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        futures.push_back(std::async(std::launch::async, [&, w] {
            for (int t = static_cast<int>(w); t < trials; t += static_cast<int>(workers)) fn(t);
        }));
    for (auto& f : futures) f.get();
}

// ---------------------------------------------------------------------------
// shared experiment plumbing
// ---------------------------------------------------------------------------

namespace {

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

json config_echo(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = cfg.experiment;
    j["n"] = cfg.n;
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["consensus"] = {{"c", cfg.consensus.c}, {"theta", cfg.consensus.theta}, {"t_max", cfg.consensus.t_max}};
    j["adqsp"] = {{"sigma_z", cfg.adqsp.sigma_z}, {"delta0", cfg.adqsp.delta0},
                  {"gamma", cfg.adqsp.gamma},     {"delta_min", cfg.adqsp.delta_min},
                  {"bits", cfg.adqsp.bits}};
    j["smpc"] = {{"p", cfg.smpc.p}, {"scale", cfg.smpc.scale}};
    j["dp"] = {{"mechanism", cfg.dp.mechanism == DpConfig::Mechanism::laplace ? "laplace" : "uniform"},
               {"M", cfg.dp.M}, {"epsilon", cfg.dp.epsilon}, {"u_r", cfg.dp.u_r}};
    return j;
}

std::string write_manifest(const ExperimentConfig& cfg, const std::string& out_dir,
                           const json& extra) {
    json j;
    j["config"] = config_echo(cfg);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(fnv1a(j["config"].dump())));
    j["config_hash"] = hash;
    j["seed"] = cfg.seed;
    j["version"] = "0.1.0";
    j["notes"] = extra;
    fs::path path = fs::path(out_dir) / "manifest.json";
    std::ofstream os(path);
    os << j.dump(2) << '\n';
    return path.string();
}

std::ofstream open_csv(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / name);
    os.precision(12);
    return os;
}

NodeVector gaussian_data(int n, Rng& rng) {
    NodeVector s(n);
    for (double& v : s) v = rng.normal();
    return s;
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double a : v) acc += a;
    return acc / static_cast<double>(v.size());
}

// Honest pair {0,1} joined by an edge, every corrupt node adjacent to both.
Graph fig3_graph(int n) {
    std::vector<std::pair<int, int>> edges{{0, 1}};
    for (int c = 2; c < n; ++c) {
        edges.emplace_back(0, c);
        edges.emplace_back(1, c);
    }
    return make_graph(n, edges);
}

// Node 0 with a single neighbor, the rest a geometric graph.
Graph pendant_graph(int n, Rng& rng) {
    Graph inner = generate_geometric_graph(n - 1, geometric_radius(n - 1), rng);
    std::vector<std::pair<int, int>> edges{{0, 1}};
    for (auto [i, j] : inner.edges) edges.emplace_back(i + 1, j + 1);
    return make_graph(n, edges);
}

MiEstimate whitened_ksg(SampleMatrix samples, int k = 3) {
    whiten(samples);
    return ksg_mi(samples, k);
}

}  // namespace

// ---------------------------------------------------------------------------
// convergence experiment (sigma_z sweep and delta_min sweep)
// ---------------------------------------------------------------------------

std::vector<std::string> run_convergence(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    const int t_max = cfg.consensus.t_max;

    auto sweep = [&](double theta, const AdqspConfig& proto, std::uint64_t cell_tag,
                     std::vector<double>& mse_sum, std::int64_t& saturations) {
        std::vector<std::vector<double>> per_trial(cfg.trials);
        std::vector<std::int64_t> sats(cfg.trials, 0);
        for_each_trial(cfg.trials, [&](int trial) {
            Rng rng(mix_seed(trial_seed(cfg.seed, trial), cell_tag));
            Graph g = generate_geometric_graph(cfg.n, geometric_radius(cfg.n), rng);
            IncidenceData inc = incidence(g);
            NodeVector s = gaussian_data(cfg.n, rng);
            AdqspConfig a = proto;
            a.consensus.theta = theta;
            a.record_transcript = false;
            AdqspResult res = run_adqsp(s, inc, a, mix_seed(cfg.seed, cell_tag, trial));
            double target = mean(s);
            auto& curve = per_trial[trial];
            curve.resize(t_max);
            for (int t = 1; t <= t_max; ++t) curve[t - 1] = mse(res.traj.x[t], target);
            sats[trial] = res.saturations;
        });
        mse_sum.assign(t_max, 0.0);
        for (const auto& curve : per_trial)
            for (int t = 0; t < t_max; ++t) mse_sum[t] += curve[t];
        for (double& v : mse_sum) v /= cfg.trials;
        for (auto s2 : sats) saturations += s2;
    };

    std::vector<std::string> files;
    json sat_notes;

    {
        auto os = open_csv(out_dir, "fig1.csv");
        os << "theta,sigma_z,t,mse\n";
        std::uint64_t cell = 0;
        for (double theta : kThetaGrid)
            for (double sz : kSigmaGrid) {
                AdqspConfig a = cfg.adqsp_config();
                a.sigma_z2 = sz * sz;
                a.sched.delta0 = 0.0;  // heuristic
                a.sched.gamma = kConvergenceGamma;
                a.sched.delta_min = 0.0;
                std::vector<double> curve;
                std::int64_t sats = 0;
                sweep(theta, a, 0x100 + cell++, curve, sats);
                for (int t = 1; t <= t_max; ++t)
                    os << theta << ',' << sz << ',' << t << ',' << curve[t - 1] << '\n';
                sat_notes["fig1_saturations"].push_back(sats);
            }
        files.push_back("fig1.csv");
    }
    {
        auto os = open_csv(out_dir, "fig2.csv");
        os << "theta,delta_min,t,mse\n";
        std::uint64_t cell = 0;
        for (double theta : kThetaGrid)
            for (double dmin : kDeltaMinGrid) {
                AdqspConfig a = cfg.adqsp_config();
                a.sched.delta0 = 0.0;
                a.sched.delta_min = dmin;
                std::vector<double> curve;
                std::int64_t sats = 0;
                sweep(theta, a, 0x200 + cell++, curve, sats);
                for (int t = 1; t <= t_max; ++t)
                    os << theta << ',' << dmin << ',' << t << ',' << curve[t - 1] << '\n';
                sat_notes["fig2_saturations"].push_back(sats);
            }
        files.push_back("fig2.csv");
    }
    files.push_back(write_manifest(cfg, out_dir, sat_notes));
    return files;
}

// ---------------------------------------------------------------------------
// smpc-compare: leakage of the initialization observables vs sigma_z
// ---------------------------------------------------------------------------

std::vector<std::string> run_smpc_compare(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    if (cfg.n < 3) throw ConfigError("n", "smpc-compare needs n >= 3");
    const int N = cfg.trials;

    Graph g = fig3_graph(cfg.n);
    std::vector<int> corrupt;
    for (int c = 2; c < cfg.n; ++c) corrupt.push_back(c);
    HonestPartition part = honest_partition(g, corrupt);

    // common random numbers across the sigma_z grid
    Rng rng(mix_seed(cfg.seed, 0xf163ULL));
    std::vector<double> s0(N), s1(N), g1(N), g2(N);
    for (int r = 0; r < N; ++r) {
        s0[r] = rng.normal();
        s1[r] = rng.normal();
        g1[r] = rng.normal();
        g2[r] = rng.normal();
    }

    // redefined-ideal benchmark through the adversary module
    std::vector<NodeVector> s_rows(N, NodeVector(cfg.n, 0.0));
    for (int r = 0; r < N; ++r) {
        s_rows[r][0] = s0[r];
        s_rows[r][1] = s1[r];
    }
    MiEstimate smpc_est = whitened_ksg(ideal_leakage_samples(part, 0, s_rows));

    std::vector<MiRecord> records;
    auto os = open_csv(out_dir, "fig3.csv");
    os << "sigma_z,mi_adqsp,nmi_adqsp,mi_smpc,nmi_smpc\n";
    for (double sz : kSigmaGridNmi) {
        // observables on the honest-honest edge (0,1): masked inputs and the
        // difference of the two initializations; B_{0|1} = +1, B_{1|0} = -1
        SampleMatrix m(N, 1, 3);
        for (int r = 0; r < N; ++r) {
            double z01 = sz * g1[r], z10 = sz * g2[r];
            m.at(r, 0) = s0[r];
            m.at(r, 1) = s0[r] - z01;
            m.at(r, 2) = s1[r] + z10;
            m.at(r, 3) = z01 - z10;
        }
        MiEstimate est = whitened_ksg(std::move(m));
        os << sz << ',' << est.nats << ',' << nmi(est) << ',' << smpc_est.nats << ','
           << nmi(smpc_est) << '\n';
        records.push_back({"smpc-compare", "S_0", "init observables sigma_z=" + std::to_string(sz),
                           est.n_samples, est.k, est.nats, nmi(est)});
    }
    records.push_back({"smpc-compare", "S_0", "component sum", smpc_est.n_samples, smpc_est.k,
                       smpc_est.nats, nmi(smpc_est)});
    auto mios = open_csv(out_dir, "mi_estimates.csv");
    write_mi_csv(mios, records);

    json notes;
    notes["topology"] = "honest pair (0,1); every corrupt node adjacent to both";
    std::vector<std::string> files{"fig3.csv", "mi_estimates.csv"};
    files.push_back(write_manifest(cfg, out_dir, notes));
    return files;
}

// ---------------------------------------------------------------------------
// dp-compare: accuracy and leakage against local perturbation, u_r = delta_min
// ---------------------------------------------------------------------------

std::vector<std::string> run_dp_compare(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    if (cfg.n < 4) throw ConfigError("n", "dp-compare needs n >= 4");
    const int t_max = cfg.consensus.t_max;
    const int N = cfg.trials;

    // iteration grid for the leakage curves
    std::vector<int> t_grid;
    for (int t = 1; t + 2 <= t_max; t += std::max(1, t_max / 25)) t_grid.push_back(t);
    if (t_grid.back() != t_max - 2) t_grid.push_back(t_max - 2);

    auto os4 = open_csv(out_dir, "fig4.csv");
    os4 << "delta_min,t,mse_adqsp_net,mse_adqsp_node,mse_dp_net,e_dp_node\n";
    auto os5 = open_csv(out_dir, "fig5.csv");
    os5 << "delta_min,t,mi_adqsp,nmi_adqsp,mi_dp,nmi_dp\n";
    std::vector<MiRecord> records;

    for (double dmin : kDpDeltaGrid) {
        std::vector<std::vector<double>> adq_net(N), adq_node(N), dp_net(N);
        std::vector<double> dp_node(N), s0(N), r0(N);
        std::vector<std::vector<double>> noisy(N);  // s_0 + c_{0,k} n_{k|0}^(t+1) per grid point

        for_each_trial(N, [&](int trial) {
            Rng rng(mix_seed(trial_seed(cfg.seed, trial), 0xd9c0 + static_cast<int>(dmin * 1e4)));
            Graph g = pendant_graph(cfg.n, rng);
            IncidenceData inc = incidence(g);
            NodeVector s = gaussian_data(cfg.n, rng);
            double target = mean(s);
            s0[trial] = s[0];

            AdqspConfig a = cfg.adqsp_config();
            a.sched.delta_min = dmin;
            a.sched.delta0 = 0.0;
            a.record_transcript = false;
            AdqspResult res = run_adqsp(s, inc, a, mix_seed(cfg.seed, 0xada, trial));
            adq_net[trial].resize(t_max);
            adq_node[trial].resize(t_max);
            for (int t = 1; t <= t_max; ++t) {
                adq_net[trial][t - 1] = mse(res.traj.x[t], target);
                double d = res.traj.x[t][0] - target;
                adq_node[trial][t - 1] = d * d;
            }
            const int k = inc.neighbors[0][0];  // the single neighbor
            const double coeff = theorem3_coefficient(inc, a.consensus, 0, k);
            noisy[trial].resize(t_grid.size());
            for (std::size_t gi = 0; gi < t_grid.size(); ++gi)
                noisy[trial][gi] = s[0] + coeff * res.noise[t_grid[gi] + 1][inc.dir(k, 0)];

            DpConfig d = cfg.dp;
            d.mechanism = DpConfig::Mechanism::uniform;
            d.u_r = dmin;
            d.record_transcript = false;
            DpResult dres = run_dp(s, inc, d, mix_seed(cfg.seed, 0xd9, trial));
            dp_net[trial].resize(t_max);
            for (int t = 1; t <= t_max; ++t) dp_net[trial][t - 1] = mse(dres.traj.x[t], target);
            dp_node[trial] = dres.noises[0] * dres.noises[0];
            r0[trial] = dres.noises[0];
        });

        for (int t = 1; t <= t_max; ++t) {
            double an = 0, ad = 0, dn = 0;
            for (int trial = 0; trial < N; ++trial) {
                an += adq_net[trial][t - 1];
                ad += adq_node[trial][t - 1];
                dn += dp_net[trial][t - 1];
            }
            os4 << dmin << ',' << t << ',' << an / N << ',' << ad / N << ',' << dn / N << ','
                << mean(dp_node) << '\n';
        }

        SampleMatrix dp_samples(N, 1, 1);
        for (int r = 0; r < N; ++r) {
            dp_samples.at(r, 0) = s0[r];
            dp_samples.at(r, 1) = s0[r] + r0[r];
        }
        MiEstimate dp_est = whitened_ksg(std::move(dp_samples));

        for (std::size_t gi = 0; gi < t_grid.size(); ++gi) {
            SampleMatrix m(N, 1, 1);
            for (int r = 0; r < N; ++r) {
                m.at(r, 0) = s0[r];
                m.at(r, 1) = noisy[r][gi];
            }
            MiEstimate est = whitened_ksg(std::move(m));
            os5 << dmin << ',' << t_grid[gi] << ',' << est.nats << ',' << nmi(est) << ','
                << dp_est.nats << ',' << nmi(dp_est) << '\n';
            if (gi + 1 == t_grid.size())
                records.push_back({"dp-compare", "S_0",
                                   "noisy secret at convergence, delta_min=" + std::to_string(dmin),
                                   est.n_samples, est.k, est.nats, nmi(est)});
        }
        records.push_back({"dp-compare", "S_0", "S_0+R, u_r=" + std::to_string(dmin),
                           dp_est.n_samples, dp_est.k, dp_est.nats, nmi(dp_est)});
    }

    auto mios = open_csv(out_dir, "mi_estimates.csv");
    write_mi_csv(mios, records);
    json notes;
    notes["topology"] = "honest node 0 with degree 1 (all-but-one corrupt)";
    std::vector<std::string> files{"fig4.csv", "fig5.csv", "mi_estimates.csv"};
    files.push_back(write_manifest(cfg, out_dir, notes));
    return files;
}

// ---------------------------------------------------------------------------
// attack-verify: the reconstruction attacks against ground truth
// ---------------------------------------------------------------------------

bool run_attack_verify(const ExperimentConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    std::vector<AttackRecord> report;
    bool ok = true;
    auto check = [&](const std::string& name, bool pass, double worst) {
        std::cout << (pass ? "PASS" : "FAIL") << "  " << name << "  (worst residual " << worst
                  << ")\n";
        ok = ok && pass;
    };

    // component-sum recovery from SMPC transcripts, exact at fixed point
    {
        const int trials = std::min(cfg.trials, 100);
        double worst = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            Rng rng(trial_seed(cfg.seed, 0xa000 + trial));
            Graph g = generate_geometric_graph(cfg.n, geometric_radius(cfg.n), rng);
            IncidenceData inc = incidence(g);
            NodeVector s = gaussian_data(cfg.n, rng);
            int n_corrupt = rng.uniform_int(1, cfg.n - 1);
            std::vector<int> all(cfg.n);
            for (int i = 0; i < cfg.n; ++i) all[i] = i;
            for (int i = 0; i < n_corrupt; ++i)
                std::swap(all[i], all[rng.uniform_int(i, cfg.n - 1)]);
            std::vector<int> corrupt(all.begin(), all.begin() + n_corrupt);
            HonestPartition part = honest_partition(g, corrupt);

            SmpcConfig sc = cfg.smpc;
            sc.consensus = cfg.consensus;
            SmpcResult res = smpc_mask_and_average(s, inc, sc, trial_seed(cfg.seed, 0xb000 + trial));
            AdversaryView view = collect_view(res.transcript, {corrupt, true}, ProtocolKind::smpc,
                                              s, cfg.n);
            std::vector<double> got = extract_component_sums(view, inc, part, sc);

            for (std::size_t k = 0; k < part.components.size(); ++k) {
                long long fixed = 0;
                for (int j : part.components[k])
                    fixed += std::llround(s[j] * static_cast<double>(sc.scale));
                double want = static_cast<double>(fixed) / static_cast<double>(sc.scale);
                double resid = std::fabs(got[k] - want);
                worst = std::max(worst, resid);
                report.push_back({trial, part.components[k][0], "component_sum", got[k], want, resid});
            }
        }
        check("theorem1-component-sums", worst == 0.0, worst);
    }

    // trajectory prediction from two iterates
    {
        double worst = 0.0;
        for (double theta : kThetaGrid)
            for (int trial = 0; trial < 20; ++trial) {
                Rng rng(trial_seed(cfg.seed, 0xc00 + trial));
                Graph g = generate_geometric_graph(10, geometric_radius(10), rng);
                IncidenceData inc = incidence(g);
                NodeVector s = gaussian_data(10, rng);
                ConsensusConfig cc{cfg.consensus.c, theta, 50};
                Trajectory truth = run_plain(s, cc, inc, EdgeField(2 * inc.m, 0.0));
                Trajectory pred = predict_trajectory(truth.x[1], truth.x[2], inc, cc, 50);
                for (int t = 3; t <= 50; ++t)
                    for (int i = 0; i < 10; ++i)
                        worst = std::max(worst, std::fabs(pred.x[t][i] - truth.x[t][i]));
            }
        check("eq24-recursion", worst < 1e-8, worst);
    }

    // noisy-secret reconstruction, identity and total leakage
    {
        double worst_identity = 0.0, worst_total = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            Rng rng(trial_seed(cfg.seed, 0xd00 + trial));
            Graph g = pendant_graph(cfg.n, rng);
            IncidenceData inc = incidence(g);
            NodeVector s = gaussian_data(cfg.n, rng);
            std::vector<int> corrupt;
            for (int i = 1; i < cfg.n; ++i) corrupt.push_back(i);

            for (double dmin : {0.1, 0.0}) {
                AdqspConfig a = cfg.adqsp_config();
                a.sched.delta_min = dmin;
                a.sched.delta0 = 0.0;
                AdqspResult res = run_adqsp(s, inc, a, trial_seed(cfg.seed, 0xe00 + trial));
                AdversaryView view = collect_view(res.transcript, {corrupt, true},
                                                  ProtocolKind::adqsp, s, cfg.n);
                for (int t = 1; t + 2 <= a.consensus.t_max; t += 7) {
                    auto recon = reconstruct_noisy_secret(view, inc, a.consensus, t);
                    for (auto [k, value] : recon) {
                        double noise_term = theorem3_coefficient(inc, a.consensus, 0, k) *
                                            res.noise[t + 1][inc.dir(k, 0)];
                        double resid = std::fabs((value - s[0]) - noise_term);
                        worst_identity = std::max(worst_identity, resid);
                    }
                }
                if (dmin == 0.0) {
                    int t = a.consensus.t_max - 2;
                    auto recon = reconstruct_noisy_secret(view, inc, a.consensus, t);
                    for (auto [k, value] : recon) {
                        double resid = std::fabs(value - s[0]);
                        worst_total = std::max(worst_total, resid);
                        report.push_back({trial, 0, "noisy_secret", value, s[0], resid});
                    }
                }
            }
        }
        check("theorem3-residual-identity", worst_identity < 1e-9, worst_identity);
        check("theorem3-total-leakage", worst_total < 1e-6, worst_total);
    }

    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / "attack_report.csv");
    write_attack_report_csv(os, report);
    write_manifest(cfg, out_dir, json{{"all_checks_passed", ok}});
    return ok;
}

}  // namespace dacs
