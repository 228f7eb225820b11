#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "dacs/consensus.hpp"
#include "dacs/infotheory.hpp"
#include "dacs/protocols.hpp"
#include "dacs/transcript.hpp"

namespace dacs {

enum class ProtocolKind { adqsp, smpc, dp };

/// Passive corrupt set, optionally cooperating with an eavesdropper that
/// reads every non-secure channel.
struct CorruptModel {
    std::vector<int> corrupt;  ///< must leave at least one honest node
    bool eavesdrop = true;
};

/// Exactly what the adversary gets to see: the corrupt nodes' own inputs
/// plus the filtered message set. Attacks consume only this type.
struct AdversaryView {
    ProtocolKind protocol = ProtocolKind::adqsp;
    int n = 0;
    std::vector<int> corrupt;                         // sorted
    std::vector<char> is_corrupt;                     // size n
    bool eavesdrop = false;
    std::vector<std::pair<int, double>> known_inputs; // (corrupt node, s_j)
    std::vector<Message> observed;
};

/// Filters a transcript: messages on corrupt-incident channels are always
/// visible; honest-honest messages are visible iff non-secure and the
/// eavesdropper is active. s supplies the corrupt nodes' own inputs.
AdversaryView collect_view(const Transcript& transcript, const CorruptModel& model,
                           ProtocolKind protocol, const NodeVector& s, int n);

/// Replays the x-recursion that eliminates the auxiliary variable:
/// from x^(1) and x^(2) of an unquantized consensus run, every later
/// iterate follows. Returns a trajectory whose entries 1..t_end are filled.
Trajectory predict_trajectory(const NodeVector& x1, const NodeVector& x2,
                              const IncidenceData& inc, const ConsensusConfig& cfg, int t_end);

/// SMPC attack: recovers the masked inputs s'_j from the first broadcast
/// x_j^(1) = s'_j / (1 + c d_j), cancels the visible corrupt-incident
/// shares, and returns the per-honest-component sums of the private data,
/// exact at the fixed-point resolution.
std::vector<double> extract_component_sums(const AdversaryView& view, const IncidenceData& inc,
                                           const HonestPartition& partition, const SmpcConfig& cfg);

/// ADQSP attack for the all-but-one corrupt setting: for each neighbor k of
/// the honest node i, combines the reconstructed zhat series on the
/// corrupt-incident edges with the next transmitted difference to obtain
///   s_i + c_{i,k} n_{k|i}^(t+1),  c_{i,k} = (1 + c d_i) / ((1-theta) 2c B_{i|k}).
/// Requires t in [0, t_max-2]; throws if the honest node has an honest
/// neighbor or a needed message is missing.
std::vector<std::pair<int, double>> reconstruct_noisy_secret(const AdversaryView& view,
                                                             const IncidenceData& inc,
                                                             const ConsensusConfig& cfg, int t);

double theorem3_coefficient(const IncidenceData& inc, const ConsensusConfig& cfg, int i, int k);

/// Paired Monte Carlo samples (S_i, sum over the component of i) for
/// estimating the redefined-ideal leakage bound. s_samples holds one full
/// s-vector per row.
SampleMatrix ideal_leakage_samples(const HonestPartition& partition, int i,
                                   const std::vector<NodeVector>& s_samples);

/// One row of an attack-accuracy report; CSV export below.
struct AttackRecord {
    int trial = 0;
    int target_node = 0;
    std::string quantity;
    double reconstructed = 0.0;
    double ground_truth = 0.0;
    double residual = 0.0;
};

void write_attack_report_csv(std::ostream& os, const std::vector<AttackRecord>& records);

}  // namespace dacs
