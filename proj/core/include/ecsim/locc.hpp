#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecsim/ecp.hpp"
#include "ecsim/pcd.hpp"
#include "ecsim/state.hpp"

namespace ecsim::locc {

// Party 0 is always Alice; she performs every quantum operation. Remote
// parties hold their photons passively and learn verdicts over the classical
// channel.
std::string party_name(int index);

enum class MessageKind { ParityResult, AncillaProjection, RoundVerdict, Done };

struct ClassicalMessage {
  int sender = 0;
  int receiver = 0;
  MessageKind kind = MessageKind::RoundVerdict;
  int round = 0;
  std::optional<Parity> parity;
  std::optional<BasisBranch> projection;
  std::optional<Verdict> verdict;
  std::optional<SchmidtCoefficients> residual;
};

// Classical-channel latency in virtual microseconds.
struct LatencyModel {
  enum class Kind { Fixed, Uniform, Exponential };

  Kind kind = Kind::Fixed;
  double first = 100.0;  // fixed: delay; uniform: low; exponential: mean
  double second = 0.0;   // uniform: high

  static LatencyModel fixed(double delay_us);
  static LatencyModel uniform(double low_us, double high_us);
  static LatencyModel exponential(double mean_us);

  void validate() const;
  std::int64_t sample(RandomSource& rng) const;
};

// Queue order for deliveries that share a timestamp. Per-sender FIFO is
// enforced on every link regardless of the policy, so final verdicts cannot
// depend on it.
enum class TieBreak { SeqAscending, SeqDescending };

struct ChannelConfig {
  LatencyModel latency{};
  TieBreak order = TieBreak::SeqAscending;
  std::int64_t round_interval_us = 1000;

  void validate() const;
};

enum class EventKind {
  Prepare,
  ParityCheck,
  BitFlip,
  Projection,
  Send,
  Deliver,
  PartyVerdict
};

struct Event {
  std::int64_t time_us = 0;
  std::uint64_t seq = 0;
  EventKind kind{};
  int actor = 0;
  int round = 0;
  std::optional<Parity> parity;
  std::optional<BasisBranch> outcome;
  std::optional<double> probability;
  std::optional<Verdict> verdict;
  std::optional<int> peer;  // send: receiver; deliver: sender
  std::optional<MessageKind> message;
  std::optional<SchmidtCoefficients> coefficients;
  std::optional<int> photons;
};

struct PartyVerdict {
  int party = 0;
  Verdict verdict = Verdict::Failure;
  int round = 0;
  std::optional<SchmidtCoefficients> residual;
};

struct Transcript {
  int n_parties = 0;
  std::uint64_t seed = 0;
  std::vector<Event> events;
  std::vector<PartyVerdict> final_verdicts;  // indexed by party
  Verdict verdict = Verdict::Failure;
  int rounds_used = 0;
  std::optional<SchmidtCoefficients> residual;  // held after a final failure

  // One JSON object per line with fields {time, kind, actor, payload}.
  std::string to_jsonl() const;

  bool verdicts_agree() const;
};

struct RunConfig {
  int n_parties = 2;
  SchmidtCoefficients coefficients{1.0, 1.0};
  int max_rounds = 1;
  ProbeModel model{};
  ChannelConfig channel{};
  std::uint64_t seed = 0;
  // Also broadcast parity and projection notices each round. The verdict
  // broadcast alone is mandatory: remote parties take no corrective action.
  bool verbose_messages = false;
};

// Runs up to max_rounds concentration rounds on a shared N-photon state with
// a deterministic event loop over a virtual clock. Quantum draws and channel
// latencies come from independent substreams of the seed, so verdicts do not
// depend on the channel configuration.
Transcript run_protocol(const RunConfig& config);

Transcript run_protocol(int n_parties, SchmidtCoefficients coefficients,
                        int max_rounds, const ProbeModel& model,
                        const ChannelConfig& channel, std::uint64_t seed);

}  // namespace ecsim::locc
