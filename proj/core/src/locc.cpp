#include "ecsim/locc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "ecsim/rng.hpp"

namespace ecsim::locc {
namespace {

constexpr std::array<const char*, 26> kCast = {
    "Alice", "Bob",    "Carol", "Dave",  "Erin",   "Frank", "Grace",
    "Heidi", "Ivan",   "Judy",  "Kevin", "Laura",  "Mike",  "Nina",
    "Oscar", "Peggy",  "Quinn", "Rose",  "Steve",  "Trent", "Ursula",
    "Victor", "Wendy", "Xavier", "Yvonne", "Zach"};

const char* kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Prepare: return "prepare";
    case EventKind::ParityCheck: return "parity_check";
    case EventKind::BitFlip: return "bit_flip";
    case EventKind::Projection: return "projection";
    case EventKind::Send: return "send";
    case EventKind::Deliver: return "deliver";
    case EventKind::PartyVerdict: return "verdict";
  }
  return "unknown";
}

const char* message_name(MessageKind kind) {
  switch (kind) {
    case MessageKind::ParityResult: return "parity_result";
    case MessageKind::AncillaProjection: return "ancilla_projection";
    case MessageKind::RoundVerdict: return "round_verdict";
    case MessageKind::Done: return "done";
  }
  return "unknown";
}

const char* parity_name(Parity parity) {
  return parity == Parity::Even ? "even" : "odd";
}

const char* branch_name(BasisBranch branch) {
  return branch == BasisBranch::V ? "v" : "v_perp";
}

const char* verdict_name(Verdict verdict) {
  return verdict == Verdict::Success ? "success" : "failure";
}

nlohmann::json coefficients_json(const SchmidtCoefficients& c) {
  return {{"a", c.a}, {"b", c.b}};
}

struct PendingDelivery {
  std::int64_t deliver_at;
  std::uint64_t order;
  ClassicalMessage msg;
};

}  // namespace

std::string party_name(int index) {
  if (index < 0) throw std::out_of_range("party index must be nonnegative");
  if (index < static_cast<int>(kCast.size())) {
    return kCast[static_cast<std::size_t>(index)];
  }
  return "Party" + std::to_string(index + 1);
}

LatencyModel LatencyModel::fixed(double delay_us) {
  return {Kind::Fixed, delay_us, 0.0};
}

LatencyModel LatencyModel::uniform(double low_us, double high_us) {
  return {Kind::Uniform, low_us, high_us};
}

LatencyModel LatencyModel::exponential(double mean_us) {
  return {Kind::Exponential, mean_us, 0.0};
}

void LatencyModel::validate() const {
  switch (kind) {
    case Kind::Fixed:
      if (!(first >= 0.0)) throw std::invalid_argument("latency must be >= 0");
      break;
    case Kind::Uniform:
      if (!(first >= 0.0) || !(second >= first)) {
        throw std::invalid_argument("uniform latency needs 0 <= low <= high");
      }
      break;
    case Kind::Exponential:
      if (!(first > 0.0)) {
        throw std::invalid_argument("exponential latency needs a positive mean");
      }
      break;
  }
}

std::int64_t LatencyModel::sample(RandomSource& rng) const {
  double value = first;
  switch (kind) {
    case Kind::Fixed:
      break;
    case Kind::Uniform:
      value = first + rng.next_double() * (second - first);
      break;
    case Kind::Exponential:
      value = -first * std::log1p(-rng.next_double());
      break;
  }
  return std::max<std::int64_t>(0, std::llround(value));
}

void ChannelConfig::validate() const {
  latency.validate();
  if (round_interval_us < 1) {
    throw std::invalid_argument("round interval must be at least 1 us");
  }
}

std::string Transcript::to_jsonl() const {
  std::string out;
  for (const Event& e : events) {
    nlohmann::json payload = nlohmann::json::object();
    if (e.round > 0) payload["round"] = e.round;
    if (e.parity) payload["parity"] = parity_name(*e.parity);
    if (e.outcome) payload["outcome"] = branch_name(*e.outcome);
    if (e.probability) payload["probability"] = *e.probability;
    if (e.verdict) payload["verdict"] = verdict_name(*e.verdict);
    if (e.message) payload["message"] = message_name(*e.message);
    if (e.peer) payload[e.kind == EventKind::Send ? "to" : "from"] =
        party_name(*e.peer);
    if (e.coefficients) payload["coefficients"] = coefficients_json(*e.coefficients);
    if (e.photons) payload["photons"] = *e.photons;
    const nlohmann::json line = {{"time", e.time_us},
                                 {"kind", kind_name(e.kind)},
                                 {"actor", party_name(e.actor)},
                                 {"payload", payload}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

bool Transcript::verdicts_agree() const {
  if (final_verdicts.size() != static_cast<std::size_t>(n_parties)) {
    return false;
  }
  for (const PartyVerdict& pv : final_verdicts) {
    if (pv.verdict != verdict || pv.round != rounds_used) return false;
  }
  return true;
}

Transcript run_protocol(const RunConfig& config) {
  if (config.n_parties < 2 || config.n_parties + 1 > kMaxPhotons) {
    throw std::invalid_argument("party count must lie in [2, " +
                                std::to_string(kMaxPhotons - 1) + "]");
  }
  if (config.max_rounds < 1) {
    throw std::invalid_argument("round count must be at least 1");
  }
  config.model.validate();
  config.channel.validate();

  CounterRng quantum_rng(config.seed, 0);
  CounterRng channel_rng(config.seed, 1);

  Transcript transcript;
  transcript.n_parties = config.n_parties;
  transcript.seed = config.seed;
  std::uint64_t seq = 0;
  auto log = [&](Event e) {
    e.seq = seq++;
    transcript.events.push_back(std::move(e));
  };

  // Min-heap on delivery time; ties resolved by the configured policy.
  const auto later = [order = config.channel.order](const PendingDelivery& x,
                                                    const PendingDelivery& y) {
    if (x.deliver_at != y.deliver_at) return x.deliver_at > y.deliver_at;
    return order == TieBreak::SeqAscending ? x.order > y.order
                                           : x.order < y.order;
  };
  std::priority_queue<PendingDelivery, std::vector<PendingDelivery>,
                      decltype(later)>
      pending(later);
  std::map<std::pair<int, int>, std::int64_t> link_clock;
  std::uint64_t send_counter = 0;

  // Latest verdict each remote party has heard, finalized on Done.
  std::vector<PartyVerdict> heard(
      static_cast<std::size_t>(config.n_parties));
  for (int p = 0; p < config.n_parties; ++p) {
    heard[static_cast<std::size_t>(p)].party = p;
  }

  auto broadcast = [&](ClassicalMessage base, std::int64_t now) {
    for (int receiver = 1; receiver < config.n_parties; ++receiver) {
      ClassicalMessage msg = base;
      msg.sender = 0;  // classical payloads only originate from Alice
      msg.receiver = receiver;
      Event e;
      e.time_us = now;
      e.kind = EventKind::Send;
      e.actor = 0;
      e.round = msg.round;
      e.parity = msg.parity;
      e.outcome = msg.projection;
      e.verdict = msg.verdict;
      e.peer = receiver;
      e.message = msg.kind;
      e.coefficients = msg.residual;
      log(std::move(e));

      std::int64_t at = now + config.channel.latency.sample(channel_rng);
      const auto key = std::pair{0, receiver};
      if (const auto it = link_clock.find(key);
          it != link_clock.end() && at <= it->second) {
        at = it->second + 1;  // per-link FIFO
      }
      link_clock[key] = at;
      pending.push({at, send_counter++, std::move(msg)});
    }
  };

  auto deliver_until = [&](std::int64_t horizon) {
    while (!pending.empty() && pending.top().deliver_at <= horizon) {
      const PendingDelivery top = pending.top();
      pending.pop();
      const ClassicalMessage& msg = top.msg;
      Event e;
      e.time_us = top.deliver_at;
      e.kind = EventKind::Deliver;
      e.actor = msg.receiver;
      e.round = msg.round;
      e.parity = msg.parity;
      e.outcome = msg.projection;
      e.verdict = msg.verdict;
      e.peer = msg.sender;
      e.message = msg.kind;
      e.coefficients = msg.residual;
      log(std::move(e));

      auto& view = heard[static_cast<std::size_t>(msg.receiver)];
      if (msg.kind == MessageKind::RoundVerdict && msg.round >= view.round) {
        view.verdict = *msg.verdict;
        view.round = msg.round;
        view.residual = msg.residual;
      } else if (msg.kind == MessageKind::Done) {
        Event v;
        v.time_us = top.deliver_at;
        v.kind = EventKind::PartyVerdict;
        v.actor = msg.receiver;
        v.round = view.round;
        v.verdict = view.verdict;
        v.coefficients = view.residual;
        log(std::move(v));
      }
    }
  };

  PureState state = ghz_state(config.n_parties, config.coefficients);
  SchmidtCoefficients coefficients = config.coefficients;
  {
    Event e;
    e.kind = EventKind::Prepare;
    e.actor = 0;
    e.photons = config.n_parties;
    e.coefficients = coefficients;
    log(std::move(e));
  }

  Verdict final_verdict = Verdict::Failure;
  int final_round = 0;
  std::optional<SchmidtCoefficients> residual;
  std::int64_t now = 0;

  for (int round = 1; round <= config.max_rounds; ++round) {
    now = round * config.channel.round_interval_us;
    deliver_until(now);

    RoundResult result =
        round_statevector(state, 0, coefficients, config.model, quantum_rng);
    {
      Event e;
      e.time_us = now;
      e.kind = EventKind::ParityCheck;
      e.actor = 0;
      e.round = round;
      e.parity = result.record.parity.parity;
      e.probability = result.record.parity_probability;
      log(std::move(e));
    }
    if (result.record.bit_flip_applied) {
      Event e;
      e.time_us = now;
      e.kind = EventKind::BitFlip;
      e.actor = 0;
      e.round = round;
      log(std::move(e));
    }
    {
      Event e;
      e.time_us = now;
      e.kind = EventKind::Projection;
      e.actor = 0;
      e.round = round;
      e.outcome = result.record.projection;
      e.probability = result.record.projection_probability;
      log(std::move(e));
    }

    if (config.verbose_messages) {
      ClassicalMessage parity_msg;
      parity_msg.kind = MessageKind::ParityResult;
      parity_msg.round = round;
      parity_msg.parity = result.record.parity.parity;
      broadcast(parity_msg, now);

      ClassicalMessage projection_msg;
      projection_msg.kind = MessageKind::AncillaProjection;
      projection_msg.round = round;
      projection_msg.projection = result.record.projection;
      broadcast(projection_msg, now);
    }

    ClassicalMessage verdict_msg;
    verdict_msg.kind = MessageKind::RoundVerdict;
    verdict_msg.round = round;
    verdict_msg.verdict = result.outcome.verdict;
    verdict_msg.residual = result.outcome.failure_coefficients;
    broadcast(verdict_msg, now);

    final_round = round;
    state = std::move(result.post_state);
    if (result.outcome.verdict == Verdict::Success) {
      final_verdict = Verdict::Success;
      residual.reset();
      break;
    }
    coefficients = *result.outcome.failure_coefficients;
    residual = coefficients;
  }

  ClassicalMessage done_msg;
  done_msg.kind = MessageKind::Done;
  done_msg.round = final_round;
  broadcast(done_msg, now);

  {
    Event e;
    e.time_us = now;
    e.kind = EventKind::PartyVerdict;
    e.actor = 0;
    e.round = final_round;
    e.verdict = final_verdict;
    e.coefficients = residual;
    log(std::move(e));
  }
  heard[0] = {0, final_verdict, final_round, residual};

  deliver_until(std::numeric_limits<std::int64_t>::max());

  transcript.final_verdicts = std::move(heard);
  transcript.verdict = final_verdict;
  transcript.rounds_used = final_round;
  transcript.residual = residual;
  return transcript;
}

Transcript run_protocol(int n_parties, SchmidtCoefficients coefficients,
                        int max_rounds, const ProbeModel& model,
                        const ChannelConfig& channel, std::uint64_t seed) {
  RunConfig config;
  config.n_parties = n_parties;
  config.coefficients = coefficients;
  config.max_rounds = max_rounds;
  config.model = model;
  config.channel = channel;
  config.seed = seed;
  return run_protocol(config);
}

}  // namespace ecsim::locc
