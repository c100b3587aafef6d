#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "feduhd/cluster_model.h"

namespace feduhd {

enum class ChannelKind { kNoiseless, kPacketLoss, kGaussian };

enum class Direction { kUplink, kDownlink };

// Which links a lossy channel corrupts.
enum class LinkScope { kBoth, kUplinkOnly, kDownlinkOnly };

// Lossy link model applied to every transmitted cluster model.
//
//   noiseless    identity
//   packet_loss  each centroid element independently zeroed with prob. p
//   gaussian     each element += N(0, (sigma * s)^2), s being the population
//                standard deviation of all centroid elements in the
//                transmission
//
// Cluster ids and sizes always arrive intact.
class ChannelModel {
 public:
  static ChannelModel noiseless();
  // Throws std::invalid_argument unless 0 <= p <= 1.
  static ChannelModel packet_loss(double p, std::uint64_t seed,
                                  LinkScope scope = LinkScope::kBoth);
  // Throws std::invalid_argument if sigma is negative or not finite.
  static ChannelModel gaussian(double sigma, std::uint64_t seed,
                               LinkScope scope = LinkScope::kBoth);

  [[nodiscard]] ChannelKind kind() const { return kind_; }
  [[nodiscard]] double loss_rate() const { return loss_rate_; }
  [[nodiscard]] double sigma() const { return sigma_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] LinkScope scope() const { return scope_; }

  [[nodiscard]] bool corrupts(Direction direction) const;

  // e.g. "noiseless", "packet_loss(p=0.3)", "gaussian(sigma=0.5)".
  [[nodiscard]] std::string describe() const;

 private:
  ChannelModel() = default;

  ChannelKind kind_ = ChannelKind::kNoiseless;
  double loss_rate_ = 0.0;
  double sigma_ = 0.0;
  std::uint64_t seed_ = 0;
  LinkScope scope_ = LinkScope::kBoth;
};

// Sends a model through the channel. Randomness is a pure function of
// (channel seed, round, direction, endpoint), so clients can transmit
// concurrently and replays are exact. `endpoint` is the client id on both
// links.
[[nodiscard]] ClusterModel transmit(const ClusterModel& model,
                                    const ChannelModel& channel,
                                    Direction direction, std::uint64_t round,
                                    std::uint64_t endpoint = 0);

// Relative accuracy loss in percent: (base - perturbed) / base * 100.
// Throws std::invalid_argument if base_acc <= 0.
[[nodiscard]] double degradation(double base_acc, double perturbed_acc);

[[nodiscard]] std::string_view to_string(ChannelKind kind);
[[nodiscard]] std::string_view to_string(LinkScope scope);

}  // namespace feduhd
