#include "feduhd/channel.h"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rng.h"

namespace feduhd {

ChannelModel ChannelModel::noiseless() { return ChannelModel(); }

ChannelModel ChannelModel::packet_loss(double p, std::uint64_t seed, LinkScope scope) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("packet_loss: loss rate must lie in [0, 1]");
  }
  ChannelModel c;
  c.kind_ = ChannelKind::kPacketLoss;
  c.loss_rate_ = p;
  c.seed_ = seed;
  c.scope_ = scope;
  return c;
}

ChannelModel ChannelModel::gaussian(double sigma, std::uint64_t seed, LinkScope scope) {
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw std::invalid_argument("gaussian: sigma must be finite and >= 0");
  }
  ChannelModel c;
  c.kind_ = ChannelKind::kGaussian;
  c.sigma_ = sigma;
  c.seed_ = seed;
  c.scope_ = scope;
  return c;
}

bool ChannelModel::corrupts(Direction direction) const {
  if (kind_ == ChannelKind::kNoiseless) return false;
  switch (scope_) {
    case LinkScope::kBoth:
      return true;
    case LinkScope::kUplinkOnly:
      return direction == Direction::kUplink;
    case LinkScope::kDownlinkOnly:
      return direction == Direction::kDownlink;
  }
  return true;
}

std::string ChannelModel::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (kind_ == ChannelKind::kPacketLoss) os << "(p=" << loss_rate_ << ")";
  if (kind_ == ChannelKind::kGaussian) os << "(sigma=" << sigma_ << ")";
  if (kind_ != ChannelKind::kNoiseless && scope_ != LinkScope::kBoth) {
    os << "@" << to_string(scope_);
  }
  return os.str();
}

namespace {

double transmitted_stddev(const ClusterModel& model) {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  for (const auto& [id, entry] : model) {
    for (double v : entry.centroid.values()) {
      sum += v;
      sum_sq += v * v;
      ++n;
    }
  }
  if (n == 0) return 0.0;
  const double mean = sum / static_cast<double>(n);
  const double var = sum_sq / static_cast<double>(n) - mean * mean;
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace

ClusterModel transmit(const ClusterModel& model, const ChannelModel& channel,
                      Direction direction, std::uint64_t round,
                      std::uint64_t endpoint) {
  if (!channel.corrupts(direction)) return model;

  ClusterModel out = model;
  auto engine = detail::make_engine({detail::kTagChannel, channel.seed(), round,
                                     static_cast<std::uint64_t>(direction), endpoint});
  if (channel.kind() == ChannelKind::kPacketLoss) {
    const double p = channel.loss_rate();
    if (p == 0.0) return out;
    std::bernoulli_distribution lost(p);
    for (auto& [id, entry] : out) {
      for (double& v : entry.centroid.mutable_values()) {
        if (lost(engine)) v = 0.0;
      }
    }
    return out;
  }

  const double scale = channel.sigma() * transmitted_stddev(model);
  if (scale == 0.0) return out;
  std::normal_distribution<double> noise(0.0, scale);
  for (auto& [id, entry] : out) {
    for (double& v : entry.centroid.mutable_values()) v += noise(engine);
  }
  return out;
}

double degradation(double base_acc, double perturbed_acc) {
  if (!(base_acc > 0.0)) {
    throw std::invalid_argument("degradation: base accuracy must be positive");
  }
  return (base_acc - perturbed_acc) / base_acc * 100.0;
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kNoiseless:
      return "noiseless";
    case ChannelKind::kPacketLoss:
      return "packet_loss";
    case ChannelKind::kGaussian:
      return "gaussian";
  }
  return "unknown";
}

std::string_view to_string(LinkScope scope) {
  switch (scope) {
    case LinkScope::kBoth:
      return "both";
    case LinkScope::kUplinkOnly:
      return "uplink";
    case LinkScope::kDownlinkOnly:
      return "downlink";
  }
  return "unknown";
}

}  // namespace feduhd
