// Copyright 2026 The fogsplit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FOGSPLIT_POWER_MODEL_HPP
#define FOGSPLIT_POWER_MODEL_HPP

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fogsplit/topology.hpp"

namespace fogsplit {

inline constexpr std::string_view kCatalogVersion = "iot-pon-surveillance/1";

enum class Sharing : std::uint8_t { Dedicated, Shared };

inline constexpr std::string_view to_string(Sharing s) {
  return s == Sharing::Dedicated ? "dedicated" : "shared";
}

class ProfileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CapacityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Power curve of one subsystem (network or processing) of a device.
/// Capacity is in Gbps for network subsystems and MIPS for processing.
struct SubsystemProfile {
  double max_w = 0.0;
  double idle_w = 0.0;
  double capacity = 1.0;
  double pue = 1.0;
  Sharing sharing = Sharing::Dedicated;
  // The capacity describes one unit of an unbounded pool (cloud servers);
  // loads beyond it are legal.
  bool pooled = false;
};

inline void validate(const SubsystemProfile& s, std::string_view name) {
  auto fail = [&](const std::string& what) {
    throw ProfileError("profile " + std::string(name) + ": " + what);
  };
  if (!std::isfinite(s.max_w) || !std::isfinite(s.idle_w) ||
      !std::isfinite(s.capacity) || !std::isfinite(s.pue)) {
    fail("non-finite value");
  }
  if (s.idle_w < 0.0) fail("idle power must be >= 0");
  if (s.idle_w > s.max_w) fail("idle power exceeds max power");
  if (s.capacity <= 0.0) fail("capacity must be > 0");
  if (s.pue < 1.0) fail("PUE must be >= 1");
  if (s.pooled && s.sharing != Sharing::Shared) fail("pooled subsystems must be shared");
}

struct DeviceProfile {
  NodeKind kind = NodeKind::IotDevice;
  std::optional<SubsystemProfile> network;
  std::optional<SubsystemProfile> processing;
};

/// Watts per unit load above idle: (max - idle) / capacity.
inline double proportional_slope(const SubsystemProfile& s) {
  if (s.capacity <= 0.0) throw ProfileError("proportional_slope: capacity must be > 0");
  return (s.max_w - s.idle_w) / s.capacity;
}

/// PUE-weighted incremental watts per unit load.
inline double marginal_cost(const SubsystemProfile& s) {
  return s.pue * proportional_slope(s);
}

/// PUE-weighted idle watts charged when a dedicated subsystem is active;
/// zero for shared subsystems.
inline double activation_cost(const SubsystemProfile& s) {
  return s.sharing == Sharing::Dedicated ? s.pue * s.idle_w : 0.0;
}

inline double subsystem_power(const SubsystemProfile& s, double load, bool active) {
  if (!(load >= 0.0)) throw std::invalid_argument("subsystem_power: negative load");
  if (!s.pooled && load > s.capacity * (1.0 + 1e-9) + 1e-12) {
    throw CapacityError("subsystem_power: load " + std::to_string(load) +
                        " exceeds capacity " + std::to_string(s.capacity));
  }
  const double slope = proportional_slope(s);
  if (s.sharing == Sharing::Shared) return s.pue * slope * load;
  if (!active) {
    if (load > 0.0) throw std::invalid_argument("subsystem_power: inactive subsystem with load");
    return 0.0;
  }
  return s.pue * (s.idle_w + slope * load);
}

/// Device catalog indexed by node kind.
class ProfileCatalog {
 public:
  /// Networking and processing parameters of the IoT/PON surveillance
  /// study. Shared devices carry no idle power.
  static ProfileCatalog defaults() {
    ProfileCatalog c;
    auto net = [](double max_w, double idle_w, double gbps, double pue, Sharing s) {
      return SubsystemProfile{max_w, idle_w, gbps, pue, s, false};
    };
    auto cpu = [](double max_w, double idle_w, double mips, double pue, Sharing s) {
      return SubsystemProfile{max_w, idle_w, mips, pue, s, false};
    };
    constexpr auto D = Sharing::Dedicated;
    constexpr auto S = Sharing::Shared;

    c.at(NodeKind::IotDevice).network = net(0.56, 0.34, 0.054, 1.0, D);
    c.at(NodeKind::IotDevice).processing = cpu(3.6, 0.33, 1000, 1.0, D);
    c.at(NodeKind::AccessFog).network = net(15, 9, 0.3, 1.0, D);
    c.at(NodeKind::AccessFog).processing = cpu(12.5, 2, 2400, 1.0, D);
    c.at(NodeKind::EdgeFog).network = net(48, 0, 2.4, 1.5, S);
    c.at(NodeKind::EdgeFog).processing = cpu(363, 112, 10800, 2.5, D);
    c.at(NodeKind::MetroSwitch).network = net(1766, 0, 256, 1.5, S);
    c.at(NodeKind::MetroRouter).network = net(4550, 0, 560, 1.5, S);
    c.at(NodeKind::CoreNode).network = net(1182, 0, 40, 1.5, S);
    c.at(NodeKind::CloudLanSwitch).network = net(1766, 0, 256, 1.5, S);
    c.at(NodeKind::CloudLanRouter).network = net(4550, 0, 560, 1.5, S);
    SubsystemProfile cloud = cpu(363, 112, 10800, 2.5, S);
    cloud.pooled = true;
    c.at(NodeKind::CloudServer).processing = cloud;
    return c;
  }

  const DeviceProfile& at(NodeKind kind) const { return profiles_[index_of(kind)]; }
  DeviceProfile& at(NodeKind kind) { return profiles_[index_of(kind)]; }
  const DeviceProfile& operator[](NodeKind kind) const { return at(kind); }

  /// Throws ProfileError naming the first invalid subsystem.
  void validate() const {
    for (std::size_t k = 0; k < kNodeKindCount; ++k) {
      const DeviceProfile& p = profiles_[k];
      const std::string name(to_string(p.kind));
      if (p.network) fogsplit::validate(*p.network, name + ".net");
      if (p.processing) fogsplit::validate(*p.processing, name + ".cpu");
      if (is_processing_capable(p.kind) && !p.processing) {
        throw ProfileError("profile " + name + ": processing subsystem required");
      }
    }
  }

 private:
  ProfileCatalog() {
    for (std::size_t k = 0; k < kNodeKindCount; ++k) {
      profiles_[k].kind = static_cast<NodeKind>(k);
    }
  }

  std::array<DeviceProfile, kNodeKindCount> profiles_;
};

/// Watts per Gbps of one stream between the EdgeFog and the cloud pool:
/// metro switch + router, the IP/WDM chain, cloud LAN switch + router.
inline double cloud_path_network_slope(const ProfileCatalog& catalog,
                                       std::size_t core_hop_count) {
  auto term = [&](NodeKind kind) {
    const auto& net = catalog[kind].network;
    return net ? marginal_cost(*net) : 0.0;
  };
  return term(NodeKind::MetroSwitch) + term(NodeKind::MetroRouter) +
         static_cast<double>(core_hop_count) * term(NodeKind::CoreNode) +
         term(NodeKind::CloudLanSwitch) + term(NodeKind::CloudLanRouter);
}

inline double cloud_path_network_slope(const Topology& topology,
                                       const ProfileCatalog& catalog) {
  return cloud_path_network_slope(catalog, topology.core_hop_count());
}

}  // namespace fogsplit

#endif  // FOGSPLIT_POWER_MODEL_HPP
