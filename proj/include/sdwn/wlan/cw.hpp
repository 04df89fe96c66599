#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sdwn/wlan/throughput.hpp"

namespace sdwn::wlan {

/// Minimum contention window per (user, AP). No entry means the user does not
/// contend at that AP (tau = 0).
class CwTable {
 public:
  CwTable(std::size_t users, std::size_t aps) : users_(users), aps_(aps), w_(users * aps) {}

  std::size_t users() const { return users_; }
  std::size_t aps() const { return aps_; }
  const std::optional<std::uint32_t>& at(std::size_t user, std::size_t ap) const {
    return w_[user * aps_ + ap];
  }
  std::optional<std::uint32_t>& at(std::size_t user, std::size_t ap) { return w_[user * aps_ + ap]; }

  bool operator==(const CwTable&) const = default;

 private:
  std::size_t users_;
  std::size_t aps_;
  std::vector<std::optional<std::uint32_t>> w_;
};

/// W = ceil(2 / tau - 1), at least 1, under the persistent-access approximation
/// tau = 2 / (W + 1). Rounding up keeps the realized attempt rate <= tau.
CwTable tau_to_cwmin(const TauMatrix& tau);

/// Attempt probability realized by a contention window.
inline double cwmin_to_tau(std::uint32_t w) { return 2.0 / (static_cast<double>(w) + 1.0); }

}  // namespace sdwn::wlan
