#include "sdwn/wlan/cw.hpp"

#include <algorithm>
#include <cmath>

namespace sdwn::wlan {

CwTable tau_to_cwmin(const TauMatrix& tau) {
  tau.validate();
  CwTable out(tau.users(), tau.aps());
  for (std::size_t i = 0; i < tau.users(); ++i) {
    for (std::size_t a = 0; a < tau.aps(); ++a) {
      const double t = tau(i, a);
      if (t == 0.0) continue;
      // The slack absorbs representation error, e.g. 2 / 0.4 - 1 landing a hair above 4.
      const double raw = std::ceil(2.0 / t - 1.0 - 1e-9);
      out.at(i, a) = static_cast<std::uint32_t>(std::max(1.0, raw));
    }
  }
  return out;
}

}  // namespace sdwn::wlan
