#include <cmath>

#include "recoil/oracle.hpp"

namespace recoil {

RateCheck ww_rate_check(std::span<const Mode> modes, const ModelParams& params) {
  RateCheck out;
  out.target = 0.5 * params.gamma;
  const double half = 0.5 * params.gamma;
  for (const auto& m : modes) {
    const double det = m.k - params.k0();
    out.rate += m.g * m.g * half / (det * det + half * half);
  }
  out.deficit = out.rate < 0.9 * out.target;
  return out;
}

RateCheck ww_rate_check(const ModeGrid& grid, const ModelParams& params) {
  RateCheck out = ww_rate_check(grid.modes(params), params);
  out.narrow_band = grid.k_max() - grid.k_min() < 20.0 * params.gamma * (1.0 - 1e-9);
  return out;
}

}  // namespace recoil
