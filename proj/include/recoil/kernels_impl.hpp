#pragma once

#include <vector>

namespace recoil::kernels {

template <class RowFn>
cplx periodic_double_sum(std::size_t n, RowFn&& row_term, Exec exec) {
  std::vector<cplx> row_sums(n);
  const auto body = [&](std::size_t i) {
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) s += row_term(i, j);
    row_sums[i] = s;
  };
  if (exec == Exec::parallel) {
    const long long rows = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < rows; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  cplx total{0.0, 0.0};
  for (const auto& s : row_sums) total += s;
  return total;
}

}  // namespace recoil::kernels
