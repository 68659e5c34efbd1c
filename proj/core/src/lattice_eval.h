#ifndef STSIM_LATTICE_EVAL_H
#define STSIM_LATTICE_EVAL_H

#include <cmath>
#include <vector>

namespace stsim::detail {

// Accumulates amp * cos(base + sum_d i_d * ang[d]) over a spatial lattice,
// first axis fastest, into out[prod(counts)]. The innermost axis uses a
// complex rotation recurrence; outer axes recompute the angle exactly so
// rounding does not accumulate across rows.
inline void accumulate_cosine_lattice(const std::vector<int>& counts,
                                      const std::vector<double>& ang,
                                      double base, double amp, double* out) {
  const int k = static_cast<int>(counts.size());
  const double c0 = std::cos(ang[0]);
  const double s0 = std::sin(ang[0]);
  const int n0 = counts[0];

  std::vector<int> idx(k, 0);
  double* o = out;
  for (;;) {
    double row_base = base;
    for (int d = 1; d < k; ++d) row_base += idx[d] * ang[d];
    double zr = std::cos(row_base);
    double zi = std::sin(row_base);
    for (int i = 0; i < n0; ++i) {
      o[i] += amp * zr;
      const double nr = zr * c0 - zi * s0;
      zi = zi * c0 + zr * s0;
      zr = nr;
    }
    o += n0;
    int d = 1;
    while (d < k && ++idx[d] == counts[d]) idx[d++] = 0;
    if (d == k) break;
  }
}

} // namespace stsim::detail

#endif
