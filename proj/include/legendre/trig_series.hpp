// trig_series.hpp
//
// Bulk evaluation of a sine/cosine polynomial on the uniform grid
// j/G, j = 0..G-1: computes S_j = sum_{n=1}^{N} c_n e^(2 pi i n j / G)
// for real coefficients c_n with N < G, in O(G log G).

#ifndef LEGENDRE_TRIG_SERIES_HPP
#define LEGENDRE_TRIG_SERIES_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace legendre {

struct TrigGridValues {
  std::vector<double> re;  // Re S_j, j = 0..G-1
  std::vector<double> im;  // Im S_j
};

// coeff[n-1] holds c_n for n = 1..N; requires N <= G-1.
TrigGridValues trig_series_on_grid(std::span<const double> coeff,
                                   std::size_t grid_points);

}  // namespace legendre

#endif  // LEGENDRE_TRIG_SERIES_HPP
