#pragma once

#include <cmath>
#include <complex>
#include <span>

#include "parallel.hpp"

namespace tadpole::detail {

using cplx = std::complex<double>;

inline cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  return chunked_sum<cplx>(a.size(), [&](std::size_t lo, std::size_t hi) {
    cplx s{};
    for (std::size_t i = lo; i < hi; ++i) s += std::conj(a[i]) * b[i];
    return s;
  });
}

inline double norm(std::span<const cplx> a) {
  return std::sqrt(chunked_sum<double>(a.size(), [&](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += std::norm(a[i]);
    return s;
  }));
}

/// y += alpha * x
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  chunked_for(x.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) y[i] += alpha * x[i];
  });
}

inline void scale(cplx alpha, std::span<cplx> x) {
  chunked_for(x.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) x[i] *= alpha;
  });
}

}  // namespace tadpole::detail
