#pragma once

#include <random>
#include <thread>

#include <Eigen/Dense>

#include "gspec/types.hpp"

namespace gspec::testing {

inline GridSpec small_grid() { return GridSpec(256, 1.0 / 16.0, -8.0); }
inline GridSpec big_grid() { return GridSpec(1024, 1.0 / 32.0, -16.0); }

inline Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = cdouble(nd(rng), nd(rng));
    return (M + M.adjoint()) / 2.0;
}

inline void use_all_cores() {
    const unsigned n = std::thread::hardware_concurrency();
    if (n > 1) set_max_threads(static_cast<int>(n));
}

}  // namespace gspec::testing
