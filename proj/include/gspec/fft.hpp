#pragma once

#include <vector>

#include "gspec/types.hpp"

namespace gspec {

/// In-place DFT, sign = -1 forward (e^{-2pi i kn/N}), +1 inverse (unnormalized).
void fft(std::vector<cdouble>& data, int sign);

std::vector<cdouble> fft_copy(const std::vector<cdouble>& data, int sign);

/// In-place DFT of a raw buffer of length n.
void fft_span(cdouble* data, int n, int sign);

/// Signed DFT bin frequency index: k for k < N/2, k - N otherwise.
inline int signed_bin(int k, int N) { return k < N - N / 2 ? k : k - N; }

}  // namespace gspec
