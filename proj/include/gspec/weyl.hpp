#pragma once

#include <Eigen/Dense>

#include "gspec/types.hpp"

namespace gspec {

/// Dense matrix discretization of an operator on sampled signals:
/// (T f)(y_j) ~= sum_i entries(j,i) f(x_i); the quadrature weight dt is
/// already folded into the entries.
struct OperatorMatrix {
    Eigen::MatrixXcd entries;
    double dt;
    double hermitian_defect;

    OperatorMatrix(Eigen::MatrixXcd m, double dt_);

    int dim() const { return (int)entries.rows(); }
    double max_abs() const;
    bool hermitian_ok(double rel_tol = 1e-8) const;
};

struct SpectralEdges {
    double sigma_minus;
    double sigma_plus;
};

/// Weyl quantization of a symbol sampled on quantization_grid(grid).
OperatorMatrix weyl_quantize(const PhaseSpaceFunction& sigma, const GridSpec& grid);

/// Extreme eigenvalues. Dense Hermitian solve for dim <= dense_cutoff,
/// Lanczos with full reorthogonalization above.
SpectralEdges spectral_edges(const OperatorMatrix& T, int dense_cutoff = 2048);

/// Largest singular value via power iteration on T*T.
double operator_norm(const OperatorMatrix& T);
double operator_norm(const Eigen::MatrixXcd& T);

/// (sum_i z_i d_i F)(z) by FFT differentiation along both axes.
PhaseSpaceFunction radial_derivative(const PhaseSpaceFunction& F);

/// Rank-one operator f -> <f, g> h as a quadrature matrix (h g^* dt).
Eigen::MatrixXcd rank_one(const SampledSignal& h, const SampledSignal& g);

}  // namespace gspec
