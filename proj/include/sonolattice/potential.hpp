#pragma once

#include <Eigen/Dense>

#include "sonolattice/wavefield.hpp"

namespace sono {

/// The (d+1) x 2d map from amplitudes to the field state [p; grad p].
struct WaveMatrix {
    Eigen::MatrixXcd M;
};

/// Hermitian matrix of the quadratic form psi(x;u) = u* Q(x) u. At the origin
/// Q is real: a*11^T - b*S*S^T with S the 2d x d stack [K^T; -K^T], whose
/// rows are the wavevectors and their negatives.
struct PotentialMatrix {
    Eigen::MatrixXcd Q;
    bool at_origin = false;
};

WaveMatrix build_wave_matrix(const Eigen::Ref<const Eigen::VectorXd>& x, const WaveConfig& cfg);

/// Real closed form of Q(0); feeds the real symmetric eigensolver.
Eigen::MatrixXd potential_matrix_origin(const Coefficients& coef, const WaveConfig& cfg);

PotentialMatrix build_potential_matrix(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       const Coefficients& coef, const WaveConfig& cfg);

/// psi evaluated as the quadratic form u* Q(x) u. Throws if the imaginary
/// residue exceeds 1e-10, which would indicate an assembly bug.
double radiation_potential(const Eigen::Ref<const Eigen::VectorXd>& x, const TransducerVector& u,
                           const Coefficients& coef, const WaveConfig& cfg);

/// psi evaluated directly as a*|p|^2 - b*|grad p|^2. Cheaper per point; kept
/// as an independent route from the quadratic form.
double radiation_potential_direct(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  const TransducerVector& u, const Coefficients& coef,
                                  const WaveConfig& cfg);

/// Amplitudes equivalent to shifting the evaluation point by eps:
/// psi(x0 + eps; u) = psi(x0; phase_shift(u, eps)). Norm preserving.
TransducerVector phase_shift(const TransducerVector& u, const Eigen::Ref<const Eigen::VectorXd>& eps,
                             const WaveConfig& cfg);

/// Inverse phase map: the returned amplitudes attain psi(0;u) at x0, i.e.
/// psi(x0; retarget(u, x0)) = psi(0; u).
TransducerVector retarget(const TransducerVector& u, const Eigen::Ref<const Eigen::VectorXd>& x0,
                          const WaveConfig& cfg);

}  // namespace sono
