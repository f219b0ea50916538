#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sonolattice/sampler.hpp"

namespace sono {

/// Analytic gradient of the radiation potential,
/// grad psi = 2a Re(conj(p) grad p) - 2b Re(H conj(grad p)) with H the
/// pressure Hessian.
Eigen::VectorXd potential_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const TransducerVector& u, const Coefficients& coef,
                                   const WaveConfig& cfg);

/// Overdamped relaxation inputs: starting positions and descent controls.
struct ParticleEnsemble {
    std::vector<Eigen::VectorXd> positions;  // cartesian starts
    double step = 0.05;                      // eta
    int max_iterations = 5000;
    double grad_threshold = 1e-8;
    bool record_trajectory = false;
};

struct TrajectorySample {
    int iteration = 0;
    int particle = 0;
    Eigen::VectorXd atomic;
    double psi = 0.0;
};

struct RelaxResult {
    std::vector<Eigen::VectorXd> atomic_positions;  // wrapped into [0,1)^d
    std::vector<bool> converged;
    std::vector<int> iterations;
    std::vector<double> psi_values;
    std::vector<double> grad_norms;
    std::vector<TrajectorySample> trajectory;
};

/// Gradient descent x <- x - eta grad psi with backtracking (the step halves
/// until psi does not increase), positions wrapped into the primitive cell.
/// The base step must satisfy eta < 2/L with L estimated as the eigenvalue
/// spread of Q(0) times k^2.
RelaxResult relax(const ParticleEnsemble& ensemble, const TransducerVector& u,
                  const Coefficients& coef, const WaveConfig& cfg);

}  // namespace sono
