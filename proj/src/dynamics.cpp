#include "sonolattice/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace sono {

Eigen::VectorXd potential_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const TransducerVector& u, const Coefficients& coef,
                                   const WaveConfig& cfg) {
    if (x.size() != cfg.dimension) {
        throw DimensionMismatch("point dimension does not match configuration");
    }
    if (u.size() != 2 * cfg.dimension) {
        throw DimensionMismatch("transducer vector must have length 2*d");
    }
    const int d = cfg.dimension;
    const Eigen::VectorXd theta = cfg.K.transpose() * x;
    const Complex i_unit(0.0, 1.0);

    Complex p(0.0, 0.0);
    Eigen::VectorXcd grad_p = Eigen::VectorXcd::Zero(d);
    Eigen::MatrixXcd hess_p = Eigen::MatrixXcd::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const Complex e = std::polar(1.0, theta(j));
        const Complex pw = u(j) * e + u(d + j) * std::conj(e);  // per-wave pressure
        p += pw;
        grad_p += i_unit * (u(j) * e - u(d + j) * std::conj(e)) * cfg.K.col(j);
        hess_p -= pw * (cfg.K.col(j) * cfg.K.col(j).transpose());
    }
    const Eigen::VectorXcd term_a = std::conj(p) * grad_p;
    const Eigen::VectorXcd term_b = hess_p * grad_p.conjugate();
    return 2.0 * coef.a * term_a.real() - 2.0 * coef.b * term_b.real();
}

RelaxResult relax(const ParticleEnsemble& ensemble, const TransducerVector& u,
                  const Coefficients& coef, const WaveConfig& cfg) {
    if (!(ensemble.step > 0.0)) {
        throw InvalidParameter("relaxation step must be positive");
    }
    const SpectralDecomposition dec = origin_eigensystem(coef, cfg);
    const double spread = dec.eigenvalues.maxCoeff() - dec.eigenvalues.minCoeff();
    const double lipschitz = spread * cfg.wavenumber * cfg.wavenumber;
    if (lipschitz > 0.0 && ensemble.step >= 2.0 / lipschitz) {
        std::ostringstream msg;
        msg << "step " << ensemble.step << " exceeds the stability bound 2/L with L ~ "
            << lipschitz << " (eigenvalue spread times k^2)";
        throw InvalidParameter(msg.str());
    }

    const double cell_diameter = cfg.A.colwise().norm().sum();
    const double psi_slack =
        1e-12 * std::max(1.0, (std::abs(coef.a) + std::abs(coef.b) * cfg.wavenumber *
                                                      cfg.wavenumber) *
                                  u.squaredNorm());

    RelaxResult result;
    const int count = static_cast<int>(ensemble.positions.size());
    result.atomic_positions.resize(static_cast<std::size_t>(count));
    result.converged.assign(static_cast<std::size_t>(count), false);
    result.iterations.assign(static_cast<std::size_t>(count), 0);
    result.psi_values.assign(static_cast<std::size_t>(count), 0.0);
    result.grad_norms.assign(static_cast<std::size_t>(count), 0.0);

    for (int pid = 0; pid < count; ++pid) {
        Eigen::VectorXd x =
            cfg.A * wrap_unit(atomic_from_position(ensemble.positions[static_cast<std::size_t>(pid)], cfg));
        double psi = radiation_potential_direct(x, u, coef, cfg);
        double grad_norm = 0.0;
        int iter = 0;
        bool converged = false;

        if (ensemble.record_trajectory) {
            result.trajectory.push_back(
                TrajectorySample{0, pid, wrap_unit(atomic_from_position(x, cfg)), psi});
        }

        for (iter = 1; iter <= ensemble.max_iterations; ++iter) {
            const Eigen::VectorXd g = potential_gradient(x, u, coef, cfg);
            grad_norm = g.norm();
            if (!std::isfinite(grad_norm)) {
                throw Error("relaxation diverged: non-finite gradient");
            }
            if (grad_norm < ensemble.grad_threshold) {
                converged = true;
                break;
            }

            double step = ensemble.step;
            bool accepted = false;
            for (int half = 0; half < 60; ++half) {
                if (step * grad_norm > cell_diameter) {
                    step *= 0.5;  // never jump beyond one cell
                    continue;
                }
                const Eigen::VectorXd candidate = x - step * g;
                const double psi_new = radiation_potential_direct(candidate, u, coef, cfg);
                if (std::isfinite(psi_new) && psi_new <= psi + psi_slack) {
                    x = cfg.A * wrap_unit(atomic_from_position(candidate, cfg));
                    psi = psi_new;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                std::ostringstream msg;
                msg << "relaxation diverged for particle " << pid
                    << ": no descent step found after backtracking";
                throw Error(msg.str());
            }
            if (ensemble.record_trajectory) {
                result.trajectory.push_back(
                    TrajectorySample{iter, pid, wrap_unit(atomic_from_position(x, cfg)), psi});
            }
        }

        result.atomic_positions[static_cast<std::size_t>(pid)] =
            wrap_unit(atomic_from_position(x, cfg));
        result.converged[static_cast<std::size_t>(pid)] = converged;
        result.iterations[static_cast<std::size_t>(pid)] = std::min(iter, ensemble.max_iterations);
        result.psi_values[static_cast<std::size_t>(pid)] = psi;
        result.grad_norms[static_cast<std::size_t>(pid)] = grad_norm;
    }
    return result;
}

}  // namespace sono
