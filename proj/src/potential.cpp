#include "sonolattice/potential.hpp"

#include <cmath>

namespace sono {

namespace {

void check_point(const Eigen::Ref<const Eigen::VectorXd>& x, const WaveConfig& cfg) {
    if (x.size() != cfg.dimension) {
        throw DimensionMismatch("point dimension does not match configuration");
    }
}

void check_amplitudes(const TransducerVector& u, const WaveConfig& cfg) {
    if (u.size() != 2 * cfg.dimension) {
        throw DimensionMismatch("transducer vector must have length 2*d");
    }
}

Eigen::MatrixXcd weight_matrix(const Coefficients& coef, int d) {
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(d + 1, d + 1);
    W(0, 0) = coef.a;
    for (int j = 1; j <= d; ++j) {
        W(j, j) = -coef.b;
    }
    return W;
}

/// Phases exp(i [K, -K]^T x) as a complex 2d-vector.
Eigen::VectorXcd stacked_phases(const Eigen::Ref<const Eigen::VectorXd>& x, const WaveConfig& cfg) {
    const int d = cfg.dimension;
    const Eigen::VectorXd theta = cfg.K.transpose() * x;
    Eigen::VectorXcd out(2 * d);
    for (int j = 0; j < d; ++j) {
        const Complex e = std::polar(1.0, theta(j));
        out(j) = e;
        out(d + j) = std::conj(e);
    }
    return out;
}

}  // namespace

WaveMatrix build_wave_matrix(const Eigen::Ref<const Eigen::VectorXd>& x, const WaveConfig& cfg) {
    check_point(x, cfg);
    const int d = cfg.dimension;
    const Eigen::VectorXd theta = cfg.K.transpose() * x;
    const Complex i_unit(0.0, 1.0);

    Eigen::MatrixXcd M(d + 1, 2 * d);
    for (int j = 0; j < d; ++j) {
        const Complex e = std::polar(1.0, theta(j));
        M(0, j) = e;
        M(0, d + j) = std::conj(e);
        M.block(1, j, d, 1) = (i_unit * e) * cfg.K.col(j);
        M.block(1, d + j, d, 1) = (-i_unit * std::conj(e)) * cfg.K.col(j);
    }
    return WaveMatrix{std::move(M)};
}

Eigen::MatrixXd potential_matrix_origin(const Coefficients& coef, const WaveConfig& cfg) {
    // Entry (j, l) couples waves through k_j . k_l, so the stacked rows are
    // the wavevectors themselves: Q(0) = a 11^T - b S S^T with S = [K^T; -K^T].
    const int d = cfg.dimension;
    Eigen::MatrixXd stacked(2 * d, d);
    stacked.topRows(d) = cfg.K.transpose();
    stacked.bottomRows(d) = -cfg.K.transpose();
    return coef.a * Eigen::MatrixXd::Ones(2 * d, 2 * d) - coef.b * (stacked * stacked.transpose());
}

PotentialMatrix build_potential_matrix(const Eigen::Ref<const Eigen::VectorXd>& x,
                                       const Coefficients& coef, const WaveConfig& cfg) {
    check_point(x, cfg);
    if (x.isZero(0.0)) {
        return PotentialMatrix{potential_matrix_origin(coef, cfg).cast<Complex>(), true};
    }
    const WaveMatrix wm = build_wave_matrix(x, cfg);
    Eigen::MatrixXcd Q = wm.M.adjoint() * weight_matrix(coef, cfg.dimension) * wm.M;
    return PotentialMatrix{std::move(Q), false};
}

double radiation_potential(const Eigen::Ref<const Eigen::VectorXd>& x, const TransducerVector& u,
                           const Coefficients& coef, const WaveConfig& cfg) {
    check_amplitudes(u, cfg);
    const PotentialMatrix pm = build_potential_matrix(x, coef, cfg);
    const Complex value = u.dot(pm.Q * u);  // u.dot conjugates the left factor
    const double scale = 1.0 + u.squaredNorm();
    if (std::abs(value.imag()) > 1e-10 * scale) {
        throw Error("quadratic form returned a non-real value; assembly bug");
    }
    return value.real();
}

double radiation_potential_direct(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  const TransducerVector& u, const Coefficients& coef,
                                  const WaveConfig& cfg) {
    const Complex p = pressure(x, u, cfg);
    const Eigen::VectorXcd g = pressure_gradient(x, u, cfg);
    return coef.a * std::norm(p) - coef.b * g.squaredNorm();
}

TransducerVector phase_shift(const TransducerVector& u, const Eigen::Ref<const Eigen::VectorXd>& eps,
                             const WaveConfig& cfg) {
    check_point(eps, cfg);
    check_amplitudes(u, cfg);
    return stacked_phases(eps, cfg).cwiseProduct(u);
}

TransducerVector retarget(const TransducerVector& u, const Eigen::Ref<const Eigen::VectorXd>& x0,
                          const WaveConfig& cfg) {
    check_point(x0, cfg);
    check_amplitudes(u, cfg);
    return stacked_phases(x0, cfg).conjugate().cwiseProduct(u);
}

}  // namespace sono
