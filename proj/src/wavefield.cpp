#include "sonolattice/wavefield.hpp"

#include <cmath>

namespace sono {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double MediumParams::sound_speed() const {
    if (sound_speed_override) {
        return *sound_speed_override;
    }
    return std::sqrt(1.0 / (compressibility * mass_density));
}

Coefficients Coefficients::direct(double a, double b, double wavenumber) {
    if (!(wavenumber > 0.0)) {
        throw InvalidParameter("direct coefficients require wavenumber > 0");
    }
    Coefficients c;
    c.a = a;
    c.b = b;
    c.wavenumber = wavenumber;
    c.wavelength = kTwoPi / wavenumber;
    return c;
}

Coefficients derive_coefficients(const MediumParams& medium, const ParticleParams& particle,
                                 double frequency) {
    if (!(medium.compressibility > 0.0) || !(medium.mass_density > 0.0)) {
        throw InvalidParameter("medium requires kappa0 > 0 and rho0 > 0");
    }
    if (!(particle.compressibility >= 0.0) || !(particle.mass_density > 0.0)) {
        throw InvalidParameter("particle requires kappa_p >= 0 and rho_p > 0");
    }
    if (!(frequency > 0.0)) {
        throw InvalidParameter("frequency must be positive");
    }
    if (medium.sound_speed_override && !(*medium.sound_speed_override > 0.0)) {
        throw InvalidParameter("sound speed override must be positive");
    }

    const double kappa0 = medium.compressibility;
    const double rho0 = medium.mass_density;
    const double omega = kTwoPi * frequency;
    const double c = medium.sound_speed();

    Coefficients out;
    out.f1 = 1.0 - particle.compressibility / kappa0;
    out.f2 = 2.0 * (particle.mass_density - rho0) / (2.0 * particle.mass_density + rho0);
    out.a = *out.f1 * kappa0 / 4.0;
    out.b = *out.f2 * 3.0 / (8.0 * rho0 * omega * omega);
    out.omega = omega;
    out.frequency = frequency;
    out.wavenumber = omega / c;
    out.wavelength = c / frequency;
    return out;
}

WaveConfig wave_config_from_K(const Eigen::MatrixXd& K) {
    if (K.rows() != K.cols()) {
        throw DimensionMismatch("K must be square");
    }
    const int d = static_cast<int>(K.rows());
    if (d != 2 && d != 3) {
        throw InvalidParameter("supported dimensions are 2 and 3");
    }

    Eigen::VectorXd norms(d);
    for (int j = 0; j < d; ++j) {
        norms(j) = K.col(j).norm();
    }
    const double kmax = norms.maxCoeff();
    if (!(kmax > 0.0)) {
        throw DegenerateBasis("wavevectors are zero");
    }
    if (norms.maxCoeff() - norms.minCoeff() > kEqualNormTol * kmax) {
        throw UnequalWavenumbers("wavevector columns have unequal norms");
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(K.transpose());
    if (!lu.isInvertible()) {
        throw DegenerateBasis("wavevectors do not form a basis");
    }

    WaveConfig cfg;
    cfg.dimension = d;
    cfg.K = K;
    cfg.A = lu.solve(kTwoPi * Eigen::MatrixXd::Identity(d, d));
    cfg.wavenumber = norms.mean();
    cfg.wavelength = kTwoPi / cfg.wavenumber;
    return cfg;
}

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

}  // namespace

Complex pressure(const Eigen::Ref<const Eigen::VectorXd>& x, const TransducerVector& u,
                 const WaveConfig& cfg) {
    check_point(x, cfg);
    check_amplitudes(u, cfg);
    const int d = cfg.dimension;
    const Eigen::VectorXd phase = cfg.K.transpose() * x;
    Complex p(0.0, 0.0);
    for (int j = 0; j < d; ++j) {
        const Complex e = std::polar(1.0, phase(j));
        p += u(j) * e + u(d + j) * std::conj(e);
    }
    return p;
}

Eigen::VectorXcd pressure_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const TransducerVector& u, const WaveConfig& cfg) {
    check_point(x, cfg);
    check_amplitudes(u, cfg);
    const int d = cfg.dimension;
    const Eigen::VectorXd phase = cfg.K.transpose() * x;
    Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(d);
    const Complex i_unit(0.0, 1.0);
    for (int j = 0; j < d; ++j) {
        const Complex e = std::polar(1.0, phase(j));
        const Complex coeff = i_unit * (u(j) * e - u(d + j) * std::conj(e));
        grad += coeff * cfg.K.col(j);
    }
    return grad;
}

Eigen::VectorXd atomic_from_position(const Eigen::Ref<const Eigen::VectorXd>& x,
                                     const WaveConfig& cfg) {
    check_point(x, cfg);
    // alpha = A^{-1} x = K^T x / (2*pi), by the duality K^T A = 2*pi*I.
    return cfg.K.transpose() * x / kTwoPi;
}

Eigen::VectorXd position_from_atomic(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                                     const WaveConfig& cfg) {
    check_point(alpha, cfg);
    return cfg.A * alpha;
}

Eigen::VectorXd wrap_unit(const Eigen::Ref<const Eigen::VectorXd>& alpha) {
    Eigen::VectorXd out(alpha.size());
    for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        double v = alpha(i) - std::floor(alpha(i));
        if (v >= 1.0) {
            v -= 1.0;  // guards against floor rounding at the seam
        }
        out(i) = v;
    }
    return out;
}

Eigen::VectorXd wrap_centered(const Eigen::Ref<const Eigen::VectorXd>& delta) {
    Eigen::VectorXd out(delta.size());
    for (Eigen::Index i = 0; i < delta.size(); ++i) {
        double v = delta(i) - std::floor(delta(i) + 0.5);
        out(i) = v;
    }
    return out;
}

}  // namespace sono
