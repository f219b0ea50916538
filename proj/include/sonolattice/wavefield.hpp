#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "sonolattice/errors.hpp"

namespace sono {

using Complex = std::complex<double>;

/// Fluid properties. Sound speed defaults to sqrt(1/(kappa0*rho0)) and can be
/// overridden when a measured value is preferred.
struct MediumParams {
    double compressibility = 0.0;  // kappa0 [1/Pa]
    double mass_density = 0.0;     // rho0 [kg/m^3]
    std::optional<double> sound_speed_override;

    double sound_speed() const;
};

struct ParticleParams {
    double compressibility = 0.0;  // kappa_p [1/Pa]
    double mass_density = 0.0;     // rho_p [kg/m^3]
};

/// Contrast factors and the quadratic-form weights of the radiation potential
/// psi = a*|p|^2 - b*|grad p|^2. Either derived from physical parameters or
/// supplied directly (unitless path); the optional fields are filled only on
/// the physical path.
struct Coefficients {
    double a = 0.0;           // pressure weight
    double b = 0.0;           // velocity weight
    double wavenumber = 1.0;  // k
    double wavelength = 0.0;  // 2*pi/k

    std::optional<double> f1;         // 1 - kappa_p/kappa0
    std::optional<double> f2;         // 2(rho_p - rho0)/(2 rho_p + rho0)
    std::optional<double> omega;      // angular frequency
    std::optional<double> frequency;  // driving frequency

    static Coefficients direct(double a, double b, double wavenumber = 1.0);
};

Coefficients derive_coefficients(const MediumParams& medium, const ParticleParams& particle,
                                 double frequency);

/// Wavevector matrix K (columns are the d wavevectors, equal length k) and the
/// real-space lattice matrix A = 2*pi*K^{-T} it induces.
struct WaveConfig {
    int dimension = 0;
    Eigen::MatrixXd K;
    Eigen::MatrixXd A;
    double wavenumber = 0.0;  // common column norm of K
    double wavelength = 0.0;  // 2*pi/k
};

/// Relative tolerance for the equal-column-norm check on K.
inline constexpr double kEqualNormTol = 1e-9;

WaveConfig wave_config_from_K(const Eigen::MatrixXd& K);

/// Complex amplitudes [alpha_1..alpha_d, beta_1..beta_d] of the d
/// counter-propagating plane-wave pairs.
using TransducerVector = Eigen::VectorXcd;

Complex pressure(const Eigen::Ref<const Eigen::VectorXd>& x, const TransducerVector& u,
                 const WaveConfig& cfg);

Eigen::VectorXcd pressure_gradient(const Eigen::Ref<const Eigen::VectorXd>& x,
                                   const TransducerVector& u, const WaveConfig& cfg);

// Lattice-coordinate helpers. Atomic coordinates are alpha with x = A*alpha.
Eigen::VectorXd atomic_from_position(const Eigen::Ref<const Eigen::VectorXd>& x,
                                     const WaveConfig& cfg);
Eigen::VectorXd position_from_atomic(const Eigen::Ref<const Eigen::VectorXd>& alpha,
                                     const WaveConfig& cfg);
/// Reduce alpha componentwise into [0,1).
Eigen::VectorXd wrap_unit(const Eigen::Ref<const Eigen::VectorXd>& alpha);
/// Reduce a coordinate difference componentwise into [-1/2, 1/2).
Eigen::VectorXd wrap_centered(const Eigen::Ref<const Eigen::VectorXd>& delta);

}  // namespace sono
