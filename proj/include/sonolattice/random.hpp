#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace sono {

/// Seeded generator with explicit uniform/gaussian mappings, so identical
/// seeds give identical streams independent of standard-library distribution
/// internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586 * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

    Eigen::VectorXd uniform_vector(int n, double lo, double hi) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) {
            v(i) = uniform(lo, hi);
        }
        return v;
    }

    Eigen::VectorXd unit_vector(int n) {
        Eigen::VectorXd v(n);
        double norm = 0.0;
        do {
            for (int i = 0; i < n; ++i) {
                v(i) = gaussian();
            }
            norm = v.norm();
        } while (norm < 1e-8);
        return v / norm;
    }

    Eigen::VectorXcd complex_vector(int n, double lo, double hi) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) {
            const double re = uniform(lo, hi);
            const double im = uniform(lo, hi);
            v(i) = std::complex<double>(re, im);
        }
        return v;
    }

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace sono
