#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "sonolattice/bravais.hpp"
#include "sonolattice/jsonio.hpp"
#include "sonolattice/spectral.hpp"

namespace sono {

struct RelaxConfig {
    int particles = 100;
    double step = 0.05;
    int max_iterations = 5000;
    double grad_threshold = 1e-6;
    bool trajectory = false;
};

/// Parsed pipeline configuration. Exactly one wave source (explicit K rows,
/// a bravais design request, or a wave.json file), one coefficient path
/// (direct a/b or physical medium+particle+frequency) and one amplitude
/// source.
struct RunConfig {
    int dimension = 0;
    Json wave;
    Json coefficients;
    Json amplitude;
    std::optional<double> wavenumber;
    std::optional<int> resolution;
    std::uint64_t seed = 0;
    std::filesystem::path output = "out";
    std::optional<std::filesystem::path> predictions_file;
    RelaxConfig relax;
    std::filesystem::path base_dir = ".";

    static RunConfig from_file(const std::filesystem::path& path);
    static RunConfig from_json(const Json& j, const std::filesystem::path& base_dir);

    bool coefficients_physical() const;
    Coefficients coefficients_value() const;

    /// Wavenumber used when designing from a Bravais class: the explicit
    /// config value, else the physically derived one, else 1.
    double design_wavenumber(const Coefficients& coef) const;

    /// Resolve the wave source into a WaveConfig; when the source is a
    /// bravais request the returned entry metadata is also exposed.
    struct WaveResult {
        WaveConfig cfg;
        const BravaisEntry* entry = nullptr;  // null unless designed
        LatticeParams params;
    };
    WaveResult wave_value(const Coefficients& coef) const;

    int resolution_value() const;
};

struct AmplitudeChoice {
    TransducerVector u;  // as configured; explicit vectors are not normalized
    std::string source;  // "min-eigenvector" | "eigenspace-index" | "explicit"
    std::optional<int> group;
    double original_norm = 1.0;

    /// Normalized copy for classification; throws on a zero vector.
    TransducerVector unit_amplitude() const;
};

/// Resolve the configured amplitude source against a decomposition. Explicit
/// vectors are normalized (original norm recorded) and matched against the
/// eigenspaces; group stays empty when no eigenspace contains the vector.
AmplitudeChoice select_amplitude(const RunConfig& config, const SpectralDecomposition& dec);

}  // namespace sono
