#include "sonolattice/runconfig.hpp"

namespace sono {

namespace {

int count_keys(const Json& j, std::initializer_list<const char*> keys) {
    int n = 0;
    for (const char* key : keys) {
        if (j.contains(key)) {
            ++n;
        }
    }
    return n;
}

LatticeParams lattice_params_from_json(const Json& j) {
    LatticeParams params;
    if (j.contains("params")) {
        for (const auto& [key, value] : j.at("params").items()) {
            if (!value.is_number()) {
                throw InvalidParameter("lattice parameter '" + key + "' must be a number");
            }
            params.scalars[key] = value.get<double>();
        }
    }
    if (j.contains("vectors")) {
        for (const auto& row : j.at("vectors")) {
            params.vectors.push_back(vector_from_json(row));
        }
    }
    return params;
}

}  // namespace

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    return from_json(read_json_file(path), path.has_parent_path() ? path.parent_path() : ".");
}

RunConfig RunConfig::from_json(const Json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) {
        throw InvalidParameter("config must be a JSON object");
    }
    RunConfig config;
    config.base_dir = base_dir;

    if (!j.contains("dimension")) {
        throw InvalidParameter("config requires 'dimension'");
    }
    config.dimension = j.at("dimension").get<int>();
    if (config.dimension != 2 && config.dimension != 3) {
        throw InvalidParameter("supported dimensions are 2 and 3");
    }

    if (!j.contains("wave") || !j.at("wave").is_object()) {
        throw InvalidParameter("config requires a 'wave' object");
    }
    config.wave = j.at("wave");
    if (count_keys(config.wave, {"K", "bravais", "file"}) != 1) {
        throw InvalidParameter("'wave' must contain exactly one of: K, bravais, file");
    }

    if (!j.contains("coefficients") || !j.at("coefficients").is_object()) {
        throw InvalidParameter("config requires a 'coefficients' object");
    }
    config.coefficients = j.at("coefficients");
    const bool direct = config.coefficients.contains("a") || config.coefficients.contains("b");
    const bool physical = config.coefficients.contains("medium") ||
                          config.coefficients.contains("particle") ||
                          config.coefficients.contains("frequency");
    if (direct == physical) {
        throw InvalidParameter("'coefficients' must be either {a, b} or {medium, particle, frequency}");
    }

    if (!j.contains("amplitude")) {
        throw InvalidParameter("config requires an 'amplitude' source");
    }
    config.amplitude = j.at("amplitude");
    if (config.amplitude.is_string()) {
        if (config.amplitude.get<std::string>() != "min-eigenvector") {
            throw InvalidParameter("the only named amplitude source is \"min-eigenvector\"");
        }
    } else if (config.amplitude.is_object()) {
        const bool explicit_values = config.amplitude.contains("values");
        const bool indexed = config.amplitude.contains("eigenvalue_index");
        if (explicit_values == indexed) {
            throw InvalidParameter(
                "'amplitude' must be \"min-eigenvector\", {values: [...]}, or "
                "{eigenvalue_index, basis_index}");
        }
    } else {
        throw InvalidParameter("'amplitude' must be a string or an object");
    }

    if (j.contains("wavenumber")) {
        config.wavenumber = j.at("wavenumber").get<double>();
        if (!(*config.wavenumber > 0.0)) {
            throw InvalidParameter("wavenumber must be positive");
        }
    }
    if (j.contains("resolution")) {
        config.resolution = j.at("resolution").get<int>();
    }
    if (j.contains("seed")) {
        config.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("output")) {
        config.output = j.at("output").get<std::string>();
    }
    if (j.contains("predictions")) {
        config.predictions_file = j.at("predictions").get<std::string>();
    }
    if (j.contains("relax")) {
        const Json& r = j.at("relax");
        config.relax.particles = r.value("particles", config.relax.particles);
        config.relax.step = r.value("step", config.relax.step);
        config.relax.max_iterations = r.value("max_iterations", config.relax.max_iterations);
        config.relax.grad_threshold = r.value("grad_threshold", config.relax.grad_threshold);
        config.relax.trajectory = r.value("trajectory", config.relax.trajectory);
        if (config.relax.particles < 1) {
            throw InvalidParameter("relax.particles must be at least 1");
        }
    }
    return config;
}

bool RunConfig::coefficients_physical() const { return coefficients.contains("medium"); }

Coefficients RunConfig::coefficients_value() const {
    if (!coefficients_physical()) {
        const double a = coefficients.value("a", 0.0);
        const double b = coefficients.value("b", 0.0);
        const double k = coefficients.value("k", wavenumber.value_or(1.0));
        return Coefficients::direct(a, b, k);
    }
    if (!coefficients.contains("particle") || !coefficients.contains("frequency")) {
        throw InvalidParameter("physical coefficients require medium, particle and frequency");
    }
    const Json& m = coefficients.at("medium");
    MediumParams medium;
    medium.compressibility = m.value("compressibility", 0.0);
    medium.mass_density = m.value("mass_density", 0.0);
    if (m.contains("sound_speed")) {
        medium.sound_speed_override = m.at("sound_speed").get<double>();
    }
    const Json& p = coefficients.at("particle");
    ParticleParams particle;
    particle.compressibility = p.value("compressibility", 0.0);
    particle.mass_density = p.value("mass_density", 0.0);
    return derive_coefficients(medium, particle, coefficients.at("frequency").get<double>());
}

double RunConfig::design_wavenumber(const Coefficients& coef) const {
    if (wavenumber) {
        return *wavenumber;
    }
    if (coefficients_physical()) {
        return coef.wavenumber;
    }
    return 1.0;
}

RunConfig::WaveResult RunConfig::wave_value(const Coefficients& coef) const {
    Json source = wave;
    if (source.contains("file")) {
        const std::filesystem::path path = source.at("file").get<std::string>();
        source = read_json_file(path.is_absolute() ? path : base_dir / path);
        if (count_keys(source, {"K", "bravais"}) != 1) {
            throw InvalidParameter("wave file must contain exactly one of: K, bravais");
        }
    }

    WaveResult result;
    if (source.contains("K")) {
        const Eigen::MatrixXd K = matrix_from_json(source.at("K"));
        if (K.rows() != dimension) {
            throw DimensionMismatch("wave K does not match the configured dimension");
        }
        result.cfg = wave_config_from_K(K);
        return result;
    }

    const Json& b = source.at("bravais");
    if (!b.contains("class")) {
        throw InvalidParameter("bravais wave source requires a 'class' name");
    }
    DesignRequest req;
    req.dimension = dimension;
    req.class_name = b.at("class").get<std::string>();
    req.params = lattice_params_from_json(b);
    req.wavenumber = b.value("wavenumber", design_wavenumber(coef));
    result.entry = &find_class(dimension, req.class_name);
    result.params = req.params;
    result.cfg = design(req);
    return result;
}

int RunConfig::resolution_value() const {
    return resolution.value_or(default_resolution(dimension));
}

TransducerVector AmplitudeChoice::unit_amplitude() const {
    const double norm = u.norm();
    if (!(norm > 0.0)) {
        throw InvalidParameter("classification requires a nonzero amplitude vector");
    }
    return u / norm;
}

AmplitudeChoice select_amplitude(const RunConfig& config, const SpectralDecomposition& dec) {
    AmplitudeChoice choice;
    if (config.amplitude.is_string()) {
        choice.u = min_eigenvector(dec);
        choice.source = "min-eigenvector";
        choice.group = dec.min_group();
        return choice;
    }
    if (config.amplitude.contains("eigenvalue_index")) {
        const int group = config.amplitude.at("eigenvalue_index").get<int>();
        if (group < 0 || group >= static_cast<int>(dec.groups.size())) {
            throw InvalidParameter("eigenvalue_index out of range");
        }
        const auto& cols = dec.groups[static_cast<std::size_t>(group)].columns;
        const int basis = config.amplitude.value("basis_index", 0);
        if (basis < 0 || basis >= static_cast<int>(cols.size())) {
            throw InvalidParameter("basis_index out of range for the selected eigenspace");
        }
        choice.u = dec.eigenvectors.col(cols[static_cast<std::size_t>(basis)]).cast<Complex>();
        choice.source = "eigenspace-index";
        choice.group = group;
        return choice;
    }
    choice.u = complex_vector_from_json(config.amplitude.at("values"));
    if (choice.u.size() != 2 * config.dimension) {
        throw DimensionMismatch("amplitude vector must have length 2*d");
    }
    // Explicit amplitudes stay as given (a zero vector is a valid sampling
    // input); classification-bound commands normalize via unit_amplitude().
    choice.original_norm = choice.u.norm();
    choice.source = "explicit";
    if (choice.original_norm > 0.0) {
        const TransducerVector unit = choice.u / choice.original_norm;
        for (int g = 0; g < static_cast<int>(dec.groups.size()); ++g) {
            if (eigenspace_contains(dec, g, unit)) {
                choice.group = g;
                break;
            }
        }
    }
    return choice;
}

}  // namespace sono
