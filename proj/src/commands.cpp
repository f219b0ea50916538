#include "sonolattice/commands.hpp"

#include <fstream>
#include <ostream>

#include "sonolattice/dynamics.hpp"
#include "sonolattice/random.hpp"

namespace sono {

namespace {

const char* kAmplitudeRuleNote =
    "min-eigenvector uses a fixed artifact convention: the first stored basis vector of the "
    "lowest eigenspace with all entries nonzero, else the first all-nonzero pairwise "
    "normalized sum, else the first basis vector";

struct Pipeline {
    Coefficients coef;
    RunConfig::WaveResult wave;
    SpectralDecomposition dec;
    AmplitudeChoice amplitude;
};

Pipeline build_pipeline(const RunConfig& config) {
    Pipeline p;
    p.coef = config.coefficients_value();
    p.wave = config.wave_value(p.coef);
    p.dec = origin_eigensystem(p.coef, p.wave.cfg);
    p.amplitude = select_amplitude(config, p.dec);
    return p;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw Error("cannot open for writing: " + path.string());
    }
    stream << text;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            row += ',';
        }
        row += fields[i];
    }
    row += '\n';
    return row;
}

const char* h_character_name(HCharacter c) {
    switch (c) {
        case HCharacter::ContainedPlus:
            return "plus";
        case HCharacter::ContainedMinus:
            return "minus";
        case HCharacter::Straddling:
            return "straddling";
    }
    return "unknown";
}

Json eigensystem_to_json(const SpectralDecomposition& dec) {
    Json out;
    out["eigenvalues"] = to_json(dec.eigenvalues);
    Json groups = Json::array();
    for (int g = 0; g < static_cast<int>(dec.groups.size()); ++g) {
        const auto& group = dec.groups[static_cast<std::size_t>(g)];
        Json entry;
        entry["value"] = group.value;
        entry["multiplicity"] = static_cast<int>(group.columns.size());
        entry["h_character"] = h_character_name(dec.group_character(g));
        groups.push_back(std::move(entry));
    }
    out["eigenspaces"] = groups;
    return out;
}

Json wave_to_json(const RunConfig::WaveResult& wave) {
    Json out;
    out["dimension"] = wave.cfg.dimension;
    out["wavenumber"] = wave.cfg.wavenumber;
    out["wavelength"] = wave.cfg.wavelength;
    out["K"] = to_json(wave.cfg.K);
    out["A"] = to_json(wave.cfg.A);
    if (wave.entry != nullptr) {
        Json design;
        design["class"] = wave.entry->name;
        design["display_name"] = wave.entry->display_name;
        design["achievable"] = wave.entry->achievable;
        if (wave.entry->implied_class.empty()) {
            design["implied_class"] = nullptr;
        } else {
            design["implied_class"] = wave.entry->implied_class;
        }
        if (!wave.entry->notes.empty()) {
            design["notes"] = wave.entry->notes;
        }
        Json params = Json::object();
        for (const auto& [key, value] : wave.params.scalars) {
            params[key] = value;
        }
        if (!wave.params.vectors.empty()) {
            Json vectors = Json::array();
            for (const auto& v : wave.params.vectors) {
                vectors.push_back(to_json(v));
            }
            params["vectors"] = vectors;
        }
        design["params"] = params;
        out["design"] = design;
    }
    return out;
}

/// Classification result plus the status string shared by predict/verify.
struct ClassifyOutcome {
    std::string status;  // classified | not-canonical | not-eigenvector
    std::optional<int> group;
    Classification classification;
};

ClassifyOutcome run_classification(const Pipeline& p, const WaveConfig& cfg) {
    ClassifyOutcome outcome;
    if (!p.amplitude.group) {
        outcome.status = "not-eigenvector";
        return outcome;
    }
    outcome.group = p.amplitude.group;
    outcome.classification =
        classify_level_set(p.dec, *p.amplitude.group, p.amplitude.unit_amplitude(), cfg);
    outcome.status = outcome.classification.canonical ? "classified" : "not-canonical";
    return outcome;
}

}  // namespace

int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err) {
    (void)err;
    const Coefficients coef = config.coefficients_value();
    out << "path = " << (config.coefficients_physical() ? "physical" : "direct") << '\n';
    if (coef.f1) {
        out << "f1 = " << format_number(*coef.f1) << '\n';
    }
    if (coef.f2) {
        out << "f2 = " << format_number(*coef.f2) << '\n';
    }
    out << "a = " << format_number(coef.a) << '\n';
    out << "b = " << format_number(coef.b) << '\n';
    if (coef.omega) {
        out << "omega = " << format_number(*coef.omega) << '\n';
    }
    if (coef.frequency) {
        out << "frequency = " << format_number(*coef.frequency) << '\n';
    }
    out << "wavenumber = " << format_number(coef.wavenumber) << '\n';
    out << "wavelength = " << format_number(coef.wavelength) << '\n';
    return 0;
}

int cmd_design(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err) {
    const Coefficients coef = config.coefficients_value();
    const RunConfig::WaveResult wave = config.wave_value(coef);
    std::filesystem::create_directories(out_dir);
    write_json_file(out_dir / "wave.json", wave_to_json(wave));
    if (wave.entry != nullptr && !wave.entry->achievable) {
        err << "warning: class '" << wave.entry->display_name
            << "' is not achievable under the equal-wavenumber constraint; the design realizes '"
            << wave.entry->implied_class << "' instead\n";
    }
    out << "wrote " << (out_dir / "wave.json").string() << '\n';
    return 0;
}

int cmd_predict(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
                std::ostream& err) {
    (void)err;
    const Pipeline p = build_pipeline(config);
    const ClassifyOutcome outcome = run_classification(p, p.wave.cfg);

    Json report = eigensystem_to_json(p.dec);
    report["amplitude"] = to_json(p.amplitude.u);
    report["amplitude_source"] = p.amplitude.source;
    if (p.amplitude.source == "min-eigenvector") {
        report["amplitude_rule"] = kAmplitudeRuleNote;
    }
    if (p.amplitude.source == "explicit") {
        report["amplitude_norm"] = p.amplitude.original_norm;
    }
    report["status"] = outcome.status;
    if (outcome.group) {
        report["group_index"] = *outcome.group;
        report["level"] = p.dec.groups[static_cast<std::size_t>(*outcome.group)].value;
    } else {
        report["group_index"] = nullptr;
        report["level"] = nullptr;
    }
    report["branches"] = outcome.classification.branches;
    Json predictions = Json::array();
    for (const auto& prediction : outcome.classification.predictions) {
        predictions.push_back(prediction_to_json(prediction));
    }
    report["predictions"] = predictions;

    std::filesystem::create_directories(out_dir);
    write_json_file(out_dir / "prediction.json", report);
    out << "status = " << outcome.status << '\n';
    out << "predictions = " << predictions.size() << '\n';
    out << "wrote " << (out_dir / "prediction.json").string() << '\n';
    return 0;
}

int cmd_sample(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err) {
    (void)err;
    const Pipeline p = build_pipeline(config);
    const FieldGrid grid = sample_grid(p.wave.cfg, p.coef, p.amplitude.u, config.resolution_value());

    std::filesystem::create_directories(out_dir);
    const int d = grid.dimension;
    std::string csv;
    {
        std::vector<std::string> header;
        for (int j = 0; j < d; ++j) {
            header.push_back("alpha_" + std::to_string(j + 1));
        }
        for (int j = 0; j < d; ++j) {
            header.push_back("x_" + std::to_string(j + 1));
        }
        header.push_back("psi");
        csv += csv_row(header);
    }
    for (Eigen::Index f = 0; f < grid.size(); ++f) {
        const Eigen::VectorXd alpha = grid.atomic_at(f);
        const Eigen::VectorXd x = grid.cfg.A * alpha;
        std::vector<std::string> fields;
        for (int j = 0; j < d; ++j) {
            fields.push_back(format_number(alpha(j)));
        }
        for (int j = 0; j < d; ++j) {
            fields.push_back(format_number(x(j)));
        }
        fields.push_back(format_number(grid.values(f)));
        csv += csv_row(fields);
    }
    write_text_file(out_dir / "field.csv", csv);

    const double power = p.amplitude.u.squaredNorm();
    const double lambda_min = p.dec.eigenvalues.minCoeff() * power;
    const double lambda_max = p.dec.eigenvalues.maxCoeff() * power;
    const double tol = 1e-9 * std::max(1.0, (std::abs(p.coef.a) +
                                             std::abs(p.coef.b) * p.wave.cfg.wavenumber *
                                                 p.wave.cfg.wavenumber) *
                                                power);
    Eigen::Index argmin = 0;
    grid.values.minCoeff(&argmin);

    Json summary;
    summary["resolution"] = grid.resolution;
    summary["min"] = grid.values.minCoeff();
    summary["max"] = grid.values.maxCoeff();
    summary["argmin_atomic"] = to_json(grid.atomic_at(argmin));
    summary["lambda_min"] = lambda_min;
    summary["lambda_max"] = lambda_max;
    summary["bound_ok"] = grid.values.minCoeff() >= lambda_min - tol &&
                          grid.values.maxCoeff() <= lambda_max + tol;
    write_json_file(out_dir / "summary.json", summary);

    out << "min = " << format_number(grid.values.minCoeff()) << '\n';
    out << "max = " << format_number(grid.values.maxCoeff()) << '\n';
    out << "bound_ok = " << (summary["bound_ok"].get<bool>() ? "true" : "false") << '\n';
    out << "wrote " << (out_dir / "field.csv").string() << '\n';
    return 0;
}

int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err) {
    (void)err;
    const Pipeline p = build_pipeline(config);

    std::string status;
    std::vector<MinimaPrediction> predictions;
    Json branches = Json::array();
    if (config.predictions_file) {
        const std::filesystem::path path = config.predictions_file->is_absolute()
                                               ? *config.predictions_file
                                               : config.base_dir / *config.predictions_file;
        const Json stored = read_json_file(path);
        for (const auto& entry : stored.at("predictions")) {
            predictions.push_back(prediction_from_json(entry));
        }
        status = "loaded";
    } else {
        const ClassifyOutcome outcome = run_classification(p, p.wave.cfg);
        status = outcome.status;
        predictions = outcome.classification.predictions;
        branches = outcome.classification.branches;
    }

    const TransducerVector u_unit = p.amplitude.unit_amplitude();
    const FieldGrid grid = sample_grid(p.wave.cfg, p.coef, u_unit, config.resolution_value());
    const VerificationReport report = verify_predictions(predictions, p.wave.cfg, p.coef, u_unit, grid);

    Json doc;
    doc["status"] = status;
    doc["branches"] = branches;
    doc["all_confirmed"] = report.all_confirmed();
    doc["bound_ok"] = report.bound_ok;
    doc["grid_min"] = report.grid_min;
    doc["grid_max"] = report.grid_max;
    doc["lambda_min"] = report.lambda_min;
    doc["lambda_max"] = report.lambda_max;
    doc["worst_level_error"] = report.worst_level_error;
    doc["level_tolerance"] = report.level_tolerance;
    Json checks = Json::array();
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        Json entry = prediction_to_json(predictions[i]);
        entry["status"] = to_string(report.checks[i].status);
        entry["worst_error"] = report.checks[i].worst_error;
        entry["samples"] = report.checks[i].samples;
        checks.push_back(std::move(entry));
    }
    doc["predictions"] = checks;
    Json unexplained = Json::array();
    for (const auto& m : report.unexplained_minima) {
        unexplained.push_back(to_json(m));
    }
    doc["unexplained_minima"] = unexplained;

    std::filesystem::create_directories(out_dir);
    write_json_file(out_dir / "report.json", doc);

    const bool classified = status == "classified" || status == "loaded";
    const bool ok = classified && !predictions.empty() && report.all_confirmed() && report.bound_ok;
    out << "status = " << status << '\n';
    for (std::size_t i = 0; i < report.checks.size(); ++i) {
        out << "prediction " << i << ": " << to_string(report.checks[i].status)
            << " (worst error " << format_number(report.checks[i].worst_error) << ")\n";
    }
    out << (ok ? "verified" : "verification failed") << '\n';
    out << "wrote " << (out_dir / "report.json").string() << '\n';
    return ok ? 0 : 2;
}

int cmd_relax(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
              std::ostream& err) {
    (void)err;
    const Pipeline p = build_pipeline(config);

    Rng rng(config.seed);
    ParticleEnsemble ensemble;
    ensemble.step = config.relax.step;
    ensemble.max_iterations = config.relax.max_iterations;
    ensemble.grad_threshold = config.relax.grad_threshold;
    ensemble.record_trajectory = config.relax.trajectory;
    for (int i = 0; i < config.relax.particles; ++i) {
        ensemble.positions.push_back(p.wave.cfg.A *
                                     rng.uniform_vector(p.wave.cfg.dimension, 0.0, 1.0));
    }

    const RelaxResult result = relax(ensemble, p.amplitude.u, p.coef, p.wave.cfg);
    const int d = p.wave.cfg.dimension;

    std::filesystem::create_directories(out_dir);
    std::string csv;
    {
        std::vector<std::string> header{"particle", "converged", "iterations"};
        for (int j = 0; j < d; ++j) {
            header.push_back("alpha_" + std::to_string(j + 1));
        }
        header.push_back("psi");
        header.push_back("grad_norm");
        csv += csv_row(header);
    }
    int converged_count = 0;
    for (std::size_t i = 0; i < result.atomic_positions.size(); ++i) {
        std::vector<std::string> fields{std::to_string(i), result.converged[i] ? "1" : "0",
                                        std::to_string(result.iterations[i])};
        for (int j = 0; j < d; ++j) {
            fields.push_back(format_number(result.atomic_positions[i](j)));
        }
        fields.push_back(format_number(result.psi_values[i]));
        fields.push_back(format_number(result.grad_norms[i]));
        csv += csv_row(fields);
        converged_count += result.converged[i] ? 1 : 0;
    }
    write_text_file(out_dir / "particles.csv", csv);

    if (config.relax.trajectory) {
        std::string traj;
        {
            std::vector<std::string> header{"iteration", "particle"};
            for (int j = 0; j < d; ++j) {
                header.push_back("alpha_" + std::to_string(j + 1));
            }
            header.push_back("psi");
            traj += csv_row(header);
        }
        for (const auto& samplept : result.trajectory) {
            std::vector<std::string> fields{std::to_string(samplept.iteration),
                                            std::to_string(samplept.particle)};
            for (int j = 0; j < d; ++j) {
                fields.push_back(format_number(samplept.atomic(j)));
            }
            fields.push_back(format_number(samplept.psi));
            traj += csv_row(fields);
        }
        write_text_file(out_dir / "trajectory.csv", traj);
    }

    out << "converged = " << converged_count << "/" << config.relax.particles << '\n';
    out << "wrote " << (out_dir / "particles.csv").string() << '\n';
    return 0;
}

}  // namespace sono
