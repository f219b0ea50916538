#include "sonolattice/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace sono {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<Eigen::VectorXi> neighbor_offsets(int d) {
    std::vector<Eigen::VectorXi> out;
    const int total = static_cast<int>(std::pow(3.0, d));
    for (int code = 0; code < total; ++code) {
        Eigen::VectorXi off(d);
        int rest = code;
        bool all_zero = true;
        for (int j = 0; j < d; ++j) {
            off(j) = rest % 3 - 1;
            rest /= 3;
            all_zero = all_zero && off(j) == 0;
        }
        if (!all_zero) {
            out.push_back(std::move(off));
        }
    }
    return out;
}

Eigen::VectorXi unflatten(Eigen::Index flat, int d, int res) {
    Eigen::VectorXi idx(d);
    for (int j = d - 1; j >= 0; --j) {
        idx(j) = static_cast<int>(flat % res);
        flat /= res;
    }
    return idx;
}

Eigen::Index flatten(const Eigen::VectorXi& idx, int res) {
    Eigen::Index flat = 0;
    for (Eigen::Index j = 0; j < idx.size(); ++j) {
        flat = flat * res + idx(j);
    }
    return flat;
}

Eigen::Index periodic_neighbor(const Eigen::VectorXi& idx, const Eigen::VectorXi& off, int res) {
    Eigen::VectorXi n = idx + off;
    for (Eigen::Index j = 0; j < n.size(); ++j) {
        if (n(j) < 0) {
            n(j) += res;
        } else if (n(j) >= res) {
            n(j) -= res;
        }
    }
    return flatten(n, res);
}

double level_tolerance(const Coefficients& coef, const WaveConfig& cfg,
                       const TransducerVector& u) {
    const double k2 = cfg.wavenumber * cfg.wavenumber;
    return 1e-9 * std::max(1.0, (std::abs(coef.a) + std::abs(coef.b) * k2) * u.squaredNorm());
}

}  // namespace

Eigen::VectorXd FieldGrid::atomic_at(Eigen::Index flat) const {
    const Eigen::VectorXi idx = unflatten(flat, dimension, resolution);
    return idx.cast<double>() / static_cast<double>(resolution);
}

int default_resolution(int dimension) { return dimension == 2 ? 256 : 64; }

FieldGrid sample_grid(const WaveConfig& cfg, const Coefficients& coef, const TransducerVector& u,
                      int resolution) {
    if (resolution < 8) {
        throw InvalidParameter("grid resolution must be at least 8");
    }
    if (u.size() != 2 * cfg.dimension) {
        throw DimensionMismatch("transducer vector must have length 2*d");
    }
    FieldGrid grid;
    grid.dimension = cfg.dimension;
    grid.resolution = resolution;
    grid.cfg = cfg;
    grid.coef = coef;
    grid.u = u;

    Eigen::Index total = 1;
    for (int j = 0; j < cfg.dimension; ++j) {
        total *= resolution;
    }
    grid.values.resize(total);
    for (Eigen::Index f = 0; f < total; ++f) {
        const Eigen::VectorXd alpha = grid.atomic_at(f);
        grid.values(f) = radiation_potential_direct(cfg.A * alpha, u, coef, cfg);
    }
    return grid;
}

std::vector<GridMinimum> find_grid_minima(const FieldGrid& grid) {
    const int d = grid.dimension;
    const int res = grid.resolution;
    const auto offsets = neighbor_offsets(d);
    const Eigen::Index total = grid.size();
    const double eps = 1e-12 * std::max(1.0, grid.values.cwiseAbs().maxCoeff());

    std::vector<bool> is_min(static_cast<std::size_t>(total), false);
    for (Eigen::Index f = 0; f < total; ++f) {
        const Eigen::VectorXi idx = unflatten(f, d, res);
        bool ok = true;
        for (const auto& off : offsets) {
            if (grid.values(f) > grid.values(periodic_neighbor(idx, off, res)) + eps) {
                ok = false;
                break;
            }
        }
        is_min[static_cast<std::size_t>(f)] = ok;
    }

    const double extended_threshold =
        3.0 * std::pow(static_cast<double>(res), static_cast<double>(d - 1) / d);

    std::vector<GridMinimum> out;
    std::vector<bool> visited(static_cast<std::size_t>(total), false);
    for (Eigen::Index seed = 0; seed < total; ++seed) {
        if (!is_min[static_cast<std::size_t>(seed)] || visited[static_cast<std::size_t>(seed)]) {
            continue;
        }
        std::deque<Eigen::Index> queue{seed};
        visited[static_cast<std::size_t>(seed)] = true;
        std::vector<Eigen::Index> component;
        while (!queue.empty()) {
            const Eigen::Index f = queue.front();
            queue.pop_front();
            component.push_back(f);
            const Eigen::VectorXi idx = unflatten(f, d, res);
            for (const auto& off : offsets) {
                const Eigen::Index n = periodic_neighbor(idx, off, res);
                if (is_min[static_cast<std::size_t>(n)] && !visited[static_cast<std::size_t>(n)]) {
                    visited[static_cast<std::size_t>(n)] = true;
                    queue.push_back(n);
                }
            }
        }

        GridMinimum m;
        m.cell_count = static_cast<int>(component.size());
        m.extended = component.size() > extended_threshold;
        m.value = grid.values(component.front());
        // Centroid via circular mean per axis; exact for single-cell minima.
        Eigen::VectorXd cos_sum = Eigen::VectorXd::Zero(d);
        Eigen::VectorXd sin_sum = Eigen::VectorXd::Zero(d);
        for (Eigen::Index f : component) {
            m.value = std::min(m.value, grid.values(f));
            const Eigen::VectorXd alpha = grid.atomic_at(f);
            for (int j = 0; j < d; ++j) {
                cos_sum(j) += std::cos(kTwoPi * alpha(j));
                sin_sum(j) += std::sin(kTwoPi * alpha(j));
            }
        }
        m.atomic.resize(d);
        for (int j = 0; j < d; ++j) {
            double angle = std::atan2(sin_sum(j), cos_sum(j)) / kTwoPi;
            if (angle < 0.0) {
                angle += 1.0;
            }
            m.atomic(j) = angle;
        }
        out.push_back(std::move(m));
    }
    return out;
}

const char* to_string(PredictionStatus status) {
    switch (status) {
        case PredictionStatus::Confirmed:
            return "confirmed";
        case PredictionStatus::ValueMismatch:
            return "value-mismatch";
        case PredictionStatus::ExtraMinimaFound:
            return "extra-minima-found";
    }
    return "unknown";
}

bool VerificationReport::all_confirmed() const {
    return std::all_of(checks.begin(), checks.end(), [](const PredictionCheck& c) {
        return c.status == PredictionStatus::Confirmed;
    });
}

namespace {

struct LevelSamples {
    double worst_error = 0.0;
    int count = 0;
};

LevelSamples check_points(const std::vector<Eigen::VectorXd>& points, double level,
                          const WaveConfig& cfg, const Coefficients& coef,
                          const TransducerVector& u) {
    LevelSamples out;
    for (const auto& x : points) {
        out.worst_error =
            std::max(out.worst_error, std::abs(radiation_potential_direct(x, u, coef, cfg) - level));
        ++out.count;
    }
    return out;
}

std::vector<Eigen::VectorXd> point_lattice_samples(const PointLatticeSet& set,
                                                   const WaveConfig& cfg, int target) {
    // Offsets replicated over an expanding box of integer lattice shifts
    // until the sample budget is met.
    std::vector<Eigen::VectorXd> points;
    const int d = cfg.dimension;
    for (int radius = 0; static_cast<int>(points.size()) < target && radius < 16; ++radius) {
        const int width = 2 * radius + 1;
        const int total = static_cast<int>(std::pow(width, d));
        for (int code = 0; code < total; ++code) {
            Eigen::VectorXd n(d);
            int rest = code;
            int linf = 0;
            for (int j = 0; j < d; ++j) {
                const int c = rest % width - radius;
                n(j) = c;
                linf = std::max(linf, std::abs(c));
                rest /= width;
            }
            if (linf != radius) {
                continue;  // only the new shell of the box
            }
            for (const auto& offset : set.offsets) {
                points.push_back(set.A * (offset + n));
                if (static_cast<int>(points.size()) >= target) {
                    return points;
                }
            }
        }
    }
    return points;
}

std::vector<Eigen::VectorXd> line_samples(const Eigen::MatrixXd& K, const Eigen::VectorXd& direction,
                                          int count) {
    // x(theta) = K^{-T} (theta * direction); one period is theta in [0, 2*pi).
    const Eigen::MatrixXd Kinv_t = K.transpose().fullPivLu().inverse();
    std::vector<Eigen::VectorXd> points;
    points.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double theta = kTwoPi * i / count;
        points.push_back(Kinv_t * (theta * direction));
    }
    return points;
}

std::vector<Eigen::VectorXd> plane_samples(const Eigen::MatrixXd& K, const Eigen::VectorXd& dir_s,
                                           const Eigen::VectorXd& dir_r, int count_theta,
                                           int count_phi) {
    const Eigen::MatrixXd Kinv_t = K.transpose().fullPivLu().inverse();
    std::vector<Eigen::VectorXd> points;
    points.reserve(static_cast<std::size_t>(count_theta * count_phi));
    for (int i = 0; i < count_theta; ++i) {
        const double theta = kTwoPi * i / count_theta;
        for (int j = 0; j < count_phi; ++j) {
            const double phi = kTwoPi * j / count_phi;
            points.push_back(Kinv_t * (theta * dir_s + phi * dir_r));
        }
    }
    return points;
}

std::vector<Eigen::VectorXd> subspace_samples(const SubspaceSet& set, int target) {
    const int m = static_cast<int>(set.generators.cols());
    std::vector<Eigen::VectorXd> points;
    if (m == 1) {
        for (int i = 0; i < target; ++i) {
            points.push_back(set.generators.col(0) * (static_cast<double>(i) / target));
        }
        return points;
    }
    const int per_axis = static_cast<int>(std::ceil(std::pow(target, 1.0 / m)));
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    while (static_cast<int>(points.size()) < target) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(set.generators.rows());
        for (int j = 0; j < m; ++j) {
            x += set.generators.col(j) * (static_cast<double>(idx[static_cast<std::size_t>(j)]) / per_axis);
        }
        points.push_back(std::move(x));
        int j = m - 1;
        while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == per_axis) {
            idx[static_cast<std::size_t>(j)] = 0;
            --j;
        }
        if (j < 0) {
            break;
        }
    }
    return points;
}

}  // namespace

VerificationReport verify_predictions(const std::vector<MinimaPrediction>& predictions,
                                      const WaveConfig& cfg, const Coefficients& coef,
                                      const TransducerVector& u, const FieldGrid& grid) {
    VerificationReport report;
    const SpectralDecomposition dec = origin_eigensystem(coef, cfg);
    const double power = u.squaredNorm();
    report.lambda_min = dec.eigenvalues.minCoeff() * power;
    report.lambda_max = dec.eigenvalues.maxCoeff() * power;
    report.grid_min = grid.values.minCoeff();
    report.grid_max = grid.values.maxCoeff();
    report.level_tolerance = level_tolerance(coef, cfg, u);
    report.bound_ok = report.grid_min >= report.lambda_min - report.level_tolerance &&
                      report.grid_max <= report.lambda_max + report.level_tolerance;

    const auto minima = find_grid_minima(grid);
    const double cell = 1.0 / grid.resolution;

    for (const auto& prediction : predictions) {
        PredictionCheck check;
        const double level = prediction_level(prediction) * power;
        LevelSamples samples;

        bool extra_minima = false;
        if (const auto* points = std::get_if<PointLatticeSet>(&prediction)) {
            samples = check_points(point_lattice_samples(*points, cfg, 200), level, cfg, coef, u);
            // Completeness holds for point lattices only, and only for the
            // level set itself: a stray numeric minimum breaks confirmation
            // when it sits at the predicted level, while local minima at
            // other values are merely listed as unexplained.
            if (std::abs(level - report.lambda_min) <= report.level_tolerance) {
                for (const auto& m : minima) {
                    if (distance_to_point_lattice(m.atomic, *points) > 1.5 * cell) {
                        report.unexplained_minima.push_back(m.atomic);
                        if (std::abs(m.value - level) <= report.level_tolerance) {
                            extra_minima = true;
                        }
                    }
                }
            }
        } else if (const auto* lines = std::get_if<LineFamilySet>(&prediction)) {
            for (const auto& dir : lines->directions) {
                const auto s = check_points(line_samples(lines->K, dir, 100), level, cfg, coef, u);
                samples.worst_error = std::max(samples.worst_error, s.worst_error);
                samples.count += s.count;
            }
        } else if (const auto* planes = std::get_if<PlaneFamilySet>(&prediction)) {
            for (const auto& pair : planes->pairs) {
                const Eigen::VectorXd ds = flip_vector(pair.s);
                const Eigen::VectorXd dr = flip_vector(pair.r);
                const auto s = pair.degenerate_line
                                   ? check_points(line_samples(planes->K, ds, 100), level, cfg,
                                                  coef, u)
                                   : check_points(plane_samples(planes->K, ds, dr, 20, 10), level,
                                                  cfg, coef, u);
                samples.worst_error = std::max(samples.worst_error, s.worst_error);
                samples.count += s.count;
            }
        } else if (const auto* subspace = std::get_if<SubspaceSet>(&prediction)) {
            samples = check_points(subspace_samples(*subspace, 200), level, cfg, coef, u);
        }

        check.worst_error = samples.worst_error;
        check.samples = samples.count;
        if (samples.worst_error > report.level_tolerance) {
            check.status = PredictionStatus::ValueMismatch;
        } else if (extra_minima) {
            check.status = PredictionStatus::ExtraMinimaFound;
        }
        report.worst_level_error = std::max(report.worst_level_error, samples.worst_error);
        report.checks.push_back(check);
    }
    return report;
}

}  // namespace sono
