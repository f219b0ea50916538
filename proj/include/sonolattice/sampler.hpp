#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sonolattice/levelsets.hpp"

namespace sono {

/// psi evaluated over a regular grid of atomic coordinates [0,1)^d.
/// Values are stored row-major with axis 0 slowest.
struct FieldGrid {
    int dimension = 0;
    int resolution = 0;
    Eigen::VectorXd values;
    WaveConfig cfg;
    Coefficients coef;
    TransducerVector u;

    Eigen::VectorXd atomic_at(Eigen::Index flat) const;
    Eigen::Index size() const { return values.size(); }
};

int default_resolution(int dimension);

FieldGrid sample_grid(const WaveConfig& cfg, const Coefficients& coef, const TransducerVector& u,
                      int resolution);

/// One connected component of grid-local minima (periodic neighborhoods).
/// Components covering a large fraction of the cell are flagged extended
/// (plateaus along lines or planes rather than isolated points).
struct GridMinimum {
    Eigen::VectorXd atomic;  // component centroid (circular mean per axis)
    double value = 0.0;
    int cell_count = 0;
    bool extended = false;
};

std::vector<GridMinimum> find_grid_minima(const FieldGrid& grid);

enum class PredictionStatus { Confirmed, ValueMismatch, ExtraMinimaFound };

const char* to_string(PredictionStatus status);

struct PredictionCheck {
    PredictionStatus status = PredictionStatus::Confirmed;
    double worst_error = 0.0;
    int samples = 0;
};

struct VerificationReport {
    std::vector<PredictionCheck> checks;
    double worst_level_error = 0.0;
    double level_tolerance = 0.0;
    std::vector<Eigen::VectorXd> unexplained_minima;
    bool bound_ok = false;
    double grid_min = 0.0;
    double grid_max = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;

    bool all_confirmed() const;
};

/// Sample each prediction's generating set and check the level value; for
/// point lattices additionally require every numeric grid minimum to sit
/// within 1.5 grid cells of a predicted point.
VerificationReport verify_predictions(const std::vector<MinimaPrediction>& predictions,
                                      const WaveConfig& cfg, const Coefficients& coef,
                                      const TransducerVector& u, const FieldGrid& grid);

}  // namespace sono
