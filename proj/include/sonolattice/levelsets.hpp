#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sonolattice/spectral.hpp"

namespace sono {

/// Entry-wise sign flip pattern s in {0,1}^d; (-1)^s is the flip vector.
using SignVector = Eigen::VectorXi;

Eigen::VectorXd flip_vector(const SignVector& s);

enum class CanonicalSign { Plus, Minus };

/// Real amplitude vector u = [v; v] (Plus) or [v; -v] (Minus).
struct CanonicalForm {
    Eigen::VectorXd v;
    CanonicalSign sign = CanonicalSign::Plus;
};

/// Extract the [v; +/-v] form of a unit amplitude vector, or nullopt when u
/// is genuinely complex or has no such form within tol.
std::optional<CanonicalForm> canonical_form(const TransducerVector& u, double tol = 1e-9);

/// Full-rank lattice of isolated level points: offsets s/2 (atomic
/// coordinates) repeated over A n.
struct PointLatticeSet {
    double level = 0.0;
    Eigen::MatrixXd A;
    std::vector<SignVector> signs;
    std::vector<Eigen::VectorXd> offsets;  // s/2, componentwise in {0, 1/2}
};

/// Lines x(n;theta) = K^{-T} (theta (-1)^s + 2 pi n).
struct LineFamilySet {
    double level = 0.0;
    Eigen::MatrixXd K;
    std::vector<SignVector> signs;
    std::vector<Eigen::VectorXd> directions;  // (-1)^s per sign vector
};

/// Sets x(n;theta,phi) = K^{-T} (theta (-1)^s + phi (-1)^r + 2 pi n); a pair
/// degenerates to a line when (-1)^{s+r} is +/- the all-ones vector.
struct PlanePair {
    SignVector s;
    SignVector r;
    bool degenerate_line = false;
};

struct PlaneFamilySet {
    double level = 0.0;
    Eigen::MatrixXd K;
    std::vector<PlanePair> pairs;
};

/// Span of the lattice vectors a_j over the zero entries of v; every point of
/// the span sits at the level value.
struct SubspaceSet {
    double level = 0.0;
    std::vector<int> zero_indices;
    Eigen::MatrixXd generators;  // columns a_j, j in zero_indices
};

using MinimaPrediction = std::variant<PointLatticeSet, LineFamilySet, PlaneFamilySet, SubspaceSet>;

double prediction_level(const MinimaPrediction& p);

/// Sign flips that keep u on its own side of H+/H-; nonempty (always contains
/// 0 and the all-ones vector) and generates the point lattice.
std::vector<SignVector> point_flip_set(const SpectralDecomposition& dec, int group,
                                       const CanonicalForm& cf, double tol = 1e-9);

/// Sign flips that land the flipped vector on the opposite side of H+/H-;
/// nonempty only when the eigenspace straddles, and generates line families.
std::vector<SignVector> line_flip_set(const SpectralDecomposition& dec, int group,
                                      const CanonicalForm& cf, double tol = 1e-9);

/// Pairs (s, r) passing the three membership conditions that generate plane
/// (or degenerate line) families.
std::vector<PlanePair> plane_flip_pairs(const SpectralDecomposition& dec, int group,
                                        const CanonicalForm& cf, double tol = 1e-9);

std::optional<SubspaceSet> zero_entry_subspace(const CanonicalForm& cf, const WaveConfig& cfg,
                                               double level, double zero_tol = kZeroEntryTol);

/// Outcome of dispatching one (eigenvalue group, eigenvector) pair through
/// the level-set classification.
struct Classification {
    bool canonical = false;
    std::vector<MinimaPrediction> predictions;
    std::vector<std::string> branches;
};

Classification classify_level_set(const SpectralDecomposition& dec, int group,
                                  const TransducerVector& u, const WaveConfig& cfg,
                                  double tol = 1e-9);

// Distance helpers in wrapped atomic coordinates (used by verification).
double distance_to_point_lattice(const Eigen::VectorXd& alpha, const PointLatticeSet& set);
double distance_to_line_family(const Eigen::VectorXd& alpha, const LineFamilySet& set);

}  // namespace sono
