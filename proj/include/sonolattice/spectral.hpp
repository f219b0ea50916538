#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sonolattice/potential.hpp"

namespace sono {

/// Eigenvalues (descending) and orthonormal eigenvector columns.
struct Eigensystem {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Cyclic Jacobi eigensolver for small dense real symmetric matrices (n <= 6
/// in this project). Kept independent of any library eigensolver so it can
/// serve as the oracle for the structured decomposition below.
Eigensystem symmetric_eig(const Eigen::MatrixXd& S);

/// Which half-space of amplitude space a basis vector lives in:
/// Plus = [w; w], Minus = [w; -w].
enum class HLabel { Plus, Minus, Mixed };

/// Indices of eigenvector columns sharing one eigenvalue (after grouping
/// nearly-equal values).
struct Eigenspace {
    double value = 0.0;
    std::vector<int> columns;
};

enum class HCharacter { ContainedPlus, ContainedMinus, Straddling };

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // 2d values, descending
    Eigen::MatrixXd eigenvectors;  // 2d x 2d, columns orthonormal
    std::vector<Eigenspace> groups;
    std::vector<HLabel> h_labels;  // one per column

    HCharacter group_character(int group) const;
    int min_group() const { return static_cast<int>(groups.size()) - 1; }
};

/// Grouping tolerance for merging nearly-equal eigenvalues into one space.
inline constexpr double kEigenvalueGroupTol = 1e-9;

/// Structured eigendecomposition of Q(0): eigenvalues
/// {2ad, 0 x (d-1), -2b*sigma_j} with sigma_j the eigenvalues of K K^T, and
/// eigenvectors of the forms [1;1]/sqrt(2d), [z;z]/sqrt(2), [u_j;-u_j]/sqrt(2).
SpectralDecomposition origin_eigensystem(const Coefficients& coef, const WaveConfig& cfg);

struct HSplit {
    Eigen::VectorXcd plus;
    Eigen::VectorXcd minus;
};

/// Orthogonal split of a 2d-vector into its [w;w] and [w;-w] components.
HSplit h_split(const Eigen::VectorXcd& w);

/// Projection-residual membership test: true iff ||w - P w|| <= tol * ||w||
/// where P projects onto the stored eigenspace of the given group.
bool eigenspace_contains(const SpectralDecomposition& dec, int group, const Eigen::VectorXcd& w,
                         double tol = 1e-9);

/// Unit-norm real eigenvector of the smallest eigenvalue. Prefers a vector
/// with all entries nonzero among the stored basis vectors and their pairwise
/// normalized sums (in storage order); falls back to the first basis vector.
TransducerVector min_eigenvector(const SpectralDecomposition& dec);

/// Threshold below which an eigenvector entry counts as zero (vectors are
/// unit norm, so genuine entries are O(1/sqrt(2d))).
inline constexpr double kZeroEntryTol = 1e-9;

}  // namespace sono
