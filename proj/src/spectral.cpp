#include "sonolattice/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sono {

namespace {

/// Flip a column so its largest-magnitude entry (first such index) is positive.
void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> col) {
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    if (col(imax) < 0.0) {
        col = -col;
    }
}

double off_diagonal_norm(const Eigen::MatrixXd& A) {
    double sum = 0.0;
    for (Eigen::Index p = 0; p < A.rows(); ++p) {
        for (Eigen::Index q = 0; q < A.cols(); ++q) {
            if (p != q) {
                sum += A(p, q) * A(p, q);
            }
        }
    }
    return std::sqrt(sum);
}

void sort_descending(Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const int n = static_cast<int>(values.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return values(i) > values(j); });
    Eigen::VectorXd sorted_values(n);
    Eigen::MatrixXd sorted_vectors(vectors.rows(), n);
    for (int i = 0; i < n; ++i) {
        sorted_values(i) = values(order[i]);
        sorted_vectors.col(i) = vectors.col(order[i]);
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

std::vector<Eigenspace> group_eigenvalues(const Eigen::VectorXd& values) {
    const int n = static_cast<int>(values.size());
    const double tol = kEigenvalueGroupTol * (1.0 + values.cwiseAbs().maxCoeff());
    std::vector<Eigenspace> groups;
    for (int i = 0; i < n; ++i) {
        if (groups.empty() || groups.back().value - values(i) > tol) {
            groups.push_back(Eigenspace{values(i), {i}});
        } else {
            groups.back().columns.push_back(i);
        }
    }
    return groups;
}

}  // namespace

Eigensystem symmetric_eig(const Eigen::MatrixXd& S) {
    if (S.rows() != S.cols()) {
        throw DimensionMismatch("matrix must be square");
    }
    const int n = static_cast<int>(S.rows());
    const double scale = n > 0 ? S.cwiseAbs().maxCoeff() : 0.0;
    if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale)) {
        throw InvalidParameter("matrix is not symmetric");
    }

    Eigen::MatrixXd A = S;
    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n);
    const double frob = S.norm();
    const double target = 1e-14 * frob;
    const double skip = 1e-18 * std::max(scale, 1e-300);

    bool converged = false;
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(A) <= target) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= skip) {
                    continue;
                }
                const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A <- J^T A J with the rotation J acting on columns p, q.
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p);
                    const double akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k);
                    const double aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p);
                    const double vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (!converged && off_diagonal_norm(A) > target) {
        throw Error("jacobi iteration did not converge within 100 sweeps");
    }

    Eigensystem out;
    out.values = A.diagonal();
    out.vectors = std::move(V);
    sort_descending(out.values, out.vectors);
    for (int j = 0; j < n; ++j) {
        canonicalize_sign(out.vectors.col(j));
    }
    return out;
}

HCharacter SpectralDecomposition::group_character(int group) const {
    const auto& cols = groups.at(static_cast<std::size_t>(group)).columns;
    bool any_plus = false;
    bool any_minus = false;
    for (int c : cols) {
        switch (h_labels.at(static_cast<std::size_t>(c))) {
            case HLabel::Plus:
                any_plus = true;
                break;
            case HLabel::Minus:
                any_minus = true;
                break;
            case HLabel::Mixed:
                any_plus = any_minus = true;
                break;
        }
    }
    if (any_plus && any_minus) {
        return HCharacter::Straddling;
    }
    return any_plus ? HCharacter::ContainedPlus : HCharacter::ContainedMinus;
}

SpectralDecomposition origin_eigensystem(const Coefficients& coef, const WaveConfig& cfg) {
    const int d = cfg.dimension;
    const int n = 2 * d;

    // sigma_j and u_j from K^T K (u_j are the right singular vectors of K);
    // K^T K and K K^T share the same eigenvalues.
    const Eigensystem kkt = symmetric_eig(cfg.K.transpose() * cfg.K);
    if (kkt.values.minCoeff() <= 0.0) {
        throw DegenerateBasis("K^T K must be positive definite");
    }

    // Orthonormal basis of the orthogonal complement of the all-ones vector,
    // from Gram-Schmidt on e_1 - e_2, e_2 - e_3, ...
    Eigen::MatrixXd zbasis(d, d - 1);
    for (int i = 0; i < d - 1; ++i) {
        Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
        w(i) = 1.0;
        w(i + 1) = -1.0;
        for (int j = 0; j < i; ++j) {
            w -= zbasis.col(j).dot(w) * zbasis.col(j);
        }
        zbasis.col(i) = w / w.norm();
    }

    Eigen::VectorXd values(n);
    Eigen::MatrixXd vectors(n, n);
    std::vector<HLabel> labels(static_cast<std::size_t>(n));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    values(0) = 2.0 * coef.a * d;
    vectors.col(0) = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(2.0 * d));
    labels[0] = HLabel::Plus;

    for (int i = 0; i < d - 1; ++i) {
        values(1 + i) = 0.0;
        vectors.col(1 + i).head(d) = inv_sqrt2 * zbasis.col(i);
        vectors.col(1 + i).tail(d) = inv_sqrt2 * zbasis.col(i);
        labels[static_cast<std::size_t>(1 + i)] = HLabel::Plus;
    }

    for (int j = 0; j < d; ++j) {
        values(d + j) = -2.0 * coef.b * kkt.values(j);
        vectors.col(d + j).head(d) = inv_sqrt2 * kkt.vectors.col(j);
        vectors.col(d + j).tail(d) = -inv_sqrt2 * kkt.vectors.col(j);
        labels[static_cast<std::size_t>(d + j)] = HLabel::Minus;
    }

    // Stable sort keeps the construction order within equal eigenvalues, so
    // the H+ members of a merged group come first.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return values(i) > values(j); });

    SpectralDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors.resize(n, n);
    dec.h_labels.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        dec.eigenvalues(i) = values(order[i]);
        dec.eigenvectors.col(i) = vectors.col(order[i]);
        canonicalize_sign(dec.eigenvectors.col(i));
        dec.h_labels[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(order[i])];
    }
    dec.groups = group_eigenvalues(dec.eigenvalues);
    return dec;
}

HSplit h_split(const Eigen::VectorXcd& w) {
    if (w.size() % 2 != 0) {
        throw DimensionMismatch("h_split requires an even-length vector");
    }
    const Eigen::Index d = w.size() / 2;
    const Eigen::VectorXcd sym = 0.5 * (w.head(d) + w.tail(d));
    const Eigen::VectorXcd anti = 0.5 * (w.head(d) - w.tail(d));
    HSplit out;
    out.plus.resize(2 * d);
    out.plus.head(d) = sym;
    out.plus.tail(d) = sym;
    out.minus.resize(2 * d);
    out.minus.head(d) = anti;
    out.minus.tail(d) = -anti;
    return out;
}

bool eigenspace_contains(const SpectralDecomposition& dec, int group, const Eigen::VectorXcd& w,
                         double tol) {
    const double norm = w.norm();
    if (!(norm > 0.0)) {
        throw InvalidParameter("membership test requires a nonzero vector");
    }
    const auto& cols = dec.groups.at(static_cast<std::size_t>(group)).columns;
    Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(w.size());
    for (int c : cols) {
        const Eigen::VectorXd basis = dec.eigenvectors.col(c);
        projected += (basis.cast<Complex>().dot(w)) * basis.cast<Complex>();
    }
    return (w - projected).norm() <= tol * norm;
}

TransducerVector min_eigenvector(const SpectralDecomposition& dec) {
    const auto& cols = dec.groups.back().columns;
    const auto all_nonzero = [](const Eigen::VectorXd& v) {
        return (v.cwiseAbs().array() > kZeroEntryTol).all();
    };

    std::vector<Eigen::VectorXd> candidates;
    for (int c : cols) {
        candidates.push_back(dec.eigenvectors.col(c));
    }
    const std::size_t basis_count = candidates.size();
    for (std::size_t i = 0; i < basis_count; ++i) {
        for (std::size_t j = i + 1; j < basis_count; ++j) {
            Eigen::VectorXd sum = candidates[i] + candidates[j];
            candidates.push_back(sum / sum.norm());
        }
    }
    for (const auto& cand : candidates) {
        if (all_nonzero(cand)) {
            return cand.cast<Complex>();
        }
    }
    return dec.eigenvectors.col(cols.front()).cast<Complex>();
}

}  // namespace sono
