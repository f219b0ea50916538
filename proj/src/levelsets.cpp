#include "sonolattice/levelsets.hpp"

#include <cmath>
#include <limits>

namespace sono {

namespace {

/// Enumerate {0,1}^d as bitmask order, component j = bit j.
std::vector<SignVector> all_sign_vectors(int d) {
    std::vector<SignVector> out;
    out.reserve(std::size_t{1} << d);
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        SignVector s(d);
        for (int j = 0; j < d; ++j) {
            s(j) = static_cast<int>((mask >> j) & 1u);
        }
        out.push_back(std::move(s));
    }
    return out;
}

Eigen::VectorXcd stack_canonical(const Eigen::VectorXd& top, CanonicalSign sign) {
    const Eigen::Index d = top.size();
    Eigen::VectorXcd w(2 * d);
    w.head(d) = top.cast<Complex>();
    w.tail(d) = (sign == CanonicalSign::Plus ? 1.0 : -1.0) * top.cast<Complex>();
    return w;
}

CanonicalSign opposite(CanonicalSign sign) {
    return sign == CanonicalSign::Plus ? CanonicalSign::Minus : CanonicalSign::Plus;
}

bool is_uniform_flip(const SignVector& s, const SignVector& r) {
    // (-1)^{s+r} in {-1, 1}^d collapses the pair's plane to a line.
    const int parity = (s(0) + r(0)) % 2;
    for (Eigen::Index j = 1; j < s.size(); ++j) {
        if ((s(j) + r(j)) % 2 != parity) {
            return false;
        }
    }
    return true;
}

}  // namespace

Eigen::VectorXd flip_vector(const SignVector& s) {
    Eigen::VectorXd f(s.size());
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        f(j) = (s(j) % 2 == 0) ? 1.0 : -1.0;
    }
    return f;
}

std::optional<CanonicalForm> canonical_form(const TransducerVector& u, double tol) {
    if (u.size() == 0 || u.size() % 2 != 0) {
        throw DimensionMismatch("amplitude vector must have even positive length");
    }
    if (!(u.norm() > 0.0)) {
        throw InvalidParameter("amplitude vector must be nonzero");
    }
    const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
    if (u.imag().cwiseAbs().maxCoeff() > tol * scale) {
        return std::nullopt;
    }
    const Eigen::Index d = u.size() / 2;
    const Eigen::VectorXd top = u.real().head(d);
    const Eigen::VectorXd bot = u.real().tail(d);
    if ((top - bot).cwiseAbs().maxCoeff() <= tol * scale) {
        return CanonicalForm{0.5 * (top + bot), CanonicalSign::Plus};
    }
    if ((top + bot).cwiseAbs().maxCoeff() <= tol * scale) {
        return CanonicalForm{0.5 * (top - bot), CanonicalSign::Minus};
    }
    return std::nullopt;
}

double prediction_level(const MinimaPrediction& p) {
    return std::visit([](const auto& set) { return set.level; }, p);
}

std::vector<SignVector> point_flip_set(const SpectralDecomposition& dec, int group,
                                       const CanonicalForm& cf, double tol) {
    std::vector<SignVector> out;
    for (const SignVector& s : all_sign_vectors(static_cast<int>(cf.v.size()))) {
        const Eigen::VectorXd flipped = flip_vector(s).cwiseProduct(cf.v);
        if (eigenspace_contains(dec, group, stack_canonical(flipped, cf.sign), tol)) {
            out.push_back(s);
        }
    }
    return out;
}

std::vector<SignVector> line_flip_set(const SpectralDecomposition& dec, int group,
                                      const CanonicalForm& cf, double tol) {
    std::vector<SignVector> out;
    for (const SignVector& s : all_sign_vectors(static_cast<int>(cf.v.size()))) {
        const Eigen::VectorXd flipped = flip_vector(s).cwiseProduct(cf.v);
        if (eigenspace_contains(dec, group, stack_canonical(flipped, opposite(cf.sign)), tol)) {
            out.push_back(s);
        }
    }
    return out;
}

std::vector<PlanePair> plane_flip_pairs(const SpectralDecomposition& dec, int group,
                                        const CanonicalForm& cf, double tol) {
    const int d = static_cast<int>(cf.v.size());
    const auto signs = all_sign_vectors(d);
    std::vector<PlanePair> out;
    for (const SignVector& s : signs) {
        const Eigen::VectorXd fs = flip_vector(s).cwiseProduct(cf.v);
        if (!eigenspace_contains(dec, group, stack_canonical(fs, opposite(cf.sign)), tol)) {
            continue;
        }
        for (const SignVector& r : signs) {
            const Eigen::VectorXd fr = flip_vector(r).cwiseProduct(cf.v);
            if (!eigenspace_contains(dec, group, stack_canonical(fr, opposite(cf.sign)), tol)) {
                continue;
            }
            const Eigen::VectorXd fsr = flip_vector(s).cwiseProduct(flip_vector(r)).cwiseProduct(cf.v);
            if (!eigenspace_contains(dec, group, stack_canonical(fsr, cf.sign), tol)) {
                continue;
            }
            out.push_back(PlanePair{s, r, is_uniform_flip(s, r)});
        }
    }
    return out;
}

std::optional<SubspaceSet> zero_entry_subspace(const CanonicalForm& cf, const WaveConfig& cfg,
                                               double level, double zero_tol) {
    std::vector<int> zeros;
    for (Eigen::Index j = 0; j < cf.v.size(); ++j) {
        if (std::abs(cf.v(j)) <= zero_tol) {
            zeros.push_back(static_cast<int>(j));
        }
    }
    if (zeros.empty()) {
        return std::nullopt;
    }
    SubspaceSet set;
    set.level = level;
    set.zero_indices = zeros;
    set.generators.resize(cfg.dimension, static_cast<Eigen::Index>(zeros.size()));
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        set.generators.col(static_cast<Eigen::Index>(i)) = cfg.A.col(zeros[i]);
    }
    return set;
}

Classification classify_level_set(const SpectralDecomposition& dec, int group,
                                  const TransducerVector& u, const WaveConfig& cfg, double tol) {
    if (std::abs(u.norm() - 1.0) > 1e-6) {
        throw InvalidParameter("classification requires a unit-norm amplitude vector");
    }
    if (!eigenspace_contains(dec, group, u, tol)) {
        throw InvalidParameter("amplitude vector is not in the selected eigenspace");
    }

    Classification result;
    const auto cf = canonical_form(u, tol);
    if (!cf) {
        result.canonical = false;
        result.branches.push_back("not-canonical");
        return result;
    }
    result.canonical = true;

    const double level = dec.groups.at(static_cast<std::size_t>(group)).value;
    const auto subspace = zero_entry_subspace(*cf, cfg, level);
    if (subspace) {
        result.predictions.emplace_back(*subspace);
        result.branches.push_back("zero-entry-subspace");
    }

    const HCharacter character = dec.group_character(group);
    if (character == HCharacter::Straddling) {
        const auto lines = line_flip_set(dec, group, *cf, tol);
        if (!lines.empty()) {
            LineFamilySet set;
            set.level = level;
            set.K = cfg.K;
            set.signs = lines;
            for (const SignVector& s : lines) {
                set.directions.push_back(flip_vector(s));
            }
            result.predictions.emplace_back(std::move(set));
            result.branches.push_back("straddling-lines");
        }
        const auto pairs = plane_flip_pairs(dec, group, *cf, tol);
        if (!pairs.empty()) {
            PlaneFamilySet set;
            set.level = level;
            set.K = cfg.K;
            set.pairs = pairs;
            result.predictions.emplace_back(std::move(set));
            result.branches.push_back("straddling-planes");
        }
    } else if (!subspace) {
        PointLatticeSet set;
        set.level = level;
        set.A = cfg.A;
        set.signs = point_flip_set(dec, group, *cf, tol);
        for (const SignVector& s : set.signs) {
            set.offsets.push_back(0.5 * s.cast<double>());
        }
        result.predictions.emplace_back(std::move(set));
        result.branches.push_back("point-lattice");
    }
    return result;
}

double distance_to_point_lattice(const Eigen::VectorXd& alpha, const PointLatticeSet& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& offset : set.offsets) {
        best = std::min(best, wrap_centered(alpha - offset).norm());
    }
    return best;
}

double distance_to_line_family(const Eigen::VectorXd& alpha, const LineFamilySet& set) {
    const int d = static_cast<int>(alpha.size());
    const Eigen::VectorXd base = wrap_unit(alpha);
    double best = std::numeric_limits<double>::infinity();
    const int shifts = static_cast<int>(std::pow(3.0, d));
    for (const auto& dir : set.directions) {
        const Eigen::VectorXd g = dir.normalized();
        for (int code = 0; code < shifts; ++code) {
            Eigen::VectorXd delta = base;
            int rest = code;
            for (int j = 0; j < d; ++j) {
                delta(j) += static_cast<double>(rest % 3 - 1);
                rest /= 3;
            }
            const Eigen::VectorXd perp = delta - delta.dot(g) * g;
            best = std::min(best, perp.norm());
        }
    }
    return best;
}

}  // namespace sono
