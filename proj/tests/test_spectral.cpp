#include <doctest.h>

#include "sonolattice/spectral.hpp"
#include "test_helpers.hpp"

using namespace sono;
using sono::testing::random_wave_config;

namespace {

Eigen::MatrixXd random_symmetric(Rng& rng, int n) {
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            A(i, j) = rng.uniform(-3.0, 3.0);
            A(j, i) = A(i, j);
        }
    }
    return A;
}

}  // namespace

TEST_CASE("symmetric_eig: identity and diagonal matrices") {
    const Eigensystem id3 = symmetric_eig(Eigen::Matrix3d::Identity());
    CHECK(id3.values(0) == doctest::Approx(1.0));
    CHECK(id3.values(1) == doctest::Approx(1.0));
    CHECK(id3.values(2) == doctest::Approx(1.0));

    Eigen::Matrix2d diag;
    diag << 3.0, 0.0, 0.0, 1.0;
    const Eigensystem two = symmetric_eig(diag);
    CHECK(two.values(0) == doctest::Approx(3.0));
    CHECK(two.values(1) == doctest::Approx(1.0));
    CHECK(std::abs(two.vectors(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(two.vectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("symmetric_eig: reconstruction and orthonormality oracles") {
    Rng rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 5.0);  // 2..6
        const Eigen::MatrixXd S = random_symmetric(rng, n);
        const Eigensystem eig = symmetric_eig(S);

        const Eigen::MatrixXd reconstructed =
            eig.vectors * eig.values.asDiagonal() * eig.vectors.transpose();
        CHECK((S - reconstructed).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, S.norm()));
        CHECK((eig.vectors.transpose() * eig.vectors - Eigen::MatrixXd::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
        for (int i = 1; i < n; ++i) {
            CHECK(eig.values(i - 1) >= eig.values(i));
        }
    }
}

TEST_CASE("symmetric_eig rejects non-symmetric input") {
    Eigen::Matrix2d bad;
    bad << 1.0, 2.0, 0.0, 1.0;
    CHECK_THROWS_AS(symmetric_eig(bad), InvalidParameter);
    CHECK_THROWS_AS(symmetric_eig(Eigen::MatrixXd::Ones(2, 3)), DimensionMismatch);
}

TEST_CASE("origin_eigensystem: paper-golden spectra") {
    const WaveConfig cfg2 = wave_config_from_K(Eigen::Matrix2d::Identity());
    const WaveConfig cfg3 = wave_config_from_K(Eigen::Matrix3d::Identity());

    const SpectralDecomposition four_point = origin_eigensystem(Coefficients::direct(1, 1), cfg2);
    Eigen::Vector4d expected_fp(4.0, 0.0, -2.0, -2.0);
    CHECK((four_point.eigenvalues - expected_fp).cwiseAbs().maxCoeff() < 1e-12);

    const SpectralDecomposition lines = origin_eigensystem(Coefficients::direct(1, 0), cfg2);
    Eigen::Vector4d expected_lines(4.0, 0.0, 0.0, 0.0);
    CHECK((lines.eigenvalues - expected_lines).cwiseAbs().maxCoeff() < 1e-12);

    const SpectralDecomposition planes = origin_eigensystem(Coefficients::direct(1, 0), cfg3);
    Eigen::VectorXd expected_planes(6);
    expected_planes << 6.0, 0.0, 0.0, 0.0, 0.0, 0.0;
    CHECK((planes.eigenvalues - expected_planes).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(planes.groups.size() == 2);
    CHECK(planes.group_character(1) == HCharacter::Straddling);
}

TEST_CASE("origin_eigensystem: structure of the top eigenpair and the zero space") {
    Rng rng(103);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const WaveConfig cfg = random_wave_config(rng, d);
        const double a = rng.uniform(-2.0, 2.0);
        const double b = rng.uniform(0.1, 2.0);
        const SpectralDecomposition dec = origin_eigensystem(Coefficients::direct(a, b), cfg);

        // one eigenvalue 2 a d along [1;1], zero with multiplicity >= d-1
        int count_top = 0;
        int count_zero = 0;
        for (int i = 0; i < 2 * d; ++i) {
            if (std::abs(dec.eigenvalues(i) - 2.0 * a * d) < 1e-10) {
                ++count_top;
            }
            if (std::abs(dec.eigenvalues(i)) < 1e-10) {
                ++count_zero;
            }
        }
        CHECK(count_top >= 1);
        CHECK(count_zero >= d - 1);

        const Eigen::VectorXd ones_dir = Eigen::VectorXd::Constant(2 * d, 1.0 / std::sqrt(2.0 * d));
        bool found_ones = false;
        for (int i = 0; i < 2 * d; ++i) {
            if (std::abs(dec.eigenvalues(i) - 2.0 * a * d) < 1e-10 &&
                (dec.eigenvectors.col(i) - ones_dir).cwiseAbs().maxCoeff() < 1e-10) {
                found_ones = true;
            }
        }
        CHECK(found_ones);
    }
}

TEST_CASE("origin_eigensystem matches the general solver on random draws") {
    Rng rng(107);
    for (int trial = 0; trial < 40; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const WaveConfig cfg = random_wave_config(rng, d);
        const Coefficients coef =
            Coefficients::direct(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const Eigen::MatrixXd q0 = potential_matrix_origin(coef, cfg);

        const SpectralDecomposition structured = origin_eigensystem(coef, cfg);
        const Eigensystem general = symmetric_eig(q0);

        CHECK((structured.eigenvalues - general.values).cwiseAbs().maxCoeff() < 1e-10);
        const Eigen::MatrixXd reconstructed = structured.eigenvectors *
                                              structured.eigenvalues.asDiagonal() *
                                              structured.eigenvectors.transpose();
        CHECK((reconstructed - q0).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((structured.eigenvectors.transpose() * structured.eigenvectors -
               Eigen::MatrixXd::Identity(2 * d, 2 * d))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
}

TEST_CASE("origin_eigensystem: every basis vector is exactly [w;w] or [w;-w]") {
    Rng rng(109);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = trial % 2 == 0 ? 2 : 3;
        const WaveConfig cfg = random_wave_config(rng, d);
        const Coefficients coef =
            Coefficients::direct(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
        const SpectralDecomposition dec = origin_eigensystem(coef, cfg);
        for (int i = 0; i < 2 * d; ++i) {
            const HSplit split = h_split(dec.eigenvectors.col(i).cast<Complex>());
            const HLabel label = dec.h_labels[static_cast<std::size_t>(i)];
            REQUIRE(label != HLabel::Mixed);
            if (label == HLabel::Plus) {
                CHECK(split.minus.cwiseAbs().maxCoeff() < 1e-14);
            } else {
                CHECK(split.plus.cwiseAbs().maxCoeff() < 1e-14);
            }
        }
    }
}

TEST_CASE("h_split: pure and mixed inputs") {
    Eigen::VectorXcd sym(4);
    sym << 1.0, 2.0, 1.0, 2.0;
    const HSplit s = h_split(sym);
    CHECK((s.plus - sym).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(s.minus.cwiseAbs().maxCoeff() < 1e-15);

    Eigen::VectorXcd anti(4);
    anti << 1.0, 2.0, -1.0, -2.0;
    const HSplit a = h_split(anti);
    CHECK((a.minus - anti).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(a.plus.cwiseAbs().maxCoeff() < 1e-15);

    Rng rng(113);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::VectorXcd w = rng.complex_vector(6, -1.0, 1.0);
        const HSplit split = h_split(w);
        CHECK((split.plus + split.minus - w).cwiseAbs().maxCoeff() < 1e-15);
    }
    CHECK_THROWS_AS(h_split(Eigen::VectorXcd::Ones(5)), DimensionMismatch);
}

TEST_CASE("eigenspace_contains: membership by projection residual") {
    const WaveConfig cfg = wave_config_from_K(Eigen::Matrix2d::Identity());
    const SpectralDecomposition dec = origin_eigensystem(Coefficients::direct(1, 1), cfg);
    REQUIRE(dec.groups.size() == 3);

    for (int g = 0; g < 3; ++g) {
        for (int c : dec.groups[static_cast<std::size_t>(g)].columns) {
            CHECK(eigenspace_contains(dec, g, dec.eigenvectors.col(c).cast<Complex>()));
        }
    }
    // an eigenvector of a different eigenvalue is rejected
    CHECK_FALSE(eigenspace_contains(dec, 0, dec.eigenvectors.col(3).cast<Complex>()));

    // the lowest eigenspace is all of the [w;-w] half-space: sign-flipped
    // variants stay inside
    Eigen::VectorXcd flipped(4);
    flipped << 0.5, -0.5, -0.5, 0.5;
    CHECK(eigenspace_contains(dec, 2, flipped));

    CHECK_THROWS_AS(eigenspace_contains(dec, 0, Eigen::VectorXcd::Zero(4)), InvalidParameter);
}

TEST_CASE("min_eigenvector: prefers an all-nonzero vector and is unit norm") {
    const WaveConfig cfg = wave_config_from_K(Eigen::Matrix2d::Identity());
    const Coefficients coef = Coefficients::direct(1.0, 1.0);
    const SpectralDecomposition dec = origin_eigensystem(coef, cfg);
    const TransducerVector u = min_eigenvector(dec);

    CHECK(std::abs(u.norm() - 1.0) < 1e-14);
    CHECK((u.cwiseAbs().array() > 1e-9).all());

    // the stored basis vectors have zeros, so the pairwise-sum rule fires and
    // lands on [1,1,-1,-1]/2 up to the construction of K K^T eigenvectors
    Eigen::VectorXcd expected(4);
    expected << 0.5, 0.5, -0.5, -0.5;
    CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-12);

    // its value is the smallest eigenvalue and the bound holds when sampling
    Rng rng(127);
    for (int trial = 0; trial < 50; ++trial) {
        const double psi =
            radiation_potential(testing::random_cell_point(rng, cfg), u, coef, cfg);
        CHECK(psi >= -2.0 - 1e-9);
    }
}

TEST_CASE("min_eigenvector: simple lowest eigenvalue returns the ones direction") {
    const WaveConfig cfg = wave_config_from_K(Eigen::Matrix2d::Identity());
    const SpectralDecomposition dec = origin_eigensystem(Coefficients::direct(-1.0, 0.0), cfg);
    const TransducerVector u = min_eigenvector(dec);
    const Eigen::VectorXcd expected = Eigen::VectorXcd::Constant(4, 0.5);
    CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("eigenvalue grouping merges coincident values") {
    const WaveConfig cfg = wave_config_from_K(Eigen::Matrix3d::Identity());
    const SpectralDecomposition dec = origin_eigensystem(Coefficients::direct(1.0, 1.0), cfg);
    // spectrum {6, 0, 0, -2, -2, -2}: three groups
    REQUIRE(dec.groups.size() == 3);
    CHECK(dec.groups[0].columns.size() == 1);
    CHECK(dec.groups[1].columns.size() == 2);
    CHECK(dec.groups[2].columns.size() == 3);
    CHECK(dec.group_character(0) == HCharacter::ContainedPlus);
    CHECK(dec.group_character(1) == HCharacter::ContainedPlus);
    CHECK(dec.group_character(2) == HCharacter::ContainedMinus);
    CHECK(dec.min_group() == 2);
}
