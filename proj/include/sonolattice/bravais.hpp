#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sonolattice/wavefield.hpp"

namespace sono {

/// Named lattice parameters. Classes draw from {a, b, c, gamma}; the
/// triclinic class takes explicit vectors instead.
struct LatticeParams {
    std::map<std::string, double> scalars;
    std::vector<Eigen::VectorXd> vectors;
};

struct ParamSpec {
    std::string name;
    double min = 0.0;  // open interval (min, max)
    double max = 0.0;
};

/// One catalog row: how to generate equal-norm reciprocal vectors for a
/// lattice class, and whether the class survives the equal-norm constraint.
struct BravaisEntry {
    std::string name;          // CLI identifier, e.g. "cubic-face-centred"
    std::string display_name;  // e.g. "Cubic face-centred"
    int dimension = 0;
    std::vector<ParamSpec> params;
    bool takes_vectors = false;  // triclinic: user supplies the vectors
    bool achievable = false;
    std::string implied_class;  // empty iff achievable
    std::string notes;
    std::function<std::vector<Eigen::VectorXd>(const LatticeParams&)> generator;
};

const std::vector<BravaisEntry>& catalog(int dimension);

/// Look up a class by CLI name; throws InvalidParameter listing valid names.
const BravaisEntry& find_class(int dimension, const std::string& name);

/// Evaluate the entry's generator after validating parameters against the
/// schema. Output vectors have equal norms for every valid parameter set.
std::vector<Eigen::VectorXd> reciprocal_vectors(const BravaisEntry& entry,
                                                const LatticeParams& params);

struct DesignRequest {
    int dimension = 0;
    std::string class_name;
    LatticeParams params;
    double wavenumber = 1.0;
};

/// Build the wave configuration whose wavevectors are the class's reciprocal
/// vectors rescaled to length k.
WaveConfig design(const DesignRequest& req);

}  // namespace sono
