#include "sonolattice/bravais.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sono {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBig = 1e12;  // stand-in for an unbounded open interval

Eigen::Vector2d v2(double x, double y) { return Eigen::Vector2d(x, y); }
Eigen::Vector3d v3(double x, double y, double z) { return Eigen::Vector3d(x, y, z); }

std::vector<Eigen::VectorXd> vecs(std::initializer_list<Eigen::VectorXd> list) {
    return std::vector<Eigen::VectorXd>(list);
}

double get(const LatticeParams& p, const char* name) {
    return p.scalars.at(name);
}

std::vector<BravaisEntry> make_catalog_2d() {
    std::vector<BravaisEntry> entries;

    {
        BravaisEntry e;
        e.name = "monoclinic";
        e.display_name = "Monoclinic";
        e.dimension = 2;
        e.params = {{"gamma", 0.0, kPi}};
        e.achievable = false;
        e.implied_class = "Orthorhombic centred";
        e.generator = [](const LatticeParams& p) {
            const double g = get(p, "gamma");
            return vecs({v2(1.0, -1.0 / std::tan(g)), v2(0.0, 1.0 / std::sin(g))});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "orthorhombic";
        e.display_name = "Orthorhombic";
        e.dimension = 2;
        e.achievable = false;
        e.implied_class = "Tetragonal";
        e.generator = [](const LatticeParams&) { return vecs({v2(1, 0), v2(0, 1)}); };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "orthorhombic-centred";
        e.display_name = "Orthorhombic centred";
        e.dimension = 2;
        e.params = {{"gamma", 0.0, kPi}};
        e.achievable = true;
        e.generator = [](const LatticeParams& p) {
            const double g = get(p, "gamma");
            const double x = std::sin(g / 2.0) / std::sin(g);
            const double y = 0.5 / std::sin(g / 2.0);
            return vecs({v2(x, y), v2(x, -y)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "hexagonal";
        e.display_name = "Hexagonal";
        e.dimension = 2;
        e.achievable = true;
        e.generator = [](const LatticeParams&) {
            const double s = 1.0 / std::sqrt(3.0);
            return vecs({v2(1.0, s), v2(0.0, 2.0 * s)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "tetragonal";
        e.display_name = "Tetragonal";
        e.dimension = 2;
        e.achievable = true;
        e.generator = [](const LatticeParams&) { return vecs({v2(1, 0), v2(0, 1)}); };
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<BravaisEntry> make_catalog_3d() {
    std::vector<BravaisEntry> entries;

    {
        BravaisEntry e;
        e.name = "triclinic-primitive";
        e.display_name = "Triclinic primitive";
        e.dimension = 3;
        e.takes_vectors = true;
        e.achievable = true;
        e.notes = "No closed-form generator; any three equal-norm independent vectors.";
        e.generator = [](const LatticeParams& p) {
            if (p.vectors.size() != 3) {
                throw InvalidParameter("triclinic-primitive requires exactly 3 vectors");
            }
            for (const auto& v : p.vectors) {
                if (v.size() != 3) {
                    throw DimensionMismatch("triclinic vectors must be 3D");
                }
            }
            const double n0 = p.vectors[0].norm();
            for (const auto& v : p.vectors) {
                if (std::abs(v.norm() - n0) > kEqualNormTol * std::max(n0, v.norm())) {
                    throw UnequalWavenumbers("triclinic vectors must have equal norms");
                }
            }
            return p.vectors;
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "monoclinic-primitive";
        e.display_name = "Monoclinic primitive";
        e.dimension = 3;
        e.params = {{"gamma", 0.0, kPi}};
        e.achievable = false;
        e.implied_class = "Tetragonal body-centred";
        e.notes = "Implies Cubic primitive when cos(gamma) = 0.";
        e.generator = [](const LatticeParams& p) {
            const double g = get(p, "gamma");
            return vecs({v3(-std::cos(g), -std::sin(g), 0), v3(1, 0, 0), v3(0, 0, 1)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "monoclinic-base-centred";
        e.display_name = "Monoclinic base-centred";
        e.dimension = 3;
        // Equal norms force 1/c^2 = csc(gamma)^2 (a^2 - 1)/a^2, so c is
        // derived and a must exceed 1.
        e.params = {{"a", 1.0, kBig}, {"gamma", 0.0, kPi}};
        e.achievable = false;
        e.implied_class = "Tetragonal body-centred";
        e.notes = "Cell height c is derived from a and gamma by the equal-norm constraint.";
        e.generator = [](const LatticeParams& p) {
            const double a = get(p, "a");
            const double g = get(p, "gamma");
            const double csc = 1.0 / std::sin(g);
            const double inv_c = csc * std::sqrt(a * a - 1.0) / a;
            return vecs({v3(-std::cos(g) * csc, -1.0, 0.0), v3(csc / a, 0.0, -inv_c),
                         v3(csc / a, 0.0, inv_c)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "orthorhombic-primitive";
        e.display_name = "Orthorhombic primitive";
        e.dimension = 3;
        e.achievable = false;
        e.implied_class = "Cubic primitive";
        e.generator = [](const LatticeParams&) {
            return vecs({v3(0, -1, 0), v3(1, 0, 0), v3(0, 0, 1)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "orthorhombic-base-centred";
        e.display_name = "Orthorhombic base-centred";
        e.dimension = 3;
        e.params = {{"a", 0.0, kBig}, {"b", 0.0, kBig}};
        e.achievable = false;
        e.implied_class = "Tetragonal body-centred";
        e.notes = "Implies Cubic primitive when a = b.";
        e.generator = [](const LatticeParams& p) {
            const double a = get(p, "a");
            const double b = get(p, "b");
            return vecs({v3(b, -a, 0), v3(b, a, 0), v3(0, 0, std::hypot(a, b))});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "orthorhombic-body-centred";
        e.display_name = "Orthorhombic body-centred";
        e.dimension = 3;
        e.achievable = false;
        e.implied_class = "Cubic body-centred";
        e.generator = [](const LatticeParams&) {
            return vecs({v3(1, 0, 1), v3(0, -1, 1), v3(1, -1, 0)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "orthorhombic-face-centred";
        e.display_name = "Orthorhombic face-centred";
        e.dimension = 3;
        e.params = {{"a", 0.0, kBig}, {"b", 0.0, kBig}, {"c", 0.0, kBig}};
        e.achievable = true;
        e.generator = [](const LatticeParams& p) {
            const double ia = 1.0 / get(p, "a");
            const double ib = 1.0 / get(p, "b");
            const double ic = 1.0 / get(p, "c");
            return vecs({v3(ia, ib, ic), v3(-ia, -ib, ic), v3(ia, -ib, -ic)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "tetragonal-primitive";
        e.display_name = "Tetragonal primitive";
        e.dimension = 3;
        e.achievable = false;
        e.implied_class = "Cubic primitive";
        e.generator = [](const LatticeParams&) {
            return vecs({v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "tetragonal-body-centred";
        e.display_name = "Tetragonal body-centred";
        e.dimension = 3;
        e.achievable = false;
        e.implied_class = "Cubic body-centred";
        e.generator = [](const LatticeParams&) {
            return vecs({v3(0, 1, 1), v3(1, 0, 1), v3(1, 1, 0)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "trigonal-primitive";
        e.display_name = "Trigonal primitive";
        e.dimension = 3;
        e.params = {{"a", 0.0, kBig}, {"c", 0.0, kBig}};
        e.achievable = true;
        e.generator = [](const LatticeParams& p) {
            const double a = get(p, "a");
            const double c = get(p, "c");
            const double s = 1.0 / (std::sqrt(3.0) * a);
            return vecs({v3(0.0, -2.0 / (3.0 * a), 1.0 / (3.0 * c)),
                         v3(s, 1.0 / (3.0 * a), 1.0 / (3.0 * c)),
                         v3(-s, 1.0 / (3.0 * a), 1.0 / (3.0 * c))});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "hexagonal-primitive";
        e.display_name = "Hexagonal primitive";
        e.dimension = 3;
        e.achievable = false;
        e.implied_class = "Tetragonal body-centred";
        e.notes = "Implied class printed as 'Tegragonal body-centred' in the source table.";
        e.generator = [](const LatticeParams&) {
            const double s = 1.0 / std::sqrt(3.0);
            return vecs({v3(s, -1, 0), v3(2.0 * s, 0, 0), v3(0, 0, 2.0 * s)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "cubic-primitive";
        e.display_name = "Cubic primitive";
        e.dimension = 3;
        e.achievable = true;
        e.generator = [](const LatticeParams&) {
            return vecs({v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "cubic-face-centred";
        e.display_name = "Cubic face-centred";
        e.dimension = 3;
        e.achievable = true;
        e.generator = [](const LatticeParams&) {
            return vecs({v3(-1, 1, 1), v3(1, -1, 1), v3(1, 1, -1)});
        };
        entries.push_back(std::move(e));
    }
    {
        BravaisEntry e;
        e.name = "cubic-body-centred";
        e.display_name = "Cubic body-centred";
        e.dimension = 3;
        e.achievable = true;
        e.generator = [](const LatticeParams&) {
            return vecs({v3(0, 1, 1), v3(1, 0, 1), v3(1, 1, 0)});
        };
        entries.push_back(std::move(e));
    }
    return entries;
}

}  // namespace

const std::vector<BravaisEntry>& catalog(int dimension) {
    static const std::vector<BravaisEntry> entries_2d = make_catalog_2d();
    static const std::vector<BravaisEntry> entries_3d = make_catalog_3d();
    if (dimension == 2) {
        return entries_2d;
    }
    if (dimension == 3) {
        return entries_3d;
    }
    throw InvalidParameter("supported dimensions are 2 and 3");
}

const BravaisEntry& find_class(int dimension, const std::string& name) {
    const auto& entries = catalog(dimension);
    for (const auto& e : entries) {
        if (e.name == name) {
            return e;
        }
    }
    std::ostringstream msg;
    msg << "unknown Bravais class '" << name << "' in " << dimension << "D; valid names:";
    for (const auto& e : entries) {
        msg << " " << e.name;
    }
    throw InvalidParameter(msg.str());
}

std::vector<Eigen::VectorXd> reciprocal_vectors(const BravaisEntry& entry,
                                                const LatticeParams& params) {
    if (entry.takes_vectors) {
        return entry.generator(params);
    }
    if (!params.vectors.empty()) {
        throw InvalidParameter("class '" + entry.name + "' does not accept explicit vectors");
    }
    for (const auto& spec : entry.params) {
        const auto it = params.scalars.find(spec.name);
        if (it == params.scalars.end()) {
            throw InvalidParameter("class '" + entry.name + "' requires parameter '" + spec.name +
                                   "'");
        }
        if (!(it->second > spec.min && it->second < spec.max)) {
            throw InvalidParameter("parameter '" + spec.name + "' out of range for class '" +
                                   entry.name + "'");
        }
    }
    for (const auto& [key, _] : params.scalars) {
        const bool known = std::any_of(entry.params.begin(), entry.params.end(),
                                       [&](const ParamSpec& s) { return s.name == key; });
        if (!known) {
            throw InvalidParameter("class '" + entry.name + "' does not take parameter '" + key +
                                   "'");
        }
    }
    return entry.generator(params);
}

WaveConfig design(const DesignRequest& req) {
    if (!(req.wavenumber > 0.0)) {
        throw InvalidParameter("design requires wavenumber > 0");
    }
    const BravaisEntry& entry = find_class(req.dimension, req.class_name);
    const auto gs = reciprocal_vectors(entry, req.params);
    Eigen::MatrixXd K(req.dimension, req.dimension);
    for (int j = 0; j < req.dimension; ++j) {
        const double norm = gs[static_cast<std::size_t>(j)].norm();
        if (!(norm > 0.0)) {
            throw DegenerateBasis("reciprocal vector has zero norm");
        }
        K.col(j) = req.wavenumber * gs[static_cast<std::size_t>(j)] / norm;
    }
    return wave_config_from_K(K);
}

}  // namespace sono
