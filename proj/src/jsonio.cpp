#include "sonolattice/jsonio.hpp"

#include <cstdio>
#include <fstream>

namespace sono {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

void dump_impl(const Json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    const std::string pad_in(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += pad_in + Json(key).dump() + ": ";
                dump_impl(value, out, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& value : j) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += pad_in;
                dump_impl(value, out, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const Json& j) {
    std::string out;
    dump_impl(j, out, 0);
    out += "\n";
    return out;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream stream(path, std::ios::binary);
    if (!stream) {
        throw Error("cannot open for writing: " + path.string());
    }
    stream << dump_json(j);
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw Error("cannot open for reading: " + path.string());
    }
    try {
        return Json::parse(stream);
    } catch (const Json::parse_error& e) {
        throw InvalidParameter("malformed JSON in " + path.string() + ": " + e.what());
    }
}

Json to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Eigen::VectorXd& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Json to_json(const Eigen::VectorXcd& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(Json{{"re", v(i).real()}, {"im", v(i).imag()}});
    }
    return out;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw InvalidParameter("expected a matrix as a list of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.front().size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = j.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw InvalidParameter("matrix rows have inconsistent lengths");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
        }
    }
    return m;
}

Eigen::VectorXd vector_from_json(const Json& j) {
    if (!j.is_array()) {
        throw InvalidParameter("expected a numeric list");
    }
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = j.at(static_cast<std::size_t>(i)).get<double>();
    }
    return v;
}

Eigen::VectorXcd complex_vector_from_json(const Json& j) {
    if (!j.is_array()) {
        throw InvalidParameter("expected a list of numbers or {re, im} pairs");
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const auto& entry = j.at(static_cast<std::size_t>(i));
        if (entry.is_number()) {
            v(i) = Complex(entry.get<double>(), 0.0);
        } else if (entry.is_object()) {
            v(i) = Complex(entry.value("re", 0.0), entry.value("im", 0.0));
        } else {
            throw InvalidParameter("amplitude entries must be numbers or {re, im} pairs");
        }
    }
    return v;
}

namespace {

Json signs_to_json(const std::vector<SignVector>& signs) {
    Json out = Json::array();
    for (const auto& s : signs) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < s.size(); ++j) {
            row.push_back(s(j));
        }
        out.push_back(std::move(row));
    }
    return out;
}

SignVector sign_from_json(const Json& j) {
    SignVector s(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        s(i) = j.at(static_cast<std::size_t>(i)).get<int>();
    }
    return s;
}

}  // namespace

Json prediction_to_json(const MinimaPrediction& p) {
    Json out;
    if (const auto* points = std::get_if<PointLatticeSet>(&p)) {
        out["kind"] = "point-lattice";
        out["level"] = points->level;
        out["A"] = to_json(points->A);
        out["signs"] = signs_to_json(points->signs);
        Json offsets = Json::array();
        for (const auto& o : points->offsets) {
            offsets.push_back(to_json(o));
        }
        out["offsets"] = offsets;
    } else if (const auto* lines = std::get_if<LineFamilySet>(&p)) {
        out["kind"] = "line-family";
        out["level"] = lines->level;
        out["K"] = to_json(lines->K);
        out["signs"] = signs_to_json(lines->signs);
        Json dirs = Json::array();
        for (const auto& d : lines->directions) {
            dirs.push_back(to_json(d));
        }
        out["directions"] = dirs;
    } else if (const auto* planes = std::get_if<PlaneFamilySet>(&p)) {
        out["kind"] = "plane-family";
        out["level"] = planes->level;
        out["K"] = to_json(planes->K);
        Json pairs = Json::array();
        for (const auto& pair : planes->pairs) {
            Json entry;
            entry["s"] = signs_to_json({pair.s}).front();
            entry["r"] = signs_to_json({pair.r}).front();
            entry["degenerate_line"] = pair.degenerate_line;
            pairs.push_back(std::move(entry));
        }
        out["pairs"] = pairs;
    } else if (const auto* subspace = std::get_if<SubspaceSet>(&p)) {
        out["kind"] = "subspace";
        out["level"] = subspace->level;
        out["zero_indices"] = subspace->zero_indices;
        out["generators"] = to_json(subspace->generators);
    }
    return out;
}

MinimaPrediction prediction_from_json(const Json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point-lattice") {
        PointLatticeSet set;
        set.level = j.at("level").get<double>();
        set.A = matrix_from_json(j.at("A"));
        for (const auto& s : j.at("signs")) {
            set.signs.push_back(sign_from_json(s));
        }
        for (const auto& o : j.at("offsets")) {
            set.offsets.push_back(vector_from_json(o));
        }
        return set;
    }
    if (kind == "line-family") {
        LineFamilySet set;
        set.level = j.at("level").get<double>();
        set.K = matrix_from_json(j.at("K"));
        for (const auto& s : j.at("signs")) {
            set.signs.push_back(sign_from_json(s));
        }
        for (const auto& d : j.at("directions")) {
            set.directions.push_back(vector_from_json(d));
        }
        return set;
    }
    if (kind == "plane-family") {
        PlaneFamilySet set;
        set.level = j.at("level").get<double>();
        set.K = matrix_from_json(j.at("K"));
        for (const auto& pair : j.at("pairs")) {
            set.pairs.push_back(PlanePair{sign_from_json(pair.at("s")), sign_from_json(pair.at("r")),
                                          pair.at("degenerate_line").get<bool>()});
        }
        return set;
    }
    if (kind == "subspace") {
        SubspaceSet set;
        set.level = j.at("level").get<double>();
        set.zero_indices = j.at("zero_indices").get<std::vector<int>>();
        set.generators = matrix_from_json(j.at("generators"));
        return set;
    }
    throw InvalidParameter("unknown prediction kind '" + kind + "'");
}

}  // namespace sono
