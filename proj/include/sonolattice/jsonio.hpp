#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sonolattice/levelsets.hpp"
#include "sonolattice/sampler.hpp"

namespace sono {

using Json = nlohmann::json;

/// Serialize with floating-point numbers printed to 17 significant digits so
/// doubles round-trip exactly. Two-space indent, sorted keys, trailing
/// newline.
std::string dump_json(const Json& j);
void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

/// "%.17g" rendering shared by the JSON and CSV writers.
std::string format_number(double value);

Json to_json(const Eigen::MatrixXd& m);  // list of rows
Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::VectorXcd& v);  // list of {re, im}
Eigen::MatrixXd matrix_from_json(const Json& j);
Eigen::VectorXd vector_from_json(const Json& j);
Eigen::VectorXcd complex_vector_from_json(const Json& j);

Json prediction_to_json(const MinimaPrediction& p);
MinimaPrediction prediction_from_json(const Json& j);

}  // namespace sono
