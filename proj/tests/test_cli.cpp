#include <doctest.h>

#include <fstream>
#include <sstream>

#include "sonolattice/commands.hpp"

using namespace sono;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "sonolattice_tests" / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream stream(path, std::ios::binary);
    REQUIRE(stream);
    std::ostringstream out;
    out << stream.rdbuf();
    return out.str();
}

Json tetragonal_config() {
    Json config;
    config["dimension"] = 2;
    config["wave"] = Json{{"K", Json::array({Json::array({1.0, 0.0}), Json::array({0.0, 1.0})})}};
    config["coefficients"] = Json{{"a", 1.0}, {"b", 1.0}};
    config["amplitude"] = "min-eigenvector";
    return config;
}

Json line_config() {
    Json config = tetragonal_config();
    config["coefficients"] = Json{{"a", 1.0}, {"b", 0.0}};
    config["amplitude"] =
        Json{{"values", Json::array({-0.5, 0.5, -0.5, 0.5})}};
    return config;
}

}  // namespace

TEST_CASE("RunConfig validation") {
    CHECK_THROWS_AS(RunConfig::from_json(Json::array(), "."), InvalidParameter);
    CHECK_THROWS_AS(RunConfig::from_json(Json::object(), "."), InvalidParameter);

    Json config = tetragonal_config();
    CHECK_NOTHROW(RunConfig::from_json(config, "."));

    Json two_sources = config;
    two_sources["wave"]["bravais"] = Json{{"class", "tetragonal"}};
    CHECK_THROWS_AS(RunConfig::from_json(two_sources, "."), InvalidParameter);

    Json two_coeffs = config;
    two_coeffs["coefficients"]["frequency"] = 1e6;
    CHECK_THROWS_AS(RunConfig::from_json(two_coeffs, "."), InvalidParameter);

    Json bad_amplitude = config;
    bad_amplitude["amplitude"] = "largest";
    CHECK_THROWS_AS(RunConfig::from_json(bad_amplitude, "."), InvalidParameter);

    Json bad_dim = config;
    bad_dim["dimension"] = 4;
    CHECK_THROWS_AS(RunConfig::from_json(bad_dim, "."), InvalidParameter);
}

TEST_CASE("cmd_coeffs: direct pass-through and matched-particle zeros") {
    std::ostringstream out;
    std::ostringstream err;
    const RunConfig direct = RunConfig::from_json(tetragonal_config(), ".");
    CHECK(cmd_coeffs(direct, out, err) == 0);
    CHECK(out.str().find("path = direct") != std::string::npos);
    CHECK(out.str().find("a = 1") != std::string::npos);
    CHECK(out.str().find("b = 1") != std::string::npos);

    Json matched = tetragonal_config();
    matched["coefficients"] = Json{
        {"medium", Json{{"compressibility", 4.5e-10}, {"mass_density", 1000.0}}},
        {"particle", Json{{"compressibility", 4.5e-10}, {"mass_density", 1000.0}}},
        {"frequency", 1e6}};
    std::ostringstream out2;
    CHECK(cmd_coeffs(RunConfig::from_json(matched, "."), out2, err) == 0);
    CHECK(out2.str().find("a = 0\n") != std::string::npos);
    CHECK(out2.str().find("b = 0\n") != std::string::npos);
    CHECK(out2.str().find("f1 = 0\n") != std::string::npos);
}

TEST_CASE("cmd_coeffs: water/polystyrene-like contrast lies in the open range") {
    Json config = tetragonal_config();
    config["coefficients"] = Json{
        {"medium", Json{{"compressibility", 4.5e-10}, {"mass_density", 998.0}}},
        {"particle", Json{{"compressibility", 2.2e-10}, {"mass_density", 1050.0}}},
        {"frequency", 1e6}};
    const Coefficients coef = RunConfig::from_json(config, ".").coefficients_value();
    CHECK(*coef.f2 > -2.0);
    CHECK(*coef.f2 < 1.0);
}

TEST_CASE("cmd_design: cubic primitive writes the identity wavevectors") {
    const auto dir = fresh_dir("design_cubic");
    Json config;
    config["dimension"] = 3;
    config["wave"] = Json{{"bravais", Json{{"class", "cubic-primitive"}}}};
    config["coefficients"] = Json{{"a", 1.0}, {"b", 1.0}};
    config["amplitude"] = "min-eigenvector";
    config["wavenumber"] = 1.0;

    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_design(RunConfig::from_json(config, "."), dir, out, err) == 0);
    const Json wave = read_json_file(dir / "wave.json");
    CHECK(matrix_from_json(wave.at("K")).isApprox(Eigen::Matrix3d::Identity(), 1e-14));
    CHECK(wave.at("design").at("achievable").get<bool>());
    CHECK(err.str().empty());
}

TEST_CASE("cmd_design: non-achievable class warns with the implied class") {
    const auto dir = fresh_dir("design_monoclinic");
    Json config;
    config["dimension"] = 2;
    config["wave"] =
        Json{{"bravais", Json{{"class", "monoclinic"}, {"params", Json{{"gamma", 1.1}}}}}};
    config["coefficients"] = Json{{"a", 1.0}, {"b", 1.0}};
    config["amplitude"] = "min-eigenvector";

    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_design(RunConfig::from_json(config, "."), dir, out, err) == 0);
    CHECK(err.str().find("Orthorhombic centred") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "wave.json"));
}

TEST_CASE("cmd_design: unknown class fails listing valid names") {
    Json config;
    config["dimension"] = 2;
    config["wave"] = Json{{"bravais", Json{{"class", "rhombic"}}}};
    config["coefficients"] = Json{{"a", 1.0}, {"b", 1.0}};
    config["amplitude"] = "min-eigenvector";
    std::ostringstream out;
    std::ostringstream err;
    try {
        cmd_design(RunConfig::from_json(config, "."), fresh_dir("design_unknown"), out, err);
        FAIL("expected a throw");
    } catch (const InvalidParameter& e) {
        CHECK(std::string(e.what()).find("hexagonal") != std::string::npos);
    }
}

TEST_CASE("cmd_predict: four offsets for the tetragonal example") {
    const auto dir = fresh_dir("predict_tetragonal");
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_predict(RunConfig::from_json(tetragonal_config(), "."), dir, out, err) == 0);

    const Json report = read_json_file(dir / "prediction.json");
    CHECK(report.at("status") == "classified");
    CHECK(report.at("level").get<double>() == doctest::Approx(-2.0));
    REQUIRE(report.at("predictions").size() == 1);
    const Json& points = report.at("predictions").front();
    CHECK(points.at("kind") == "point-lattice");
    CHECK(points.at("offsets").size() == 4);
    CHECK(report.at("amplitude_rule").is_string());
}

TEST_CASE("cmd_predict: line family for the straddling example") {
    const auto dir = fresh_dir("predict_lines");
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_predict(RunConfig::from_json(line_config(), "."), dir, out, err) == 0);
    const Json report = read_json_file(dir / "prediction.json");
    CHECK(report.at("status") == "classified");
    bool has_lines = false;
    for (const auto& p : report.at("predictions")) {
        has_lines = has_lines || p.at("kind") == "line-family";
    }
    CHECK(has_lines);
}

TEST_CASE("cmd_predict: complex amplitudes report not-canonical but sampling works") {
    Json config = tetragonal_config();
    config["amplitude"] = Json{
        {"values", Json::array({Json{{"re", 0.5}, {"im", 0.0}}, Json{{"re", 0.0}, {"im", 0.5}},
                                Json{{"re", -0.5}, {"im", 0.0}}, Json{{"re", 0.0}, {"im", -0.5}}})}};
    const auto dir = fresh_dir("predict_complex");
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_predict(RunConfig::from_json(config, "."), dir, out, err) == 0);
    const Json report = read_json_file(dir / "prediction.json");
    CHECK(report.at("status") == "not-canonical");
    CHECK(report.at("predictions").empty());

    config["resolution"] = 16;
    std::ostringstream out2;
    CHECK(cmd_sample(RunConfig::from_json(config, "."), dir, out2, err) == 0);
    CHECK(std::filesystem::exists(dir / "field.csv"));
}

TEST_CASE("cmd_sample: summary minimum matches the lowest eigenvalue") {
    Json config = tetragonal_config();
    config["resolution"] = 256;
    const auto dir = fresh_dir("sample_tetragonal");
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_sample(RunConfig::from_json(config, "."), dir, out, err) == 0);

    const Json summary = read_json_file(dir / "summary.json");
    CHECK(summary.at("min").get<double>() == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(summary.at("bound_ok").get<bool>());

    const std::string field = slurp(dir / "field.csv");
    CHECK(field.rfind("alpha_1,alpha_2,x_1,x_2,psi\n", 0) == 0);
    CHECK(std::count(field.begin(), field.end(), '\n') == 256 * 256 + 1);
}

TEST_CASE("cmd_sample: zero amplitudes give an all-zero field") {
    Json config = tetragonal_config();
    config["amplitude"] = Json{{"values", Json::array({0.0, 0.0, 0.0, 0.0})}};
    config["resolution"] = 16;
    const auto dir = fresh_dir("sample_zero");
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_sample(RunConfig::from_json(config, "."), dir, out, err) == 0);
    const Json summary = read_json_file(dir / "summary.json");
    CHECK(summary.at("min").get<double>() == 0.0);
    CHECK(summary.at("max").get<double>() == 0.0);
}

TEST_CASE("cmd_verify: tetragonal example confirms with exit 0") {
    Json config = tetragonal_config();
    config["resolution"] = 128;
    const auto dir = fresh_dir("verify_tetragonal");
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_verify(RunConfig::from_json(config, "."), dir, out, err) == 0);
    const Json report = read_json_file(dir / "report.json");
    CHECK(report.at("all_confirmed").get<bool>());
    CHECK(report.at("bound_ok").get<bool>());
    CHECK(report.at("worst_level_error").get<double>() < 1e-9);
}

TEST_CASE("cmd_verify: corrupted stored predictions fail with exit 2") {
    Json config = tetragonal_config();
    config["resolution"] = 64;
    const auto dir = fresh_dir("verify_corrupt");
    std::ostringstream out;
    std::ostringstream err;
    REQUIRE(cmd_predict(RunConfig::from_json(config, "."), dir, out, err) == 0);

    Json stored = read_json_file(dir / "prediction.json");
    stored["predictions"][0]["offsets"][0] = Json::array({0.25, 0.25});
    write_json_file(dir / "prediction.json", stored);

    config["predictions"] = (dir / "prediction.json").string();
    std::ostringstream out2;
    CHECK(cmd_verify(RunConfig::from_json(config, "."), dir, out2, err) == 2);
    const Json report = read_json_file(dir / "report.json");
    CHECK(report.at("status") == "loaded");
    CHECK_FALSE(report.at("all_confirmed").get<bool>());
}

TEST_CASE("cmd_relax: seeded particles converge and export CSV") {
    Json config = tetragonal_config();
    config["seed"] = 7;
    config["relax"] = Json{{"particles", 20}, {"step", 0.05}, {"grad_threshold", 1e-6}};
    const auto dir = fresh_dir("relax_tetragonal");
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_relax(RunConfig::from_json(config, "."), dir, out, err) == 0);

    const std::string csv = slurp(dir / "particles.csv");
    CHECK(csv.rfind("particle,converged,iterations,alpha_1,alpha_2,psi,grad_norm\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
    CHECK(out.str().find("converged = 20/20") != std::string::npos);
}

TEST_CASE("round trip: wave.json from design feeds every other command") {
    const auto dir = fresh_dir("round_trip");
    Json design_config;
    design_config["dimension"] = 2;
    design_config["wave"] = Json{{"bravais", Json{{"class", "hexagonal"}}}};
    design_config["coefficients"] = Json{{"a", 1.0}, {"b", 1.0}};
    design_config["amplitude"] = "min-eigenvector";
    design_config["wavenumber"] = 1.0;
    std::ostringstream out;
    std::ostringstream err;
    REQUIRE(cmd_design(RunConfig::from_json(design_config, "."), dir, out, err) == 0);

    // embed the file contents verbatim as the wave source
    Json verbatim = design_config;
    verbatim["wave"] = read_json_file(dir / "wave.json");
    verbatim["resolution"] = 64;
    std::ostringstream out2;
    CHECK(cmd_predict(RunConfig::from_json(verbatim, "."), dir, out2, err) == 0);

    // or reference it by path
    Json by_file = design_config;
    by_file["wave"] = Json{{"file", (dir / "wave.json").string()}};
    by_file["resolution"] = 64;
    std::ostringstream out3;
    CHECK(cmd_verify(RunConfig::from_json(by_file, "."), dir, out3, err) == 0);
}

TEST_CASE("determinism: identical config and seed give identical bytes") {
    Json config = tetragonal_config();
    config["resolution"] = 32;
    config["seed"] = 99;
    config["relax"] = Json{{"particles", 5}};

    const auto dir_a = fresh_dir("determinism_a");
    const auto dir_b = fresh_dir("determinism_b");
    std::ostringstream sink;
    for (const auto& dir : {dir_a, dir_b}) {
        const RunConfig rc = RunConfig::from_json(config, ".");
        REQUIRE(cmd_predict(rc, dir, sink, sink) == 0);
        REQUIRE(cmd_sample(rc, dir, sink, sink) == 0);
        REQUIRE(cmd_relax(rc, dir, sink, sink) == 0);
    }
    for (const char* name : {"prediction.json", "field.csv", "summary.json", "particles.csv"}) {
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
    }
}

TEST_CASE("amplitude selection by eigenspace index") {
    Json config = tetragonal_config();
    config["amplitude"] = Json{{"eigenvalue_index", 2}, {"basis_index", 0}};
    const RunConfig rc = RunConfig::from_json(config, ".");
    const Coefficients coef = rc.coefficients_value();
    const auto wave = rc.wave_value(coef);
    const SpectralDecomposition dec = origin_eigensystem(coef, wave.cfg);
    const AmplitudeChoice choice = select_amplitude(rc, dec);
    CHECK(choice.source == "eigenspace-index");
    CHECK(choice.group == 2);
    CHECK(std::abs(choice.u.norm() - 1.0) < 1e-14);

    Json bad = config;
    bad["amplitude"] = Json{{"eigenvalue_index", 9}};
    CHECK_THROWS_AS(select_amplitude(RunConfig::from_json(bad, "."), dec), InvalidParameter);
}

TEST_CASE("physical coefficient path rejects bad media through the config") {
    Json config = tetragonal_config();
    config["coefficients"] = Json{
        {"medium", Json{{"compressibility", -1.0}, {"mass_density", 1000.0}}},
        {"particle", Json{{"compressibility", 1e-10}, {"mass_density", 1000.0}}},
        {"frequency", 1e6}};
    CHECK_THROWS_AS(RunConfig::from_json(config, ".").coefficients_value(), InvalidParameter);
}
