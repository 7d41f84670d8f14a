#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "so3fit/errors.hpp"
#include "so3fit/io.hpp"
#include "so3fit/point_set.hpp"

using namespace so3fit;

TEST_SUITE_BEGIN("io");

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("so3fit_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
    void write(const std::string& text) const
    {
        std::ofstream out(path);
        out << text;
    }
    std::string read() const
    {
        std::ifstream in(path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

} // namespace

TEST_CASE("dataset parsing")
{
    TempFile file("ds.json");
    file.write(R"({"records": [
        {"euler": [0, 0, 0], "value": 1.0},
        {"quaternion": [1, 0, 0, 0], "value": [0.5, -0.25]},
        {"matrix": [[0,-1,0],[1,0,0],[0,0,1]], "value": 2}
    ]})");
    const Dataset ds = load_dataset(file.path);
    REQUIRE(ds.records.size() == 3);
    CHECK(distance(ds.records[0].rotation, Rotation::identity()) < 1e-12);
    CHECK(distance(ds.records[1].rotation, Rotation::identity()) < 1e-12);
    CHECK(distance(ds.records[2].rotation, rotation_z(M_PI / 2)) < 1e-12);
    CHECK(ds.records[1].value == std::complex<double>(0.5, -0.25));
}

TEST_CASE("dataset errors carry the record index")
{
    TempFile bad_value("bad1.json");
    bad_value.write(R"({"records": [{"euler": [0,0,0], "value": 1},
        {"euler": [1,1,1], "value": "oops"}]})");
    CHECK_THROWS_WITH_AS(load_dataset(bad_value.path), doctest::Contains("record 1"),
        ParseError);

    TempFile two_forms("bad2.json");
    two_forms.write(R"({"records": [{"euler": [0,0,0], "quaternion": [1,0,0,0],
        "value": 1}]})");
    CHECK_THROWS_AS(load_dataset(two_forms.path), ParseError);

    TempFile bad_quat("bad3.json");
    bad_quat.write(R"({"records": [{"quaternion": [1, 0.1, 0, 0], "value": 1}]})");
    CHECK_THROWS_AS(load_dataset(bad_quat.path), ValidationError);

    TempFile bad_matrix("bad4.json");
    bad_matrix.write(R"({"records": [{"matrix": [[1,0,0],[0,1,0],[0,0,2]], "value": 1}]})");
    CHECK_THROWS_AS(load_dataset(bad_matrix.path), ValidationError);

    TempFile not_json("bad5.json");
    not_json.write("{nope");
    CHECK_THROWS_AS(load_dataset(not_json.path), ParseError);

    TempFile empty("bad6.json");
    empty.write(R"({"records": []})");
    CHECK_THROWS_AS(load_dataset(empty.path), ParseError);
}

TEST_CASE("duplicate rotations surface both indices through the stats path")
{
    TempFile file("dup.json");
    file.write(R"({"records": [
        {"euler": [0.5, 0.25, 0], "value": 1},
        {"euler": [1.5, 1.0, 2.0], "value": 2},
        {"euler": [0.5, 0.25, 0], "value": 3}
    ]})");
    const Dataset ds = load_dataset(file.path);
    CHECK_THROWS_WITH_AS(point_set_stats(ds.rotations(), 10),
        doctest::Contains("indices 0 and 2"), DegenerateSetError);
}

TEST_CASE("model round trip is byte-identical and evaluation-exact")
{
    const KernelOrder m2(2);
    const PointSet pts = point_set_stats(
        sample_points(30, SampleMode::uniform, 77).points(), 600);
    HaarSampler sampler(78);
    Eigen::VectorXcd y(pts.size());
    for(Eigen::Index i = 0; i < y.size(); ++i)
        y[i] = {sampler.uniform() - 0.5, sampler.uniform() - 0.5};
    const SplineModel model = interpolate(pts, y, m2);

    TempFile first("model1.json"), second("model2.json");
    save_model(model, first.path);
    const SplineModel loaded = load_model(first.path);
    save_model(loaded, second.path);
    CHECK(first.read() == second.read());
    CHECK(!first.read().empty());

    for(int i = 0; i < 100; ++i) {
        const Rotation x = sampler.sample();
        CHECK(std::abs(evaluate_model(model, x) - evaluate_model(loaded, x)) <= 1e-12);
    }
}

TEST_CASE("model file validation")
{
    TempFile file("badmodel.json");
    file.write(R"({"format_version": 1, "m": 2, "l0": 1, "b_row_order": "l-asc.iota-asc.nu-asc/v1",
        "centers": [[1,0,0,0]], "alpha": [[0,0]], "beta": [{"l":0,"iota":0,"nu":0,"value":[0,0]}]})");
    CHECK_THROWS_AS(load_model(file.path), ValidationError); // l0 inconsistent with m

    TempFile missing("missingmodel.json");
    missing.write(R"({"format_version": 1})");
    CHECK_THROWS_AS(load_model(missing.path), ParseError);
}

TEST_CASE("table formatting")
{
    ConvergenceTable table;
    table.rows = {{100, 0.5, 2.0, 0.25, 0.125}, {800, 0.25, 1.0, 0.015625, 0.0078125}};
    table.sup_order = 4.0;
    table.l2_order = 4.0;
    const std::string csv = convergence_table_csv(table);
    CHECK(csv.find("size,h,rho,sup_error,l2_error") == 0);
    CHECK(csv.find("100,0.5,2.0,0.25,0.125") != std::string::npos);
    CHECK(csv.find("# fitted_order_sup,4.0") != std::string::npos);

    CkcReport report;
    report.probe_count = 2;
    report.seed = 9;
    report.stability_constant = 1.5;
    report.local_counts = {10, 12};
    const std::string json_text = ckc_report_json(report, 4, 2.5);
    CHECK(json_text.find("\"stability_K\": 1.5") != std::string::npos);
    CHECK(json_text.find("\"probe_count\": 2") != std::string::npos);
}

TEST_SUITE_END();
