#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hemo/config.hpp"
#include "hemo/output.hpp"
#include "hemo/physics.hpp"

using namespace hemo;

TEST_SUITE("output") {

TEST_CASE("restriction error against hand data") {
    // Coarse {1, 2}, fine {1, 3, 0, 8}: block means 2 and 4.
    const double e = l1_error({1.0, 2.0}, {1.0, 3.0, 0.0, 8.0}, 0.5);
    CHECK(e == doctest::Approx(0.5 * (1.0 + 2.0)));
    CHECK(l1_error({1.0, 2.0}, {1.0, 2.0}, 1.0) == 0.0);
    CHECK_THROWS_AS(l1_error({1.0, 2.0}, {1.0, 2.0, 3.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(l1_error({}, {}, 1.0), std::invalid_argument);
}

TEST_CASE("observed order") {
    CHECK(eoc(4.0, 1.0) == doctest::Approx(2.0));
    CHECK(eoc(1.931, 1.161) == doctest::Approx(0.734).epsilon(2e-3));
}

TEST_CASE("directory resolution prefers the request, then the environment") {
    char tmpl[] = "/tmp/hemo_out_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    const std::string base = tmpl;

    const std::string made = resolve_output_dir(base + "/a/b");
    CHECK(made == base + "/a/b");
    std::ofstream probe(made + "/touch.txt");
    CHECK(probe.good());

    setenv("HEMO1D_OUTPUT_DIR", (base + "/env").c_str(), 1);
    CHECK(resolve_output_dir("") == base + "/env");
    CHECK(resolve_output_dir(base + "/a") == base + "/a");
    unsetenv("HEMO1D_OUTPUT_DIR");
    CHECK(resolve_output_dir("") == ".");
}

TEST_CASE("snapshot csv carries derived pressure and velocity") {
    const char* cfg = R"({
      "edges": [
        {"id": 3, "length": 10.0, "n_cells": 2, "A0": 6.6, "rho": 1.06,
         "beta": 2.0e5, "initial": {"type": "constant", "A": 7.0, "Q": 140.0}},
        {"id": 1, "length": 10.0, "n_cells": 2, "x_left": 10.0, "A0": 6.6,
         "rho": 1.06, "beta": 2.0e5, "form": "velocity",
         "initial": {"type": "constant", "A": 6.8, "u": 12.0}}],
      "boundaries": [
        {"edge": 3, "side": "left", "type": "neumann"},
        {"edge": 3, "side": "right", "type": "neumann"},
        {"edge": 1, "side": "left", "type": "neumann"},
        {"edge": 1, "side": "right", "type": "neumann"}],
      "run": {"t_end": 0.01}
    })";
    Network net = load_config_text(cfg, "csv").network;
    Snapshot snap;
    snap.t = 0.0;
    for (const Edge& e : net.edges) snap.edges.push_back({e.state.A, e.state.Q});

    char tmpl[] = "/tmp/hemo_csv_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    const std::string path = std::string(tmpl) + "/snap.csv";
    write_snapshot_csv(path, net, snap);

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "edge_id,x,A,Q,p,u");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        REQUIRE(row.size() == 6);
        rows.push_back(row);
    }
    REQUIRE(rows.size() == 4);
    // Edge id 1 (velocity form) sorts first; x within an edge is increasing.
    CHECK(rows[0][0] == 1.0);
    CHECK(rows[0][1] == doctest::Approx(12.5));
    CHECK(rows[0][3] == doctest::Approx(6.8 * 12.0));  // flow reconstructed from u
    CHECK(rows[0][5] == doctest::Approx(12.0));
    CHECK(rows[1][1] == doctest::Approx(17.5));
    CHECK(rows[2][0] == 3.0);
    CHECK(rows[2][1] == doctest::Approx(2.5));
    CHECK(rows[2][3] == doctest::Approx(140.0));
    CHECK(rows[2][4] == doctest::Approx(pressure(net.edges[0].params, 7.0)));
    CHECK(rows[2][5] == doctest::Approx(140.0 / 7.0));

    Snapshot bad;
    CHECK_THROWS_AS(write_snapshot_csv(path, net, bad), std::invalid_argument);
}

}  // TEST_SUITE
