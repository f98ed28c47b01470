#include "hemo/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "hemo/errors.hpp"
#include "hemo/physics.hpp"

namespace hemo {

std::string resolve_output_dir(const std::string& requested) {
    std::string dir = requested;
    if (dir.empty()) {
        const char* env = std::getenv("HEMO1D_OUTPUT_DIR");
        if (env && *env) dir = env;
    }
    if (dir.empty()) dir = ".";
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw SolverError("cannot create output directory " + dir + ": " + ec.message());
    return dir;
}

void write_snapshot_csv(const std::string& path, const Network& net,
                        const Snapshot& snap) {
    if (snap.edges.size() != net.edges.size())
        throw std::invalid_argument("snapshot does not match the network");
    std::ofstream out(path);
    if (!out) throw SolverError("cannot write " + path);
    out << "edge_id,x,A,Q,p,u\n";

    std::vector<std::size_t> order(net.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return net.edges[a].id < net.edges[b].id;
    });

    char buf[512];
    for (std::size_t k : order) {
        const Edge& e = net.edges[k];
        const EdgeSnapshot& es = snap.edges[k];
        for (std::size_t i = 0; i < e.grid.n_cells; ++i) {
            const double A = es.A[i];
            const double q2 = es.Q[i];
            const double Q = e.form == ModelForm::Flow ? q2 : A * q2;
            const double u = e.form == ModelForm::Flow ? q2 / A : q2;
            const double p = pressure(e.params, A);
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", e.id,
                          e.grid.cell_center(i), A, Q, p, u);
            out << buf;
        }
    }
    if (!out) throw SolverError("write failed for " + path);
}

double l1_error(const std::vector<double>& coarse, const std::vector<double>& fine,
                double dx_coarse) {
    if (coarse.empty() || fine.size() % coarse.size() != 0)
        throw std::invalid_argument("fine grid must refine the coarse grid integrally");
    const std::size_t r = fine.size() / coarse.size();
    double sum = 0.0;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
        double mean = 0.0;
        for (std::size_t k = 0; k < r; ++k) mean += fine[j * r + k];
        mean /= static_cast<double>(r);
        sum += std::fabs(coarse[j] - mean);
    }
    return sum * dx_coarse;
}

double eoc(double err_coarse, double err_fine) {
    return std::log2(err_coarse / err_fine);
}

}  // namespace hemo
