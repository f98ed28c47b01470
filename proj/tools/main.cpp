// Command-line front end: integrate a network config, run one of the built-in
// studies, or just validate a config. Diagnostics go to stderr; data files go
// to the output directory. Exit codes: 0 success, 2 bad input or usage,
// 3 runtime failure.

#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hemo/config.hpp"
#include "hemo/errors.hpp"
#include "hemo/kernels.hpp"
#include "hemo/output.hpp"
#include "hemo/study.hpp"

namespace {

int apply_kernel_choice(const std::string& name) {
    if (name.empty()) return 0;
    if (!hemo::kernels::select(name)) {
        std::fprintf(stderr, "hemo1d: unknown or unsupported kernel backend '%s' (have:", name.c_str());
        for (const char* const* k = hemo::kernels::available(); *k; ++k)
            std::fprintf(stderr, " %s", *k);
        std::fprintf(stderr, ")\n");
        return 2;
    }
    return 0;
}

FILE* open_out(const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw hemo::SolverError("cannot open output file " + path);
    return f;
}

int cmd_run(const std::string& config_path, const hemo::ConfigOverrides& ov,
            const std::string& out_flag) {
    hemo::LoadedConfig cfg = hemo::load_config_file(config_path, ov);
    const std::string dir =
        hemo::resolve_output_dir(out_flag.empty() ? cfg.output_dir : out_flag);

    std::fprintf(stderr, "hemo1d: %zu edge(s), %zu junction(s), kernels=%s\n",
                 cfg.network.edges.size(), cfg.network.junctions.size(),
                 hemo::kernels::active().name);
    hemo::SimulationRecord rec = cfg.network.run();
    std::fprintf(stderr, "hemo1d: %zu step(s) to t=%.6g, max wave speed %.6g\n",
                 rec.steps, rec.final_time, rec.max_wave_speed);
    if (!cfg.network.junctions.empty())
        std::fprintf(stderr, "hemo1d: max junction flux defect %.3e\n",
                     rec.max_junction_flux_defect);

    for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "snapshot_%03zu.csv", i);
        const std::string path = dir + "/" + name;
        hemo::write_snapshot_csv(path, cfg.network, rec.snapshots[i]);
        std::fprintf(stderr, "hemo1d: wrote %s (t=%.6g)\n", path.c_str(),
                     rec.snapshots[i].t);
    }
    return 0;
}

void write_convergence_csv(const std::string& path, const hemo::ConvergenceResult& r) {
    FILE* f = open_out(path);
    std::fprintf(f, "cells,errA,eocA,errQ,eocQ\n");
    for (const auto& row : r.rows)
        std::fprintf(f, "%zu,%.10g,%.4f,%.10g,%.4f\n", row.cells, row.errA,
                     row.eocA, row.errQ, row.eocQ);
    std::fclose(f);
}

void write_coupling_csv(const std::string& path, const hemo::CouplingResult& r) {
    FILE* f = open_out(path);
    std::fprintf(f, "cells,e_flow,eoc_flow,e_pt,eoc_pt\n");
    for (const auto& row : r.rows)
        std::fprintf(f, "%zu,%.10g,%.4f,%.10g,%.4f\n", row.cells, row.e_flow,
                     row.eoc_flow, row.e_pt, row.eoc_pt);
    std::fclose(f);
}

int cmd_study(const std::string& name, int order, const std::string& out_flag) {
    const std::string dir = hemo::resolve_output_dir(out_flag);
    std::fprintf(stderr, "hemo1d: study %s, kernels=%s\n", name.c_str(),
                 hemo::kernels::active().name);

    if (name == "smooth_bump" || name == "inlet_pulse") {
        hemo::ConvergenceResult r = (name == "smooth_bump")
                                        ? hemo::study_smooth_bump(order)
                                        : hemo::study_inlet_pulse(order);
        for (const auto& row : r.rows)
            std::fprintf(stderr, "  %5zu  errA %.4e (%.3f)  errQ %.4e (%.3f)\n",
                         row.cells, row.errA, row.eocA, row.errQ, row.eocQ);
        const std::string path = dir + "/" + name + "_order" + std::to_string(order) + ".csv";
        write_convergence_csv(path, r);
        std::fprintf(stderr, "hemo1d: wrote %s\n", path.c_str());
        return 0;
    }
    if (name == "junction_area" || name == "junction_stiffness") {
        hemo::CouplingResult r = hemo::study_junction_mismatch(name == "junction_stiffness");
        for (const auto& row : r.rows)
            std::fprintf(stderr, "  %5zu  e_flow %.4e (%.3f)  e_pt %.4e (%.3f)\n",
                         row.cells, row.e_flow, row.eoc_flow, row.e_pt, row.eoc_pt);
        const std::string path = dir + "/" + name + ".csv";
        write_coupling_csv(path, r);
        std::fprintf(stderr, "hemo1d: wrote %s\n", path.c_str());
        return 0;
    }
    if (name == "wall_damping") {
        hemo::DampingCompare r = hemo::study_wall_damping();
        const std::string path = dir + "/wall_damping.csv";
        FILE* f = open_out(path);
        std::fprintf(f, "wall,max_Q,tv_A\n");
        std::fprintf(f, "elastic,%.10g,%.10g\n", r.max_Q_elastic, r.tv_A_elastic);
        std::fprintf(f, "viscoelastic,%.10g,%.10g\n", r.max_Q_damped, r.tv_A_damped);
        std::fclose(f);
        std::fprintf(stderr,
                     "  elastic      max|Q| %.6g  TV(A) %.6g\n"
                     "  viscoelastic max|Q| %.6g  TV(A) %.6g\n",
                     r.max_Q_elastic, r.tv_A_elastic, r.max_Q_damped, r.tv_A_damped);
        std::fprintf(stderr, "hemo1d: wrote %s\n", path.c_str());
        return 0;
    }
    if (name == "relaxation_limit") {
        const std::vector<double> eps = {1e-2, 1e-4, 1e-6, 1e-8};
        std::vector<hemo::RelaxationRow> rows = hemo::study_relaxation_limit(eps);
        const std::string path = dir + "/relaxation_limit.csv";
        FILE* f = open_out(path);
        std::fprintf(f, "epsilon,deviation\n");
        for (const auto& row : rows) {
            std::fprintf(f, "%.3e,%.10g\n", row.epsilon, row.deviation);
            std::fprintf(stderr, "  eps %.1e  deviation %.4e\n", row.epsilon,
                         row.deviation);
        }
        std::fclose(f);
        std::fprintf(stderr, "hemo1d: wrote %s\n", path.c_str());
        return 0;
    }
    std::fprintf(stderr,
                 "hemo1d: unknown study '%s' (have: smooth_bump, inlet_pulse, "
                 "junction_area, junction_stiffness, wall_damping, relaxation_limit)\n",
                 name.c_str());
    return 2;
}

int cmd_validate(const std::string& config_path) {
    hemo::LoadedConfig cfg = hemo::load_config_file(config_path);
    std::printf("%s: ok (%zu edge(s), %zu junction(s))\n", config_path.c_str(),
                cfg.network.edges.size(), cfg.network.junctions.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D blood-flow network simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    std::string kernels_flag;
    hemo::ConfigOverrides ov;

    CLI::App* run = app.add_subcommand("run", "integrate a network config and write snapshots");
    run->add_option("config", config_path, "JSON network config")->required();
    run->add_option("--cfl", ov.cfl, "override run.cfl");
    run->add_option("--cells", ov.cells, "override n_cells on every edge");
    run->add_option("--epsilon", ov.epsilon, "override the relaxation rate");
    run->add_option("--out", out_flag, "output directory");
    run->add_option("--kernels", kernels_flag, "backend: scalar, avx2, neon, auto");

    std::string study_name;
    int order = 1;
    CLI::App* study = app.add_subcommand("study", "run a built-in study and write its table");
    study->add_option("name", study_name,
                      "smooth_bump | inlet_pulse | junction_area | junction_stiffness | "
                      "wall_damping | relaxation_limit")
        ->required();
    study->add_option("--order", order, "spatial order (1 or 2)")->check(CLI::Range(1, 2));
    study->add_option("--out", out_flag, "output directory");
    study->add_option("--kernels", kernels_flag, "backend: scalar, avx2, neon, auto");

    CLI::App* validate = app.add_subcommand("validate", "parse and validate a config, then exit");
    validate->add_option("config", config_path, "JSON network config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help/version exit cleanly, usage errors do not
    }

    try {
        if (const int rc = apply_kernel_choice(kernels_flag)) return rc;
        if (run->parsed()) return cmd_run(config_path, ov, out_flag);
        if (study->parsed()) return cmd_study(study_name, order, out_flag);
        if (validate->parsed()) return cmd_validate(config_path);
    } catch (const hemo::ConfigError& e) {
        std::fprintf(stderr, "hemo1d: config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "hemo1d: invalid input: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "hemo1d: error: %s\n", e.what());
        return 3;
    }
    return 0;
}
