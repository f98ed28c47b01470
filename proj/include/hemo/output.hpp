#pragma once

#include <string>
#include <vector>

#include "hemo/network.hpp"

namespace hemo {

// Output directory resolution order: explicit request, HEMO1D_OUTPUT_DIR,
// current directory. Creates the directory if needed.
std::string resolve_output_dir(const std::string& requested);

// One snapshot as CSV with header edge_id,x,A,Q,p,u; %.17g round-trip
// precision; rows ordered by edge id, then x. Q is always the flow and u the
// mean velocity, whichever form the edge evolves.
void write_snapshot_csv(const std::string& path, const Network& net,
                        const Snapshot& snap);

// L1 distance between a coarse grid function and the cell-averaged
// restriction of a finer one covering the same interval; the fine size must
// be an integer multiple of the coarse size.
double l1_error(const std::vector<double>& coarse, const std::vector<double>& fine,
                double dx_coarse);

// Observed order log2(err_coarse / err_fine) for a mesh refinement by 2.
double eoc(double err_coarse, double err_fine);

}  // namespace hemo
