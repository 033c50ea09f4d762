#pragma once
#include <limits>
#include <optional>
#include <string>

namespace fhb {

// Space-time grid metadata attached to field-based reports.
struct GridMeta {
    double Lx = 0.0;
    std::size_t Nx = 0;
    double tmin = 0.0;
    double tmax = 0.0;
    std::size_t Nt = 0;
};

// Shared residual summary. Invariant: pass == (max_abs <= tolerance), so a
// diagnostic-only report sets tolerance = +inf (serialized as null) instead
// of breaking the invariant.
struct ResidualReport {
    double max_abs = 0.0;
    double l2 = 0.0;
    double tolerance = std::numeric_limits<double>::infinity();
    bool pass = true;
    std::string notes;
    std::optional<GridMeta> grid;
};

// JSON object with keys max_abs, l2, pass, tolerance, notes and, when grid
// metadata is present, grid:{Lx,Nx,tmin,tmax,Nt}. Non-finite tolerance
// renders as null.
std::string to_json(const ResidualReport& r);

}  // namespace fhb
