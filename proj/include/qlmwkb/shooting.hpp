#pragma once

#include "qlmwkb/potential.hpp"

namespace qlmwkb {

// Independent eigenvalue solver: Numerov sweep with bisection on the
// node-count staircase, Richardson-extrapolated over a grid halving.
// Singular radial potentials run on a logarithmic grid.  Box potentials are
// not supported.  Throws OracleError when the requested level does not exist
// and BracketError on internal bracketing faults.
double shooting_oracle(const PotentialSpec& p, int n);

struct ShootingConfig {
    int grid_points = 8001;     // coarse pass; the refined pass doubles this
    double rel_tol = 1e-10;     // bisection width target, relative
    double tail_decay = 22.0;   // WKB action kept beyond the turning points
};

double shooting_oracle(const PotentialSpec& p, int n, const ShootingConfig& cfg);

}  // namespace qlmwkb
