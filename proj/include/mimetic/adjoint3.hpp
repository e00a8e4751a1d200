#pragma once
// Checks that the composed operators built from the starred differences are
// the adjoints of the primal ones in the weighted inner products:
//
//   G  : node -> edge        adjoint  -a^-1 D* A
//   R  : edge -> face        adjoint   A^-1 R* B^-1
//   D  : face -> cell        adjoint  -B G* b^-1
//   G* : dual_node -> dual_edge   adjoint  -b^-1 D B
//   R* : dual_edge -> dual_face   adjoint   B^-1 R A^-1
//   D* : dual_face -> dual_cell   adjoint  -A G a^-1
//
// plus <A G s, n*>_{F*} = -<s, a^-1 D* n*>_N.

#include "mimetic/inner3.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mimetic::mimetic3d {

struct AdjointOptions {
    int trials = 100;
    std::uint64_t seed = 1;
    // Zero the random fields in this many boundary cells (bounded grids).
    int support_margin = 2;
    // Deliberately negate G* inside the checks, to exercise the detector.
    bool flip_grad_star_sign = false;
};

struct AdjointEntry {
    std::string name;
    double residual = 0.0;  // max over trials
};

struct AdjointReport {
    std::vector<AdjointEntry> entries;
    double max_residual() const;
};

// Residual per trial: |<Lf, g>_Y - <f, L' g>_X| / (|Lf| |g| + |f| |L' g|).
// Every other trial draws g correlated with L f.
AdjointReport check_discrete_adjoints(const Star3& m, const AdjointOptions& opt = {});

struct NegativityReport {
    bool ok = true;
    double worst = 0.0;  // max of <a^-1 D* A G f, f>_N / (|f|_N |a^-1 D* A G f|_N)
};

// <a^-1 D* A G f, f>_N <= tol * |f|_N |a^-1 D* A G f|_N for random f.
NegativityReport negativity_check(const Star3& m, int trials = 100, std::uint64_t seed = 1, double tol = 1e-12);

}  // namespace mimetic::mimetic3d
