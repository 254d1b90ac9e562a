#pragma once

#include "qcoh/states.hpp"

namespace qcoh {

struct RelativeEntropyOptions {
    // Eigenvalues of sigma at or below cutoff * max eigenvalue form its kernel.
    double kernel_cutoff = 1e-12;
    // Weight of rho on that kernel above this means the result is infinite.
    double support_tol = 1e-9;
    double negative_floor = 1e-9;
};

// -Tr rho log2 rho
double von_neumann_entropy(const DensityMatrix& rho);

// Tr rho (log2 rho - log2 sigma), or +infinity on a support violation.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const RelativeEntropyOptions& opts = {});

}  // namespace qcoh
