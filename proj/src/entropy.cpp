#include "qcoh/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qcoh/error.hpp"

namespace qcoh {

double von_neumann_entropy(const DensityMatrix& rho) {
    return shannon_entropy(rho.spectrum().eigenvalues);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        const RelativeEntropyOptions& opts) {
    if (rho.dim() != sigma.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "relative entropy of states with dims " +
                                                      std::to_string(rho.dim()) + " and " +
                                                      std::to_string(sigma.dim()));
    }
    const std::size_t n = rho.dim();
    const auto& mu = sigma.spectrum().eigenvalues;
    const auto& v = sigma.spectrum().eigenvectors;
    const double cutoff = opts.kernel_cutoff * std::max(mu.back(), 0.0);

    // Tr rho log sigma = sum_j <v_j|rho|v_j> log mu_j
    double cross = 0.0;
    double kernel_weight = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        Complex w = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            Complex row = 0.0;
            for (std::size_t b = 0; b < n; ++b) row += rho(a, b) * v(b, j);
            w += std::conj(v(a, j)) * row;
        }
        const double weight = w.real();
        if (mu[j] <= cutoff) {
            kernel_weight += weight;
        } else {
            cross += weight * std::log2(mu[j]);
        }
    }
    if (kernel_weight > opts.support_tol) return std::numeric_limits<double>::infinity();

    const double s = -von_neumann_entropy(rho) - cross;
    if (s < 0.0) {
        if (s < -opts.negative_floor) {
            std::ostringstream msg;
            msg << "relative entropy evaluated to " << s;
            throw Error(ErrorCode::NumericalFailure, msg.str());
        }
        return 0.0;
    }
    return s;
}

}  // namespace qcoh
