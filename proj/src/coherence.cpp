#include "qcoh/coherence.hpp"

#include <algorithm>
#include <cmath>

#include "qcoh/entropy.hpp"

namespace qcoh {

double c_l1(const DensityMatrix& rho) {
    double s = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i)
        for (std::size_t j = 0; j < rho.dim(); ++j)
            if (i != j) s += std::abs(rho(i, j));
    return s;
}

double c_rel_ent(const DensityMatrix& rho) {
    const double dephased = shannon_entropy(rho.matrix().real_diagonal());
    return std::max(0.0, dephased - von_neumann_entropy(rho));
}

CoherenceReport measure_panel(const DensityMatrix& rho) {
    CoherenceReport r;
    r.c_l1 = c_l1(rho);
    r.c_rel_ent = c_rel_ent(rho);
    const double definitional = relative_entropy(rho, dephase(rho));
    r.cross_check_residual = std::abs(definitional - r.c_rel_ent);
    return r;
}

SelectiveAverages selective_average(const KrausChannel& channel, const DensityMatrix& rho,
                                    double min_probability) {
    SelectiveAverages avg;
    for (const auto& k : channel.operators()) {
        const ComplexMatrix out = sandwich(k, rho.matrix());
        const double p = out.trace().real();
        if (p <= min_probability) continue;
        StateTolerances tol;
        tol.hermiticity = 1e-9;
        tol.trace = 1e-9;
        tol.psd = 1e-9;
        const DensityMatrix conditional = DensityMatrix::from_matrix(out * (1.0 / p), tol);
        avg.c_l1 += p * c_l1(conditional);
        avg.c_rel_ent += p * c_rel_ent(conditional);
    }
    return avg;
}

}  // namespace qcoh
