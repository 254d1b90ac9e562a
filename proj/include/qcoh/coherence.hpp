#pragma once

#include "qcoh/channels.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

// Sum of moduli of the off-diagonal entries.
double c_l1(const DensityMatrix& rho);

// Relative entropy of coherence in bits, evaluated as S(dephase(rho)) - S(rho),
// floored at zero.
double c_rel_ent(const DensityMatrix& rho);

struct CoherenceReport {
    double c_l1 = 0.0;
    double c_rel_ent = 0.0;
    // |S(rho || dephase(rho)) - (S(dephase(rho)) - S(rho))|
    double cross_check_residual = 0.0;
};

CoherenceReport measure_panel(const DensityMatrix& rho);

// sum_n p_n C(rho_n) for the post-measurement ensemble of the Kraus operators.
// Outcomes with p_n <= min_probability are skipped.
struct SelectiveAverages {
    double c_l1 = 0.0;
    double c_rel_ent = 0.0;
};
SelectiveAverages selective_average(const KrausChannel& channel, const DensityMatrix& rho,
                                    double min_probability = 1e-12);

}  // namespace qcoh
