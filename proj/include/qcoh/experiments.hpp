#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcoh/channels.hpp"
#include "qcoh/recovery.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

inline constexpr std::size_t kMaxSweepDim = 64;
inline constexpr std::size_t kMaxGridPoints = 10000;

enum class Measure { L1, RelativeEntropy };

const char* to_string(Measure m) noexcept;  // column name: "c_l1" / "c_r"

using Metadata = std::vector<std::pair<std::string, std::string>>;

// A local channel family: factor k is a qubit channel whose parameter runs
// over grids[k]. With shared_parameter, grids holds one axis used by every
// factor at once.
struct SweepSpec {
    DensityMatrix initial_state;
    std::string state_label;
    std::vector<QubitChannelKind> factors;
    std::vector<std::vector<double>> grids;
    bool shared_parameter = false;
    std::vector<Measure> measures{Measure::L1, Measure::RelativeEntropy};
    CertifyOptions certify{};
    std::size_t threads = 1;
    Metadata metadata;  // echoed into the table, e.g. seeds

    void validate() const;
    std::vector<std::string> parameter_names() const;
    std::size_t point_count() const;
};

// uniform grid of `points` values on [lo, hi]
std::vector<double> uniform_grid(std::size_t points, double lo = 0.0, double hi = 1.0);

struct TrajectoryRow {
    std::vector<double> parameters;
    double c_l1 = 0.0;
    double c_r = 0.0;
    Verdict verdict = Verdict::NotFrozen;
    double cr_deviation = 0.0;
    double l1_deviation = 0.0;
    double residual_state = 0.0;
    double residual_diag = 0.0;
};

struct TrajectoryTable {
    std::vector<std::string> parameter_names;
    std::vector<Measure> measures;
    std::vector<TrajectoryRow> rows;
    Metadata metadata;

    double value(const TrajectoryRow& row, Measure m) const {
        return m == Measure::L1 ? row.c_l1 : row.c_r;
    }
};

// Grid points are evaluated independently (across spec.threads workers); rows
// come back in grid order, last factor varying fastest.
TrajectoryTable run_sweep(const SweepSpec& spec);

struct MeasureFreezing {
    Measure measure = Measure::L1;
    double max_deviation = 0.0;  // max |value - value at first grid point|
    bool frozen = false;
};

std::vector<MeasureFreezing> detect_freezing(const TrajectoryTable& table, double tol);

struct CsvOptions {
    bool timestamp = true;
};

// `#`-prefixed metadata lines, a header row, one row per grid point with 12
// significant digits.
void write_csv(const TrajectoryTable& table, std::ostream& out, const CsvOptions& opts = {});

struct ReproductionTolerances {
    double measure = 1e-9;   // |C - closed form|
    double analytic = 1e-10; // closed-form rho_t vs channel application
    double panel = 1e-8;     // panel drift at Frozen points
};

struct ReproductionReport {
    std::string name;
    bool passed = false;
    double expected_c_r = 0.0;
    double expected_c_l1 = 0.0;
    double max_cr_error = 0.0;
    double max_l1_error = 0.0;
    double max_analytic_residual = 0.0;
    double max_panel_deviation_frozen = 0.0;
    std::size_t grid_points = 0;
    std::size_t frozen_points = 0;
    std::vector<std::string> failures;  // each names the offending grid point
    TrajectoryTable table;

    std::string summary() const;
};

// rho_t of the pure family under local bit flips with flip probabilities q,
// from the closed-form distribution over canonical l'.
ComplexMatrix pure_family_closed_form(const BitString& l, int sign, const std::vector<double>& q);
// Same for the mixed family.
ComplexMatrix mixed_family_closed_form(const MixedFamilySpec& spec, const std::vector<double>& q);

// grids: one axis per qubit, or a single axis with shared_parameter.
ReproductionReport reproduce_pure_family(const BitString& l, int sign,
                                         const std::vector<std::vector<double>>& grids,
                                         bool shared_parameter = false,
                                         const ReproductionTolerances& tol = {},
                                         std::size_t threads = 1);

ReproductionReport reproduce_mixed_family(const MixedFamilySpec& spec,
                                          const std::vector<std::vector<double>>& grids,
                                          bool shared_parameter = false,
                                          const ReproductionTolerances& tol = {},
                                          std::size_t threads = 1, Metadata metadata = {});

// Identical bit flips on every qubit over a shared q grid.
ReproductionReport reproduce_bromley(std::size_t num_qubits, double c1, double c3,
                                     const std::vector<double>& grid,
                                     const ReproductionTolerances& tol = {}, std::size_t threads = 1);

// Named preset batches used by the `reproduce` command.
struct PresetCase {
    std::string file_stem;
    ReproductionReport report;
};
std::vector<PresetCase> run_preset(const std::string& name, std::size_t threads = 1);
const std::vector<std::string>& preset_names();

}  // namespace qcoh
