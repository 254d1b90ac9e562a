#include "qcoh/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "qcoh/coherence.hpp"
#include "qcoh/error.hpp"

namespace qcoh {

namespace {

std::string fmt12(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string point_string(const std::vector<std::string>& names, const std::vector<double>& values) {
    std::ostringstream s;
    s << '(';
    for (std::size_t i = 0; i < values.size(); ++i) {
        s << (i ? ", " : "") << names[i] << '=' << fmt12(values[i]);
    }
    s << ')';
    return s.str();
}

// Factor product for the closed-form bit-flip distribution: the weight of
// reaching `target` from `source` is prod_i (q_i or 1 - q_i) plus the same for
// the complemented target.
double flip_weight(const BitString& target, const BitString& source, const std::vector<double>& q) {
    double same = 1.0;
    double flipped = 1.0;
    for (std::size_t i = 0; i < source.size(); ++i) {
        const double delta = target[i] == source[i] ? 1.0 : 0.0;
        same *= q[i] + (1.0 - 2.0 * q[i]) * delta;
        flipped *= 1.0 - q[i] - (1.0 - 2.0 * q[i]) * delta;
    }
    return same + flipped;
}

void add_phi_pair(ComplexMatrix& m, const BitString& l, double weight, double coherence) {
    const std::size_t a = l.index();
    const std::size_t b = l.complement().index();
    m(a, a) += 0.5 * weight;
    m(b, b) += 0.5 * weight;
    m(a, b) += coherence * weight;
    m(b, a) += coherence * weight;
}

std::vector<double> expand_parameters(const TrajectoryTable& table, const TrajectoryRow& row,
                                      std::size_t num_qubits) {
    if (table.parameter_names.size() == 1 && num_qubits > 1) {
        return std::vector<double>(num_qubits, row.parameters.front());
    }
    return row.parameters;
}

using ClosedForm = std::function<ComplexMatrix(const std::vector<double>&)>;

ReproductionReport reproduce_core(std::string name, const DensityMatrix& rho0, double expected_cr,
                                  double expected_l1, const ClosedForm& closed_form,
                                  std::size_t num_qubits,
                                  const std::vector<std::vector<double>>& grids, bool shared,
                                  const ReproductionTolerances& tol, std::size_t threads,
                                  Metadata metadata) {
    SweepSpec spec;
    spec.initial_state = rho0;
    spec.state_label = name;
    spec.factors.assign(num_qubits, QubitChannelKind::BitFlip);
    spec.grids = grids;
    spec.shared_parameter = shared;
    spec.threads = threads;
    spec.metadata = std::move(metadata);
    spec.metadata.emplace_back("expected_c_r", fmt12(expected_cr));
    spec.metadata.emplace_back("expected_c_l1", fmt12(expected_l1));

    ReproductionReport rep;
    rep.name = std::move(name);
    rep.expected_c_r = expected_cr;
    rep.expected_c_l1 = expected_l1;
    rep.table = run_sweep(spec);
    rep.grid_points = rep.table.rows.size();

    for (const auto& row : rep.table.rows) {
        const std::string where = point_string(rep.table.parameter_names, row.parameters);
        const double cr_err = std::abs(row.c_r - expected_cr);
        const double l1_err = std::abs(row.c_l1 - expected_l1);
        rep.max_cr_error = std::max(rep.max_cr_error, cr_err);
        rep.max_l1_error = std::max(rep.max_l1_error, l1_err);
        if (cr_err > tol.measure) rep.failures.push_back("C_r off closed form at " + where);
        if (l1_err > tol.measure) rep.failures.push_back("C_l1 off closed form at " + where);

        const std::vector<double> q = expand_parameters(rep.table, row, num_qubits);
        LocalChannelSpec local;
        for (double qi : q) local.factors.push_back({QubitChannelKind::BitFlip, qi});
        const ComplexMatrix brute = apply(local_channel(local), rho0.matrix());
        const double analytic = max_abs_diff(brute, closed_form(q));
        rep.max_analytic_residual = std::max(rep.max_analytic_residual, analytic);
        if (analytic > tol.analytic) rep.failures.push_back("closed-form state mismatch at " + where);

        if (row.verdict == Verdict::Frozen) {
            ++rep.frozen_points;
            const double panel = std::max(row.cr_deviation, row.l1_deviation);
            rep.max_panel_deviation_frozen = std::max(rep.max_panel_deviation_frozen, panel);
            if (panel > tol.panel) rep.failures.push_back("panel drift at Frozen point " + where);
        } else {
            rep.failures.push_back("certificate NotFrozen at " + where);
        }
    }
    rep.passed = rep.failures.empty();
    return rep;
}

}  // namespace

const char* to_string(Measure m) noexcept { return m == Measure::L1 ? "c_l1" : "c_r"; }

std::vector<double> uniform_grid(std::size_t points, double lo, double hi) {
    if (points == 0) return {};
    if (points == 1) return {lo};
    std::vector<double> g(points);
    for (std::size_t k = 0; k < points; ++k) {
        g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    }
    return g;
}

void SweepSpec::validate() const {
    if (factors.empty()) throw Error(ErrorCode::InvalidSpec, "sweep needs at least one channel factor");
    if (initial_state.dim() > kMaxSweepDim) {
        throw Error(ErrorCode::DimensionTooLarge,
                    "state dimension " + std::to_string(initial_state.dim()) + " exceeds 64");
    }
    if (factors.size() > 6) throw Error(ErrorCode::DimensionTooLarge, "more than 6 qubits");
    if (initial_state.dim() != (std::size_t{1} << factors.size())) {
        throw Error(ErrorCode::DimensionMismatch, "state dimension does not match the number of factors");
    }
    const std::size_t axes = shared_parameter ? 1 : factors.size();
    if (grids.size() != axes) {
        throw Error(ErrorCode::InvalidSpec, "expected " + std::to_string(axes) + " grid axes, got " +
                                                std::to_string(grids.size()));
    }
    for (const auto& g : grids) {
        if (g.empty()) throw Error(ErrorCode::InvalidSpec, "empty parameter grid");
        for (double v : g) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw Error(ErrorCode::OutOfRange, "grid value " + fmt12(v) + " outside [0, 1]");
            }
        }
    }
    if (measures.empty()) throw Error(ErrorCode::InvalidSpec, "no measures to record");
    if (point_count() > kMaxGridPoints) {
        throw Error(ErrorCode::InvalidSpec, "grid has " + std::to_string(point_count()) +
                                                " points, limit is " + std::to_string(kMaxGridPoints));
    }
}

std::vector<std::string> SweepSpec::parameter_names() const {
    if (shared_parameter) {
        return {parameter_key(factors.empty() ? QubitChannelKind::BitFlip : factors.front())};
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < factors.size(); ++k) {
        names.push_back(parameter_key(factors[k]) + std::to_string(k + 1));
    }
    return names;
}

std::size_t SweepSpec::point_count() const {
    std::size_t total = 1;
    for (const auto& g : grids) {
        total *= g.size();
        if (total > kMaxGridPoints) return total;
    }
    return total;
}

TrajectoryTable run_sweep(const SweepSpec& spec) {
    spec.validate();
    TrajectoryTable table;
    table.parameter_names = spec.parameter_names();
    table.measures = spec.measures;
    table.metadata.emplace_back("state", spec.state_label);
    {
        std::string channel;
        for (std::size_t k = 0; k < spec.factors.size(); ++k) {
            channel += (k ? " x " : "") + std::string(to_string(spec.factors[k]));
        }
        table.metadata.emplace_back("channel", channel);
    }
    table.metadata.emplace_back("shared_parameter", spec.shared_parameter ? "true" : "false");
    table.metadata.emplace_back("certificate_tol", fmt12(spec.certify.tol));
    table.metadata.emplace_back("zero_tol", fmt12(spec.certify.recovery.zero_tol));
    table.metadata.emplace_back("kernel_cutoff", fmt12(spec.certify.recovery.kernel_cutoff));
    for (const auto& kv : spec.metadata) table.metadata.push_back(kv);

    const std::size_t points = spec.point_count();
    table.rows.resize(points);

    auto evaluate = [&](std::size_t index) {
        // decode mixed-radix index, last axis fastest
        std::vector<double> params(spec.grids.size());
        std::size_t rest = index;
        for (std::size_t a = spec.grids.size(); a-- > 0;) {
            params[a] = spec.grids[a][rest % spec.grids[a].size()];
            rest /= spec.grids[a].size();
        }
        LocalChannelSpec local;
        for (std::size_t k = 0; k < spec.factors.size(); ++k) {
            local.factors.push_back({spec.factors[k], spec.shared_parameter ? params[0] : params[k]});
        }
        const KrausChannel channel = local_channel(local);
        const FreezingCertificate cert = certify_freezing(channel, spec.initial_state, spec.certify);
        TrajectoryRow& row = table.rows[index];
        row.parameters = std::move(params);
        row.c_l1 = cert.l1_final;
        row.c_r = cert.cr_final;
        row.verdict = cert.verdict;
        row.cr_deviation = cert.cr_deviation;
        row.l1_deviation = cert.l1_deviation;
        row.residual_state = cert.recovery_residual_state;
        row.residual_diag = cert.recovery_residual_diag;
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(spec.threads, points));
    if (workers == 1) {
        for (std::size_t i = 0; i < points; ++i) evaluate(i);
        return table;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < points; i += workers) evaluate(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return table;
}

std::vector<MeasureFreezing> detect_freezing(const TrajectoryTable& table, double tol) {
    if (table.rows.empty()) throw Error(ErrorCode::InvalidSpec, "empty trajectory table");
    std::vector<MeasureFreezing> out;
    for (Measure m : table.measures) {
        MeasureFreezing f{m, 0.0, false};
        const double first = table.value(table.rows.front(), m);
        for (const auto& row : table.rows) {
            f.max_deviation = std::max(f.max_deviation, std::abs(table.value(row, m) - first));
        }
        f.frozen = f.max_deviation <= tol;
        out.push_back(f);
    }
    return out;
}

void write_csv(const TrajectoryTable& table, std::ostream& out, const CsvOptions& opts) {
    for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << value << '\n';
    if (opts.timestamp) {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# generated: " << buf << '\n';
    }
    for (const auto& name : table.parameter_names) out << name << ',';
    for (Measure m : table.measures) out << to_string(m) << ',';
    out << "verdict,cr_deviation,residual_state,residual_diag\n";
    for (const auto& row : table.rows) {
        for (double p : row.parameters) out << fmt12(p) << ',';
        for (Measure m : table.measures) out << fmt12(table.value(row, m)) << ',';
        out << to_string(row.verdict) << ',' << fmt12(row.cr_deviation) << ',' << fmt12(row.residual_state)
            << ',' << fmt12(row.residual_diag) << '\n';
    }
}

std::string ReproductionReport::summary() const {
    std::ostringstream s;
    s << name << ": " << (passed ? "PASS" : "FAIL") << " points=" << grid_points
      << " frozen=" << frozen_points << " max_cr_error=" << fmt12(max_cr_error)
      << " max_l1_error=" << fmt12(max_l1_error) << " max_closed_form_residual="
      << fmt12(max_analytic_residual) << " max_panel_deviation=" << fmt12(max_panel_deviation_frozen);
    return s.str();
}

ComplexMatrix pure_family_closed_form(const BitString& l, int sign, const std::vector<double>& q) {
    if (q.size() != l.size()) throw Error(ErrorCode::DimensionMismatch, "one flip probability per qubit");
    ComplexMatrix m(std::size_t{1} << l.size());
    for (const auto& target : canonical_strings(l.size())) {
        add_phi_pair(m, target, flip_weight(target, l, q), 0.5 * sign);
    }
    return m;
}

ComplexMatrix mixed_family_closed_form(const MixedFamilySpec& spec, const std::vector<double>& q) {
    spec.validate();
    const std::size_t n = spec.num_qubits();
    if (q.size() != n) throw Error(ErrorCode::DimensionMismatch, "one flip probability per qubit");
    ComplexMatrix m(std::size_t{1} << n);
    const double coherence = (2.0 * spec.p - 1.0) / 2.0;
    for (const auto& target : canonical_strings(n)) {
        double weight = 0.0;
        for (const auto& [source, w] : spec.weights) weight += w * flip_weight(target, source, q);
        add_phi_pair(m, target, weight, coherence);
    }
    return m;
}

ReproductionReport reproduce_pure_family(const BitString& l, int sign,
                                         const std::vector<std::vector<double>>& grids,
                                         bool shared_parameter, const ReproductionTolerances& tol,
                                         std::size_t threads) {
    const DensityMatrix rho0 = phi_state(l, sign);
    const std::string name = "phi l=" + l.str() + " sign=" + (sign > 0 ? "+" : "-");
    return reproduce_core(
        name, rho0, 1.0, 1.0, [&](const std::vector<double>& q) { return pure_family_closed_form(l, sign, q); },
        l.size(), grids, shared_parameter, tol, threads, {});
}

ReproductionReport reproduce_mixed_family(const MixedFamilySpec& spec,
                                          const std::vector<std::vector<double>>& grids,
                                          bool shared_parameter, const ReproductionTolerances& tol,
                                          std::size_t threads, Metadata metadata) {
    const DensityMatrix rho0 = mixed_family(spec);
    std::ostringstream name;
    name << "mixed N=" << spec.num_qubits() << " p=" << fmt12(spec.p) << " weights=[";
    bool first = true;
    for (const auto& [l, w] : spec.weights) {
        name << (first ? "" : ", ") << l.str() << ':' << fmt12(w);
        first = false;
    }
    name << ']';
    return reproduce_core(
        name.str(), rho0, 1.0 - binary_entropy(spec.p), std::abs(2.0 * spec.p - 1.0),
        [&](const std::vector<double>& q) { return mixed_family_closed_form(spec, q); }, spec.num_qubits(),
        grids, shared_parameter, tol, threads, std::move(metadata));
}

ReproductionReport reproduce_bromley(std::size_t num_qubits, double c1, double c3,
                                     const std::vector<double>& grid, const ReproductionTolerances& tol,
                                     std::size_t threads) {
    const MixedFamilySpec spec = bromley_family(num_qubits, c1, c3);
    Metadata meta{{"preset", "bromley"}, {"c1", fmt12(c1)}, {"c3", fmt12(c3)}};
    return reproduce_mixed_family(spec, {grid}, true, tol, threads, std::move(meta));
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"pure-family", "mixed-family", "bromley"};
    return names;
}

std::vector<PresetCase> run_preset(const std::string& name, std::size_t threads) {
    std::vector<PresetCase> cases;
    if (name == "pure-family") {
        for (std::size_t n = 2; n <= 4; ++n) {
            const std::vector<std::vector<double>> grids(n, uniform_grid(6));
            for (const auto& l : canonical_strings(n)) {
                for (int sign : {1, -1}) {
                    const std::string stem = "pure-family_N" + std::to_string(n) + "_l" + l.str() +
                                             (sign > 0 ? "_plus" : "_minus");
                    cases.push_back({stem, reproduce_pure_family(l, sign, grids, false, {}, threads)});
                }
            }
        }
    } else if (name == "mixed-family") {
        for (std::size_t draw = 0; draw < 20; ++draw) {
            const std::size_t n = draw < 10 ? 2 : 3;
            const std::uint64_t seed = 1000 + draw;
            std::mt19937_64 rng(seed);
            const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const MixedFamilySpec spec = random_mixed_family(n, p, seed);
            Metadata meta{{"preset", "mixed-family"}, {"seed", std::to_string(seed)}};
            const std::vector<std::vector<double>> grids(n, uniform_grid(6));
            char stem[64];
            std::snprintf(stem, sizeof stem, "mixed-family_N%zu_draw%02zu", n, draw);
            cases.push_back({stem, reproduce_mixed_family(spec, grids, false, {}, threads, std::move(meta))});
        }
    } else if (name == "bromley") {
        const std::vector<double> c1s{-0.8, 0.0, 0.6};
        const std::vector<double> c3s{-0.5, 0.0, 0.9};
        for (std::size_t i = 0; i < c1s.size(); ++i)
            for (std::size_t j = 0; j < c3s.size(); ++j) {
                const std::string stem = "bromley_c1-" + std::to_string(i) + "_c3-" + std::to_string(j);
                cases.push_back({stem, reproduce_bromley(2, c1s[i], c3s[j], uniform_grid(11), {}, threads)});
            }
    } else {
        throw Error(ErrorCode::InvalidSpec, "unknown preset '" + name + "'");
    }
    return cases;
}

}  // namespace qcoh
