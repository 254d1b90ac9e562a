#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "qcoh/cli.hpp"
#include "qcoh/coherence.hpp"
#include "qcoh/error.hpp"
#include "qcoh/recovery.hpp"

namespace qcoh::cli {

namespace {

constexpr const char* kOutputDirEnv = "QCOH_OUTPUT_DIR";

std::string fmt12(double v) {
    std::ostringstream s;
    s.precision(12);
    s << v;
    return s.str();
}

std::optional<std::filesystem::path> env_output_dir() {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) return std::filesystem::path(dir);
    return std::nullopt;
}

std::size_t default_threads() { return std::max(1U, std::thread::hardware_concurrency()); }

int cmd_measure(const std::string& state_text, std::ostream& out) {
    const DensityMatrix rho = build_state(parse_spec_line(state_text));
    const CoherenceReport r = measure_panel(rho);
    out << "dim=" << rho.dim() << '\n';
    out << "c_l1=" << fmt12(r.c_l1) << '\n';
    out << "c_rel_ent=" << fmt12(r.c_rel_ent) << '\n';
    out << "cross_check_residual=" << fmt12(r.cross_check_residual) << '\n';
    return kExitOk;
}

int cmd_classify(const std::string& channel_text, double zero_tol, std::ostream& out) {
    const KrausChannel ch = build_channel(parse_spec_line(channel_text));
    const ChannelClass cls = classify(ch, zero_tol);
    out << "channel=" << ch.label() << '\n';
    out << "operators=" << ch.operators().size() << '\n';
    out << "class=" << to_string(cls.kind) << '\n';
    if (cls.witness) {
        const auto& w = *cls.witness;
        out << "witness_operator=" << w.op << '\n';
        out << (w.is_column ? "witness_column=" : "witness_row=") << w.line << '\n';
        out << (w.is_column ? "witness_rows=" : "witness_columns=") << w.first << ',' << w.second << '\n';
    }
    return kExitOk;
}

int cmd_certify(const std::string& state_text, const std::string& channel_text, const CertifyOptions& opts,
                std::ostream& out) {
    const DensityMatrix rho = build_state(parse_spec_line(state_text));
    const KrausChannel ch = build_channel(parse_spec_line(channel_text));
    const FreezingCertificate cert = certify_freezing(ch, rho, opts);
    out << "state=" << state_text << '\n';
    out << "channel=" << ch.label() << '\n';
    out << cert.to_text();
    return cert.verdict == Verdict::Frozen ? kExitOk : kExitNotFrozen;
}

void write_file(const std::filesystem::path& path, const TrajectoryTable& table, bool timestamp) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::InvalidSpec, "cannot open " + path.string() + " for writing");
    write_csv(table, f, {timestamp});
    if (!f) throw Error(ErrorCode::InvalidSpec, "failed writing " + path.string());
}

int cmd_sweep(const std::string& spec_path, const std::string& out_flag, bool no_timestamp,
              std::optional<std::size_t> threads, std::ostream& out) {
    std::ifstream in(spec_path);
    if (!in) throw ParseError(0, "cannot open spec file " + spec_path);
    ExperimentSpecFile file = parse_experiment_spec(in);
    if (threads) file.threads = *threads;
    if (no_timestamp) file.timestamp = false;
    const SweepSpec spec = to_sweep_spec(file);
    const TrajectoryTable table = run_sweep(spec);

    std::optional<std::filesystem::path> target;
    if (!out_flag.empty()) {
        target = out_flag;
    } else if (file.output_path) {
        target = *file.output_path;
    } else if (auto dir = env_output_dir()) {
        target = *dir / (std::filesystem::path(spec_path).stem().string() + ".csv");
    }
    if (!target) {
        write_csv(table, out, {file.timestamp});
        return kExitOk;
    }
    write_file(*target, table, file.timestamp);
    out << "wrote " << target->string() << " (" << table.rows.size() << " rows)\n";
    for (const auto& f : detect_freezing(table, file.freezing_tol)) {
        out << to_string(f.measure) << ": " << (f.frozen ? "Frozen" : "NotFrozen")
            << " max_deviation=" << fmt12(f.max_deviation) << '\n';
    }
    return kExitOk;
}

int cmd_reproduce(const std::string& name, const std::string& out_flag, bool no_timestamp, std::size_t threads,
                  std::ostream& out) {
    const auto& names = preset_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw ParseError(1, "unknown preset '" + name + "' (pure-family, mixed-family, bromley)");
    }
    std::optional<std::filesystem::path> dir;
    if (!out_flag.empty()) {
        dir = out_flag;
    } else {
        dir = env_output_dir();
    }
    const auto cases = run_preset(name, threads);
    bool all_passed = true;
    double max_cr = 0.0;
    double max_l1 = 0.0;
    double max_residual = 0.0;
    for (const auto& c : cases) {
        out << c.report.summary() << '\n';
        for (const auto& failure : c.report.failures) out << "  " << failure << '\n';
        all_passed = all_passed && c.report.passed;
        max_cr = std::max(max_cr, c.report.max_cr_error);
        max_l1 = std::max(max_l1, c.report.max_l1_error);
        max_residual = std::max(max_residual, c.report.max_analytic_residual);
        if (dir) write_file(*dir / (c.file_stem + ".csv"), c.report.table, !no_timestamp);
    }
    out << "reproduce " << name << ": " << (all_passed ? "PASS" : "FAIL") << " cases=" << cases.size()
        << " max_cr_error=" << fmt12(max_cr) << " max_l1_error=" << fmt12(max_l1)
        << " max_closed_form_residual=" << fmt12(max_residual) << '\n';
    return all_passed ? kExitOk : kExitNotFrozen;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coherence freezing toolkit: measures, channel classification, freezing certificates"};
    app.require_subcommand(1);

    std::string state_text;
    std::string channel_text;
    double zero_tol = kDefaultZeroTol;
    CertifyOptions certify_opts;
    std::string out_flag;
    bool no_timestamp = false;
    std::size_t threads = default_threads();
    std::string spec_path;
    std::string preset;

    auto* measure = app.add_subcommand("measure", "Print the coherence measure panel of a state");
    measure->add_option("--state", state_text, "State specification, e.g. \"phi N=2 l=00 sign=+\"")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Classify a channel's Kraus representation");
    classify_cmd->add_option("--channel", channel_text, "Channel specification, e.g. \"bitflip q=0.3\"")->required();
    classify_cmd->add_option("--zero-tol", zero_tol, "Modulus at or below which entries count as zero");

    auto* certify = app.add_subcommand("certify", "Certify measure-independent freezing for a state and channel");
    certify->add_option("--state", state_text, "State specification")->required();
    certify->add_option("--channel", channel_text, "Channel specification")->required();
    certify->add_option("--tol", certify_opts.tol, "Certificate tolerance");
    certify->add_option("--zero-tol", certify_opts.recovery.zero_tol, "Zero threshold for classification");
    certify->add_option("--kernel-cutoff", certify_opts.recovery.kernel_cutoff,
                        "Relative cutoff for the kernel of the evolved dephased state");
    certify->add_flag("--allow-non-strict", certify_opts.allow_non_strict,
                      "Run even if the channel is not strictly incoherent");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep described by a spec file");
    sweep->add_option("spec", spec_path, "Experiment spec file")->required();
    sweep->add_option("--out", out_flag, "CSV output path (default: output.path, $QCOH_OUTPUT_DIR, or stdout)");
    sweep->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp comment line");
    auto* sweep_threads = sweep->add_option("--threads", threads, "Worker threads");

    auto* reproduce = app.add_subcommand("reproduce", "Run a named reproduction preset");
    reproduce->add_option("name", preset, "pure-family, mixed-family or bromley")->required();
    reproduce->add_option("--out", out_flag, "Directory for per-case CSV files (default: $QCOH_OUTPUT_DIR)");
    reproduce->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp comment line");
    reproduce->add_option("--threads", threads, "Worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*measure) return cmd_measure(state_text, out);
        if (*classify_cmd) return cmd_classify(channel_text, zero_tol, out);
        if (*certify) return cmd_certify(state_text, channel_text, certify_opts, out);
        if (*sweep) {
            std::optional<std::size_t> t;
            if (sweep_threads->count() > 0) t = threads;
            return cmd_sweep(spec_path, out_flag, no_timestamp, t, out);
        }
        if (*reproduce) return cmd_reproduce(preset, out_flag, no_timestamp, threads, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NumericalFailure) {
            err << "numerical failure: " << e.what() << '\n';
            return kExitNumerical;
        }
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitParse;
}

}  // namespace qcoh::cli
