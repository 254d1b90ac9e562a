#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcoh/channels.hpp"
#include "qcoh/experiments.hpp"
#include "qcoh/states.hpp"

namespace qcoh::cli {

// Exit codes, stable across releases.
enum ExitCode : int {
    kExitOk = 0,
    kExitNotFrozen = 1,
    kExitParse = 2,
    kExitValidation = 3,
    kExitNumerical = 4,
};

// `kind key=value ... [list]` as used by --state / --channel, or assembled from
// `section.key = value` lines of a spec file.
struct SpecLine {
    std::string kind;
    std::map<std::string, std::string> params;
    std::vector<std::string> list;          // bracketed positional argument (local channels)
    std::map<std::string, int> key_lines;   // source line per key
    int line = 1;

    int line_of(const std::string& key) const;
};

SpecLine parse_spec_line(std::string_view text, int line = 1);

// "[a, b, [c, d]]" -> {"a", "b", "[c, d]"}; top-level commas only.
std::vector<std::string> split_list(std::string_view text, int line);
double parse_real(std::string_view text, int line);
// 1, -0.5, 2i, -i, 0.5+0.5i, 1e-3-2e-3i
Complex parse_complex(std::string_view text, int line);

DensityMatrix build_state(const SpecLine& spec);
KrausChannel build_channel(const SpecLine& spec);

struct ExperimentSpecFile {
    SpecLine state;
    std::vector<QubitChannelKind> factors;
    std::vector<std::vector<double>> grids;  // per factor, or one when shared
    bool shared_parameter = false;
    double certificate_tol = 1e-8;
    double zero_tol = kDefaultZeroTol;
    double kernel_cutoff = 1e-12;
    double freezing_tol = 1e-9;
    std::optional<std::string> output_path;
    bool timestamp = true;
    std::size_t threads = 1;
    std::string state_text;  // echo for CSV metadata
};

// Line-oriented `section.key = value` document; `#` starts a comment.
ExperimentSpecFile parse_experiment_spec(std::istream& in);
SweepSpec to_sweep_spec(const ExperimentSpecFile& file);

// Entry point behind the `qcoh` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcoh::cli
