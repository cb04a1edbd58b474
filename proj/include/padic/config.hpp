#pragma once

#include "padic/rational.hpp"
#include "padic/system.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace padic::cli {

/// Bad invocation (unknown flag, malformed literal, composite prime, missing
/// command): exit code 2, as opposed to ValidationError (3, a well-formed but
/// geometrically invalid system) and ConvergenceError (4).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { Validate, Zeta, Dims, Zeros, Tube, Sweep, Content, Lengths, Report };

enum class OutputFormat { Table, Json, Csv };

/// Multiplicative (log-uniform) epsilon grid for `sweep`; all the structure
/// of V(eps) is multiplicatively periodic, so uniform-in-log is the natural
/// sampling.
struct EpsGrid {
    Rational min{1, 1000000};
    Rational max{9, 10};
    int points = 50;
};

struct RunConfig {
    Command command = Command::Validate;
    std::string input_label;                 // preset name, file path, or "inline"
    std::optional<SelfSimilarSystem> system; // geometric input mode
    std::optional<LatticeData> lattice;      // abstract input mode (exactly one is set)
    int truncation = 2000;                   // Fourier partial-sum cutoff N
    int precision_bits = 128;                // 128 or 256
    EpsGrid grid;
    std::optional<Rational> eps;             // `tube` target; defaults to r^2
    int max_length = 20;                     // `lengths` row count
    int cesaro_pieces = 400;                 // `content`/`report` Cesaro window L
    OutputFormat format = OutputFormat::Table;
    std::string output_path;                 // empty: stdout
};

/// The two built-in example systems: "cs3" = {3x, 2+3x} over Z_3 and
/// "fs2" = {2x, 1+4x} over Z_2.
SelfSimilarSystem preset_system(const std::string& name);

/// Parses "num/den", integer, or decimal/scientific ("0.9", "1e-6") literals
/// into an exact Rational.
Rational parse_number(const std::string& text);

/// Parses argv (and any --input JSON config file; inline flags override file
/// values).  Returns nullopt when help was requested and printed.  Throws
/// UsageError for malformed invocations and ValidationError for well-formed
/// but invalid systems.
std::optional<RunConfig> parse_config(int argc, const char* const* argv);

/// Executes a parsed config and writes the artifact to stdout or the
/// configured output path.  Returns the process exit code.
int run(const RunConfig& config);

} // namespace padic::cli
