#include "padic/config.hpp"

#include "padic/errors.hpp"
#include "padic/zeta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace padic::cli {

namespace {

using nlohmann::json;

/// "123.45e-6" -> exact 12345/10^8.  parse_rational already covers "num/den"
/// and plain integers; this adds the decimal/scientific forms the flags use.
Rational parse_decimal(const std::string& text) {
    std::size_t i = 0;
    const auto fail = [&]() -> Rational {
        throw UsageError("malformed number '" + text +
                         "' (expected \"num/den\", an integer, or a decimal like 1e-6)");
    };
    if (text.empty())
        return fail();
    bool negative = false;
    if (text[i] == '+' || text[i] == '-')
        negative = text[i++] == '-';
    std::string digits;
    long frac_len = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        digits += text[i++];
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i++];
            ++frac_len;
        }
    }
    if (digits.empty())
        return fail();
    long exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-'))
            exp_negative = text[i++] == '-';
        if (i >= text.size())
            return fail();
        std::string exp_digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            exp_digits += text[i++];
        if (exp_digits.empty() || exp_digits.size() > 6)
            return fail();
        exponent = std::stol(exp_digits) * (exp_negative ? -1 : 1);
    }
    if (i != text.size())
        return fail();
    // cpp_int reads a leading 0 as an octal prefix; "0.11" must not become 9/100
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational value{Int(digits)};
    const long scale = exponent - frac_len;
    const Int ten_pow = pow_int(10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    if (scale >= 0)
        value *= ten_pow;
    else
        value /= ten_pow;
    return negative ? -value : value;
}

AffineContraction parse_map(const Prime& p, const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw UsageError("malformed --map '" + text + "' (expected \"a,b\" for Phi(x) = a*x + b)");
    try {
        return AffineContraction(p, parse_rational(text.substr(0, comma)),
                                 parse_rational(text.substr(comma + 1)));
    } catch (const std::invalid_argument& e) {
        throw UsageError("malformed --map '" + text + "': " + e.what());
    }
}

Rational json_rational(const json& value, const std::string& where) {
    if (value.is_number_integer())
        return Rational(value.get<long long>());
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw UsageError(where + ": " + e.what());
        }
    }
    throw UsageError(where + ": expected a rational string or an integer");
}

void reject_unknown_keys(const json& object, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, value] : object.items()) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw UsageError(where + ": unknown key '" + key + "'");
    }
}

/// The raw system description accumulated from file and flags before
/// validation; flags override file values.
struct SystemSource {
    std::optional<long> prime;
    std::vector<std::string> map_texts;                  // "a,b" strings from flags
    std::vector<std::pair<Rational, Rational>> map_pairs; // (a, b) pairs from file
    std::optional<int> lattice_d;
    std::vector<int> scaling_exponents, gap_exponents;
    bool has_lattice = false;
};

void load_config_file(const std::string& path, SystemSource& src) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    if (!j.is_object())
        throw UsageError("config file '" + path + "': top level must be an object");
    reject_unknown_keys(j, {"prime", "maps", "lattice"}, "config file '" + path + "'");
    if (!j.contains("prime") || !j["prime"].is_number_integer())
        throw UsageError("config file '" + path + "': needs an integer \"prime\"");
    src.prime = j["prime"].get<long>();
    if (j.contains("maps") == j.contains("lattice"))
        throw UsageError("config file '" + path + "': needs exactly one of \"maps\" or \"lattice\"");
    if (j.contains("maps")) {
        if (!j["maps"].is_array() || j["maps"].empty())
            throw UsageError("config file '" + path + "': \"maps\" must be a nonempty array");
        int index = 0;
        for (const auto& m : j["maps"]) {
            const std::string where = "config file '" + path + "' maps[" + std::to_string(index) + "]";
            if (!m.is_object())
                throw UsageError(where + ": expected an object {\"a\": ..., \"b\": ...}");
            reject_unknown_keys(m, {"a", "b"}, where);
            if (!m.contains("a") || !m.contains("b"))
                throw UsageError(where + ": needs both \"a\" and \"b\"");
            src.map_pairs.emplace_back(json_rational(m["a"], where + ".a"),
                                       json_rational(m["b"], where + ".b"));
            ++index;
        }
    } else {
        const auto& lat = j["lattice"];
        const std::string where = "config file '" + path + "' lattice";
        if (!lat.is_object())
            throw UsageError(where + ": expected an object");
        reject_unknown_keys(lat, {"d", "scaling_exponents", "gap_exponents"}, where);
        if (!lat.contains("scaling_exponents") || !lat.contains("gap_exponents"))
            throw UsageError(where + ": needs \"scaling_exponents\" and \"gap_exponents\"");
        for (const char* key : {"scaling_exponents", "gap_exponents"}) {
            if (!lat[key].is_array())
                throw UsageError(where + "." + key + ": expected an array of integers");
            for (const auto& e : lat[key]) {
                if (!e.is_number_integer())
                    throw UsageError(where + "." + key + ": expected an array of integers");
                (key[0] == 's' ? src.scaling_exponents : src.gap_exponents)
                    .push_back(e.get<int>());
            }
        }
        if (lat.contains("d")) {
            if (!lat["d"].is_number_integer())
                throw UsageError(where + ".d: expected an integer");
            src.lattice_d = lat["d"].get<int>();
        }
        src.has_lattice = true;
    }
}

Prime make_prime(long value) {
    try {
        return Prime(value);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

/// Turns the accumulated source into a validated system or lattice.
/// Validation failures (overlaps, ratio sums, ...) propagate as
/// ValidationError; they are well-formed requests for impossible systems,
/// not usage mistakes.
void resolve_input(const SystemSource& src, RunConfig& config) {
    if (!src.prime)
        throw UsageError("no input system: give --preset, --input FILE, or --prime with --map");
    const Prime p = make_prime(*src.prime);
    if (!src.map_texts.empty() || !src.map_pairs.empty()) {
        std::vector<AffineContraction> maps;
        // flag maps override file maps entirely
        if (!src.map_texts.empty())
            for (const auto& text : src.map_texts)
                maps.push_back(parse_map(p, text));
        else
            for (const auto& [a, b] : src.map_pairs)
                maps.emplace_back(p, a, b);
        config.system = validate_system(maps);
        return;
    }
    if (!src.has_lattice)
        throw UsageError("no input system: --prime needs --map (or use a config file)");
    LatticeData lattice = make_lattice(p, src.scaling_exponents, src.gap_exponents);
    if (src.lattice_d && *src.lattice_d != lattice.d)
        throw UsageError("config lattice d=" + std::to_string(*src.lattice_d) +
                         " is inconsistent with the exponent gcd " + std::to_string(lattice.d));
    config.lattice = lattice;
}

int precision_from_env() {
    const char* env = std::getenv("PADIC_TUBE_PRECISION");
    if (!env)
        return 128;
    const std::string text(env);
    if (text == "128")
        return 128;
    if (text == "256")
        return 256;
    throw UsageError("PADIC_TUBE_PRECISION must be 128 or 256, got '" + text + "'");
}

} // namespace

SelfSimilarSystem preset_system(const std::string& name) {
    if (name == "cs3") {
        const Prime p(3);
        return validate_system({AffineContraction(p, 3, 0), AffineContraction(p, 3, 2)});
    }
    if (name == "fs2") {
        const Prime p(2);
        return validate_system({AffineContraction(p, 2, 0), AffineContraction(p, 4, 1)});
    }
    throw UsageError("unknown preset '" + name + "' (available: cs3, fs2)");
}

Rational parse_number(const std::string& text) {
    if (text.find('/') != std::string::npos) {
        try {
            return parse_rational(text);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return parse_decimal(text);
}

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
    CLI::App app{"p-adic self-similar fractal strings: geometric zeta functions, complex "
                 "dimensions, and fractal tube formulas"};
    app.require_subcommand(1);

    std::string preset, input_file, eps_text, eps_min_text, eps_max_text, format_text;
    std::string output_path;
    long prime_flag = 0;
    std::vector<std::string> map_texts;
    int truncation = 2000, precision = 0, points = 50, max_length = 20, cesaro = 400;

    const std::vector<std::pair<std::string, Command>> commands = {
        {"validate", Command::Validate}, {"zeta", Command::Zeta},     {"dims", Command::Dims},
        {"zeros", Command::Zeros},       {"tube", Command::Tube},     {"sweep", Command::Sweep},
        {"content", Command::Content},   {"lengths", Command::Lengths}, {"report", Command::Report}};
    const std::map<std::string, std::string> descriptions = {
        {"validate", "validate a contraction system and show its gaps and lattice data"},
        {"zeta", "the geometric zeta function as an exact rational function of z = r^s"},
        {"dims", "complex dimensions: pole lines, multiplicities, residues"},
        {"zeros", "zero lines of the geometric zeta function"},
        {"tube", "tube formula at one epsilon: exact vs explicit-formula volume"},
        {"sweep", "tube formula over a multiplicative epsilon grid"},
        {"content", "Minkowski content analysis: dimension, average content, oscillation"},
        {"lengths", "interval length counts c_m"},
        {"report", "one-shot JSON summary of dimension and content data"}};

    for (const auto& [name, cmd] : commands) {
        (void)cmd;
        CLI::App* sub = app.add_subcommand(name, descriptions.at(name));
        sub->add_option("--preset", preset, "built-in example system (cs3 or fs2)");
        sub->add_option("--input", input_file, "JSON config file describing the system");
        sub->add_option("--prime", prime_flag, "prime p for an inline system");
        sub->add_option("--map", map_texts,
                        "inline contraction \"a,b\" meaning Phi(x) = a*x + b (repeatable)");
        sub->add_option("--truncation", truncation, "Fourier partial-sum cutoff N")
            ->capture_default_str();
        sub->add_option("--precision", precision, "working precision in bits (128 or 256)");
        sub->add_option("--format", format_text, "output format: table, json, or csv");
        sub->add_option("--output", output_path, "write the artifact to this path");
        if (name == "tube")
            sub->add_option("--eps", eps_text, "tube radius epsilon (default r^2)");
        if (name == "sweep") {
            sub->add_option("--eps-min", eps_min_text, "grid minimum")->capture_default_str();
            sub->add_option("--eps-max", eps_max_text, "grid maximum")->capture_default_str();
            sub->add_option("--points", points, "grid size")->capture_default_str();
        }
        if (name == "lengths")
            sub->add_option("--max", max_length, "largest exponent m")->capture_default_str();
        if (name == "content" || name == "report")
            sub->add_option("--cesaro-l", cesaro, "Cesaro averaging window in pieces")
                ->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        (void)app.exit(e);
        return std::nullopt;
    } catch (const CLI::CallForAllHelp& e) {
        (void)app.exit(e);
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + " (see --help)");
    }

    RunConfig config;
    for (const auto& [name, cmd] : commands)
        if (app.got_subcommand(name))
            config.command = cmd;
    CLI::App* active = app.get_subcommands().front();

    // input: preset XOR (file and/or inline flags)
    const bool inline_given = active->count("--prime") || active->count("--map");
    if (!preset.empty() && (!input_file.empty() || inline_given))
        throw UsageError("--preset cannot be combined with --input/--prime/--map");
    if (!preset.empty()) {
        config.system = preset_system(preset);
        config.input_label = preset;
    } else {
        SystemSource src;
        if (!input_file.empty())
            load_config_file(input_file, src);
        if (active->count("--prime"))
            src.prime = prime_flag;
        if (active->count("--map"))
            src.map_texts = map_texts;
        resolve_input(src, config);
        config.input_label = input_file.empty() ? "inline" : input_file;
    }

    config.truncation = truncation;
    if (config.truncation < 0)
        throw UsageError("--truncation must be >= 0");

    config.precision_bits = precision_from_env();
    if (active->count("--precision")) {
        if (precision != 128 && precision != 256)
            throw UsageError("--precision must be 128 or 256");
        config.precision_bits = precision;
    }

    if (active->count("--format")) {
        if (format_text == "table")
            config.format = OutputFormat::Table;
        else if (format_text == "json")
            config.format = OutputFormat::Json;
        else if (format_text == "csv")
            config.format = OutputFormat::Csv;
        else
            throw UsageError("--format must be table, json, or csv");
    } else if (config.command == Command::Report) {
        config.format = OutputFormat::Json;
    } else if (config.command == Command::Sweep) {
        config.format = OutputFormat::Csv;
    }

    if (!eps_text.empty()) {
        config.eps = parse_number(eps_text);
        if (*config.eps <= 0)
            throw UsageError("--eps must be positive");
    }
    if (!eps_min_text.empty())
        config.grid.min = parse_number(eps_min_text);
    if (!eps_max_text.empty())
        config.grid.max = parse_number(eps_max_text);
    config.grid.points = points;
    if (config.grid.points < 1)
        throw UsageError("--points must be >= 1");
    if (!(config.grid.min > 0) || !(config.grid.min < config.grid.max))
        throw UsageError("need 0 < --eps-min < --eps-max");

    config.max_length = max_length;
    if (config.max_length < 1)
        throw UsageError("--max must be >= 1");
    config.cesaro_pieces = cesaro;
    if (config.cesaro_pieces < 1)
        throw UsageError("--cesaro-l must be >= 1");
    config.output_path = output_path;
    return config;
}

} // namespace padic::cli
