#include "padic/config.hpp"

#include "padic/dims.hpp"
#include "padic/errors.hpp"
#include "padic/minkowski.hpp"
#include "padic/precision.hpp"
#include "padic/tube.hpp"
#include "padic/zeta.hpp"

#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

namespace padic::cli {

namespace {

using nlohmann::ordered_json;

/// Enough decimal digits to round-trip the binary value exactly, plus two
/// guard digits: 42 at 128 bits, 80 at 256.
template <class R> int significant_digits() {
    return std::numeric_limits<R>::max_digits10 + 2;
}

template <class R> std::string fmt(const R& x) {
    std::ostringstream os;
    os << std::setprecision(significant_digits<R>()) << x;
    return os.str();
}

template <class R> std::string fmt_complex(const complex_t<R>& z) {
    const R im = z.imag();
    if (im == 0)
        return fmt<R>(z.real());
    const R im_mag = abs(im);
    return fmt<R>(z.real()) + (im < 0 ? " - " : " + ") + fmt<R>(im_mag) + "*i";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string metadata_comment(const RunConfig& c) {
    return "# precision_bits=" + std::to_string(c.precision_bits) + " input=" + c.input_label +
           "\n";
}

ordered_json metadata_json(const RunConfig& c, const std::string& command) {
    ordered_json j;
    j["command"] = command;
    j["input"] = c.input_label;
    j["precision_bits"] = c.precision_bits;
    return j;
}

ordered_json poly_json(const IntPolynomial& f) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& coefficient : f.coeffs)
        coeffs.push_back(coefficient.str());
    return coeffs;
}

ordered_json ball_json(const PAdicBall& b) {
    ordered_json j;
    j["p"] = b.prime.value();
    j["level"] = b.level;
    j["center"] = b.center.str();
    return j;
}

template <class R> ordered_json line_json(const DimensionLine<R>& line) {
    ordered_json j;
    j["re"] = fmt<R>(line.base.real());
    j["im"] = fmt<R>(line.base.imag());
    j["multiplicity"] = line.multiplicity;
    if (line.residue) {
        j["residue_re"] = fmt<R>(line.residue->real());
        j["residue_im"] = fmt<R>(line.residue->imag());
    } else {
        j["residue_re"] = nullptr;
        j["residue_im"] = nullptr;
    }
    j["z_root_re"] = fmt<R>(line.z_root.real());
    j["z_root_im"] = fmt<R>(line.z_root.imag());
    j["kind"] = line.kind == LineKind::Pole ? "pole" : "zero";
    return j;
}

ZetaFunction the_zeta(const RunConfig& c) {
    return c.system ? build_zeta(*c.system) : build_zeta(*c.lattice);
}

[[noreturn]] void reject_csv(const std::string& command) {
    throw UsageError("csv output is only available for sweep and lengths, not " + command);
}

// ---------------------------------------------------------------- validate

std::string emit_validate(const RunConfig& c) {
    const bool geometric = c.system.has_value();
    const Prime p = geometric ? c.system->prime : c.lattice->prime;
    const int d = geometric ? c.system->d : c.lattice->d;
    const auto& scaled_n =
        geometric ? c.system->scaled_scaling_exponents : c.lattice->scaled_scaling_exponents;
    const auto& scaled_m =
        geometric ? c.system->scaled_gap_exponents : c.lattice->scaled_gap_exponents;

    Rational ratio_sum = 0, gap_sum = 0;
    for (const int n : scaled_n)
        ratio_sum += Rational(1, pow_int(Int(p.value()), static_cast<unsigned long>(n * d)));
    for (const int m : scaled_m)
        gap_sum += Rational(1, pow_int(Int(p.value()), static_cast<unsigned long>(m * d)));

    if (c.format == OutputFormat::Json) {
        ordered_json j = metadata_json(c, "validate");
        j["prime"] = p.value();
        j["mode"] = geometric ? "geometric" : "lattice";
        if (geometric) {
            ordered_json maps = ordered_json::array();
            for (const auto& f : c.system->maps) {
                ordered_json m;
                m["a"] = to_string(f.a);
                m["b"] = to_string(f.b);
                m["ratio"] = to_string(contraction_ratio(f));
                m["text"] = to_string(f);
                maps.push_back(m);
            }
            j["maps"] = maps;
            ordered_json gaps = ordered_json::array();
            for (const auto& g : c.system->gaps)
                gaps.push_back(ball_json(g));
            j["gaps"] = gaps;
        }
        j["d"] = d;
        j["scaled_scaling_exponents"] = scaled_n;
        j["scaled_gap_exponents"] = scaled_m;
        j["ratio_sum"] = to_string(ratio_sum);
        j["gap_sum"] = to_string(gap_sum);
        j["gap_identity_ok"] = (ratio_sum + gap_sum == 1);
        return j.dump(2) + "\n";
    }
    if (c.format == OutputFormat::Csv)
        reject_csv("validate");

    std::ostringstream os;
    os << metadata_comment(c);
    os << "prime              = " << p.value() << "\n";
    os << "mode               = " << (geometric ? "geometric" : "lattice") << "\n";
    if (geometric) {
        int index = 1;
        for (const auto& f : c.system->maps)
            os << "map " << index++ << "              = " << to_string(f)
               << "   (ratio " << to_string(contraction_ratio(f)) << ")\n";
        index = 1;
        for (const auto& g : c.system->gaps)
            os << "gap " << index++ << "              = " << to_string(g)
               << "   (measure " << to_string(haar_measure(g)) << ")\n";
    }
    os << "d                  = " << d << "\n";
    const auto list = [&os](const char* label, const std::vector<int>& v) {
        os << label;
        for (const int x : v)
            os << " " << x;
        os << "\n";
    };
    list("scaled n' exponents =", scaled_n);
    list("scaled m' exponents =", scaled_m);
    os << "gap identity       = " << to_string(ratio_sum) << " + " << to_string(gap_sum)
       << " = 1 (exact)\n";
    return os.str();
}

// -------------------------------------------------------------------- zeta

std::string emit_zeta(const RunConfig& c, const ZetaFunction& zf) {
    const Rational at_one = total_length(zf);
    if (c.format == OutputFormat::Json) {
        ordered_json j = metadata_json(c, "zeta");
        j["prime"] = zf.prime.value();
        j["d"] = zf.d;
        j["r"] = to_string(zf.r);
        j["numerator"] = poly_json(zf.numerator);
        j["denominator"] = poly_json(zf.denominator);
        j["reduced_numerator"] = poly_json(zf.reduced_numerator);
        j["reduced_denominator"] = poly_json(zf.reduced_denominator);
        j["numerator_string"] = to_string(zf.numerator);
        j["denominator_string"] = to_string(zf.denominator);
        j["cancellation"] = zf.cancellation;
        j["zeta_at_1"] = to_string(at_one);
        return j.dump(2) + "\n";
    }
    if (c.format == OutputFormat::Csv)
        reject_csv("zeta");

    std::ostringstream os;
    os << metadata_comment(c);
    os << "zeta(s) = N(z) / Q(z) with z = r^s\n";
    os << "r                   = " << to_string(zf.r) << "   (p = " << zf.prime.value()
       << ", d = " << zf.d << ")\n";
    os << "N(z)                = " << to_string(zf.numerator) << "\n";
    os << "Q(z)                = " << to_string(zf.denominator) << "\n";
    if (zf.cancellation) {
        os << "reduced N(z)        = " << to_string(zf.reduced_numerator) << "\n";
        os << "reduced Q(z)        = " << to_string(zf.reduced_denominator) << "\n";
    } else {
        os << "reduced             = already coprime\n";
    }
    os << "zeta(1)             = " << to_string(at_one) << "   (total length)\n";
    return os.str();
}

// -------------------------------------------------------------- dims/zeros

template <class R>
std::string emit_lines(const RunConfig& c, const DimensionSet<R>& set, const std::string& command) {
    const bool poles = command == "dims";
    if (c.format == OutputFormat::Json) {
        ordered_json j = metadata_json(c, command);
        if (set.lines.empty()) {
            j["lines"] = ordered_json::array();
            j["oscillatory_period"] = fmt<R>(set.oscillatory_period);
            return j.dump(2) + "\n";
        }
        if (poles) {
            j["D"] = fmt<R>(set.D);
            j["strict_dominance"] = set.strict_dominance;
        }
        j["oscillatory_period"] = fmt<R>(set.oscillatory_period);
        ordered_json lines = ordered_json::array();
        for (const auto& line : set.lines)
            lines.push_back(line_json(line));
        j["lines"] = lines;
        return j.dump(2) + "\n";
    }
    if (c.format == OutputFormat::Csv)
        reject_csv(command);

    std::ostringstream os;
    os << metadata_comment(c);
    os << "oscillatory period  = " << fmt<R>(set.oscillatory_period) << "\n";
    if (set.lines.empty()) {
        os << (poles ? "pole" : "zero") << " lines          = none\n";
        return os.str();
    }
    if (poles) {
        os << "D                   = " << fmt<R>(set.D) << "\n";
        os << "strict dominance    = " << yes_no(set.strict_dominance) << "\n";
    }
    os << (poles ? "pole" : "zero") << " lines (base + i*n*period, n in Z):\n";
    int index = 1;
    for (const auto& line : set.lines) {
        os << "  line " << index++ << ": base = " << fmt_complex<R>(line.base)
           << "   multiplicity " << line.multiplicity;
        if (line.residue)
            os << "   residue = " << fmt_complex<R>(*line.residue);
        os << "   (z-root " << fmt_complex<R>(line.z_root) << ")\n";
    }
    return os.str();
}

// ----------------------------------------------------------------- lengths

std::string emit_lengths(const RunConfig& c, const ZetaFunction& zf) {
    const auto counts = series_coefficients(zf, c.max_length);
    std::vector<Rational> lengths;
    Rational rm = 1;
    for (int m = 1; m <= c.max_length; ++m) {
        rm *= zf.r;
        lengths.push_back(rm);
    }
    if (c.format == OutputFormat::Json) {
        ordered_json j = metadata_json(c, "lengths");
        j["r"] = to_string(zf.r);
        ordered_json rows = ordered_json::array();
        for (int m = 1; m <= c.max_length; ++m) {
            ordered_json row;
            row["m"] = m;
            row["length"] = to_string(lengths[static_cast<std::size_t>(m - 1)]);
            row["count"] = counts[static_cast<std::size_t>(m - 1)].str();
            rows.push_back(row);
        }
        j["rows"] = rows;
        return j.dump(2) + "\n";
    }
    std::ostringstream os;
    os << metadata_comment(c);
    if (c.format == OutputFormat::Csv) {
        os << "m,length,count\n";
        for (int m = 1; m <= c.max_length; ++m)
            os << m << "," << to_string(lengths[static_cast<std::size_t>(m - 1)]) << ","
               << counts[static_cast<std::size_t>(m - 1)].str() << "\n";
        return os.str();
    }
    os << "intervals of length r^m (r = " << to_string(zf.r) << ")\n";
    for (int m = 1; m <= c.max_length; ++m)
        os << "  m = " << std::setw(3) << m << "   length = " << std::setw(12)
           << to_string(lengths[static_cast<std::size_t>(m - 1)]) << "   count = "
           << counts[static_cast<std::size_t>(m - 1)].str() << "\n";
    return os.str();
}

// -------------------------------------------------------------------- tube

template <class R> std::string emit_tube(const RunConfig& c, const ZetaFunction& zf) {
    const Rational eps = c.eps ? *c.eps : zf.r * zf.r;
    const auto dims = complex_dimensions<R>(zf);
    const auto row = tube_report(zf, dims, eps, c.truncation);
    const auto truncated = truncated_volume(zf, dims, to_real<R>(eps), c.truncation);
    const Rational thick = thick_volume(zf, eps);
    const Rational threshold = validity_threshold(zf);

    if (c.format == OutputFormat::Json) {
        ordered_json j = metadata_json(c, "tube");
        j["epsilon"] = to_string(eps);
        j["truncation"] = c.truncation;
        j["validity_threshold"] = to_string(threshold);
        j["V_direct"] = to_string(row.v_direct);
        j["V_direct_decimal"] = fmt<R>(to_real<R>(row.v_direct));
        j["V_explicit"] = fmt<R>(row.v_explicit);
        j["discrepancy"] = fmt<R>(row.discrepancy);
        j["breakpoint_flag"] = row.breakpoint_flag;
        j["V_thick"] = to_string(thick);
        j["leading_term"] = fmt<R>(truncated.leading);
        j["spectral_gap"] = fmt<R>(truncated.remainder_bound_exponent);
        return j.dump(2) + "\n";
    }
    if (c.format == OutputFormat::Csv)
        reject_csv("tube");

    std::ostringstream os;
    os << metadata_comment(c);
    os << "epsilon             = " << to_string(eps) << "\n";
    os << "validity threshold  = " << to_string(threshold) << "   (formulas exact for epsilon below this)\n";
    os << "V_direct            = " << to_string(row.v_direct) << " = "
       << fmt<R>(to_real<R>(row.v_direct)) << "\n";
    os << "V_explicit (N=" << c.truncation << ") = " << fmt<R>(row.v_explicit) << "\n";
    os << "discrepancy         = " << fmt<R>(row.discrepancy) << "\n";
    os << "breakpoint          = " << yes_no(row.breakpoint_flag) << "\n";
    os << "V_thick             = " << to_string(thick) << "\n";
    os << "leading term        = " << fmt<R>(truncated.leading) << "\n";
    os << "spectral gap        = " << fmt<R>(truncated.remainder_bound_exponent) << "\n";
    return os.str();
}

// ------------------------------------------------------------------- sweep

template <class R> std::string emit_sweep(const RunConfig& c, const ZetaFunction& zf) {
    const auto dims = complex_dimensions<R>(zf);
    const R lo = to_real<R>(c.grid.min), hi = to_real<R>(c.grid.max);
    const R log_step =
        c.grid.points == 1 ? R(0) : (log(hi) - log(lo)) / (c.grid.points - 1);

    struct Row {
        std::string epsilon, v_direct, v_explicit, discrepancy, leading, normalized;
        bool breakpoint;
    };
    std::vector<Row> rows;
    for (int i = 0; i < c.grid.points; ++i) {
        const R eps = exp(log(lo) + i * log_step);
        const Rational eps_exact = real_to_rational(eps);
        const auto report = tube_report(zf, dims, eps_exact, c.truncation);
        const auto truncated = truncated_volume(zf, dims, eps, c.truncation);
        const R normalized = to_real<R>(report.v_direct) * exp(-(1 - dims.D) * log(eps));
        rows.push_back({fmt<R>(eps), fmt<R>(to_real<R>(report.v_direct)),
                        fmt<R>(report.v_explicit), fmt<R>(report.discrepancy),
                        fmt<R>(truncated.leading), fmt<R>(normalized), report.breakpoint_flag});
    }

    if (c.format == OutputFormat::Json) {
        ordered_json j = metadata_json(c, "sweep");
        j["truncation"] = c.truncation;
        j["points"] = c.grid.points;
        ordered_json out = ordered_json::array();
        for (const auto& row : rows) {
            ordered_json r;
            r["epsilon"] = row.epsilon;
            r["V_direct"] = row.v_direct;
            r["V_explicit"] = row.v_explicit;
            r["discrepancy"] = row.discrepancy;
            r["breakpoint_flag"] = row.breakpoint;
            r["leading_term"] = row.leading;
            r["epsilon_pow_D_normalized"] = row.normalized;
            out.push_back(r);
        }
        j["rows"] = out;
        return j.dump(2) + "\n";
    }

    std::ostringstream os;
    os << metadata_comment(c);
    if (c.format == OutputFormat::Csv) {
        os << "epsilon,V_direct,V_explicit,discrepancy,breakpoint_flag,leading_term,"
              "epsilon_pow_D_normalized\n";
        for (const auto& row : rows)
            os << row.epsilon << "," << row.v_direct << "," << row.v_explicit << ","
               << row.discrepancy << "," << (row.breakpoint ? 1 : 0) << "," << row.leading << ","
               << row.normalized << "\n";
        return os.str();
    }
    for (const auto& row : rows)
        os << "eps = " << row.epsilon << "   V = " << row.v_direct
           << "   explicit = " << row.v_explicit << "   disc = " << row.discrepancy
           << (row.breakpoint ? "   [breakpoint]" : "") << "\n";
    return os.str();
}

// --------------------------------------------------------- content/report

template <class R>
std::string emit_content(const RunConfig& c, const ZetaFunction& zf, const std::string& command) {
    const R dimension = minkowski_dimension<R>(zf);
    const R mav = average_content<R>(zf);
    const R cesaro = cesaro_average<R>(zf, c.cesaro_pieces);
    const auto osc = nonmeasurability_report<R>(zf);

    if (c.format == OutputFormat::Json) {
        ordered_json j = metadata_json(c, command);
        j["D"] = fmt<R>(dimension);
        j["average_content"] = fmt<R>(mav);
        j["cesaro_L"] = c.cesaro_pieces;
        j["cesaro_value"] = fmt<R>(cesaro);
        j["liminf"] = fmt<R>(osc.liminf_est);
        j["limsup"] = fmt<R>(osc.limsup_est);
        j["amplitude"] = fmt<R>(osc.amplitude);
        j["exact"] = osc.liminf_exact.has_value();
        if (osc.liminf_exact) {
            j["liminf_rational"] = to_string(*osc.liminf_exact);
            j["limsup_rational"] = to_string(*osc.limsup_exact);
        }
        return j.dump(2) + "\n";
    }
    if (c.format == OutputFormat::Csv)
        reject_csv(command);

    std::ostringstream os;
    os << metadata_comment(c);
    os << "D                   = " << fmt<R>(dimension) << "\n";
    os << "average content     = " << fmt<R>(mav) << "\n";
    const std::string cesaro_label = "cesaro (L=" + std::to_string(c.cesaro_pieces) + ")";
    os << cesaro_label << std::string(cesaro_label.size() < 20 ? 20 - cesaro_label.size() : 1, ' ')
       << "= " << fmt<R>(cesaro) << "\n";
    os << "liminf              = " << fmt<R>(osc.liminf_est);
    if (osc.liminf_exact)
        os << "   (exactly " << to_string(*osc.liminf_exact) << ")";
    os << "\n";
    os << "limsup              = " << fmt<R>(osc.limsup_est);
    if (osc.limsup_exact)
        os << "   (exactly " << to_string(*osc.limsup_exact) << ")";
    os << "\n";
    os << "amplitude           = " << fmt<R>(osc.amplitude) << "   (> 0: not Minkowski measurable)\n";
    return os.str();
}

// ---------------------------------------------------------------- dispatch

template <class R> std::string run_impl(const RunConfig& c) {
    switch (c.command) {
    case Command::Validate:
        return emit_validate(c);
    case Command::Zeta:
        return emit_zeta(c, the_zeta(c));
    case Command::Dims:
        return emit_lines<R>(c, complex_dimensions<R>(the_zeta(c)), "dims");
    case Command::Zeros:
        return emit_lines<R>(c, zeros_of_zeta<R>(the_zeta(c)), "zeros");
    case Command::Tube:
        return emit_tube<R>(c, the_zeta(c));
    case Command::Sweep:
        return emit_sweep<R>(c, the_zeta(c));
    case Command::Lengths:
        return emit_lengths(c, the_zeta(c));
    case Command::Content:
        return emit_content<R>(c, the_zeta(c), "content");
    case Command::Report:
        return emit_content<R>(c, the_zeta(c), "report");
    }
    throw std::logic_error("run: unhandled command");
}

} // namespace

int run(const RunConfig& config) {
    const std::string artifact = config.precision_bits == 256 ? run_impl<Real256>(config)
                                                              : run_impl<Real128>(config);
    if (config.output_path.empty()) {
        std::cout << artifact;
        return 0;
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out)
        throw UsageError("cannot open output path '" + config.output_path + "'");
    out << artifact;
    return 0;
}

} // namespace padic::cli
