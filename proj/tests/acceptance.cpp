// Acceptance gate: every published criterion, each at its stated tolerance,
// one PASS/FAIL line per criterion.  Exits nonzero if anything fails.

#include "random_systems.hpp"

#include <padic/config.hpp>
#include <padic/dims.hpp>
#include <padic/minkowski.hpp>
#include <padic/system.hpp>
#include <padic/tube.hpp>
#include <padic/zeta.hpp>

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace padic;
using R = Real128;
using C = complex_t<R>;

namespace {

int failures = 0;

struct Checker {
    bool ok = true;
    std::ostringstream why;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            why << (why.tellp() > 0 ? "; " : "") << what;
        }
    }
};

template <class Body>
void criterion(int index, const std::string& name, double budget_seconds, Body&& body) {
    Checker check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& e) {
        check.expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_seconds > 0 && dt >= budget_seconds) {
        std::ostringstream os;
        os << "runtime " << dt << " s exceeded the budget of " << budget_seconds << " s";
        check.expect(false, os.str());
    }
    std::cout << (check.ok ? "PASS" : "FAIL") << "  criterion " << std::setw(2) << index << "  "
              << name << "  (" << std::fixed << std::setprecision(2) << dt << " s)\n";
    if (!check.ok) {
        std::cout << "      " << check.why.str() << "\n";
        ++failures;
    }
    std::cout.unsetf(std::ios::fixed);
}

std::string fmt(const R& x) {
    std::ostringstream os;
    os << std::setprecision(20) << x;
    return os.str();
}

bool within(const R& value, const R& reference, const R& tol) {
    return abs(value - reference) <= tol;
}

/// |value - reference| <= tol as a named expectation.
void expect_close(Checker& check, const std::string& label, const R& value, const R& reference,
                  const R& tol) {
    if (!within(value, reference, tol))
        check.expect(false, label + " = " + fmt(value) + ", wanted " + fmt(reference) +
                                " within " + fmt(tol));
}

ZetaFunction preset_zeta(const std::string& name) {
    return build_zeta(cli::preset_system(name));
}

// --------------------------------------------------------------- criteria

void dims_cantor(Checker& check) {
    const auto zf = preset_zeta("cs3");
    const auto dims = complex_dimensions<R>(zf);
    const R tol("1e-12");
    const R ln2 = log(R(2)), ln3 = log(R(3));
    check.expect(dims.lines.size() == 1, "expected exactly one pole line");
    if (dims.lines.empty())
        return;
    const auto& line = dims.lines.front();
    expect_close(check, "Re(base)", line.base.real(), ln2 / ln3, tol);
    expect_close(check, "Im(base)", line.base.imag(), R(0), tol);
    expect_close(check, "oscillatory period", dims.oscillatory_period, 2 * pi_value<R>() / ln3,
                 tol);
    check.expect(line.multiplicity == 1, "pole line is not simple");
    check.expect(line.residue.has_value(), "missing residue");
    if (line.residue) {
        expect_close(check, "Re(residue)", line.residue->real(), 1 / (2 * ln3), tol);
        expect_close(check, "Im(residue)", line.residue->imag(), R(0), tol);
    }
}

void dims_fibonacci(Checker& check) {
    const auto zf = preset_zeta("fs2");
    const auto dims = complex_dimensions<R>(zf);
    const R tol("1e-12");
    const R ln2 = log(R(2));
    const R phi = (1 + sqrt(R(5))) / 2;
    check.expect(dims.lines.size() == 2, "expected exactly two pole lines");
    if (dims.lines.size() != 2)
        return;
    const auto& top = dims.lines[0];
    const auto& mirror = dims.lines[1];
    check.expect(top.multiplicity == 1 && mirror.multiplicity == 1, "lines are not simple");
    expect_close(check, "Re(top)", top.base.real(), log(phi) / ln2, tol);
    expect_close(check, "Im(top)", top.base.imag(), R(0), tol);
    if (top.residue)
        expect_close(check, "residue(top)", top.residue->real(), (3 - phi) / (5 * ln2), tol);
    else
        check.expect(false, "missing top residue");
    expect_close(check, "Re(mirror)", mirror.base.real(), -log(phi) / ln2, tol);
    expect_close(check, "Im(mirror)", mirror.base.imag(), pi_value<R>() / ln2, tol);
    if (mirror.residue)
        expect_close(check, "residue(mirror)", mirror.residue->real(), (2 + phi) / (5 * ln2),
                     tol);
    else
        check.expect(false, "missing mirror residue");
    check.expect(zeros_of_zeta<R>(zf).lines.empty(), "zero set should be empty");
}

void exact_random_volumes(Checker& check) {
    const auto zf = preset_zeta("cs3");
    std::mt19937_64 rng(0xACCE5501ULL);
    std::uniform_real_distribution<double> draw(std::log(1e-9), 0.0);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const Rational eps = real_to_rational(R(std::exp(draw(rng))));
        int m = 0; // largest M with r^M >= eps, via exact comparisons
        for (Rational rm = zf.r; rm >= eps; rm *= zf.r)
            ++m;
        const Rational expected(pow_int(Int(2), static_cast<unsigned long>(m)),
                                pow_int(Int(3), static_cast<unsigned long>(m + 1)));
        if (volume_direct(zf, eps) != expected) {
            check.expect(false, "V(eps) != (1/3)(2/3)^" + std::to_string(m) + " at sample " +
                                    std::to_string(i));
            return;
        }
        ++checked;
    }
    check.expect(checked == 100, "did not reach 100 samples");
}

void gap_extraction(Checker& check) {
    const auto cantor = cli::preset_system("cs3");
    check.expect(cantor.gaps == std::vector<PAdicBall>{PAdicBall(Prime(3), 1, 1)},
                 "Cantor-type gap set is not {1+3Z_3}");
    const auto fib = cli::preset_system("fs2");
    check.expect(fib.gaps == std::vector<PAdicBall>{PAdicBall(Prime(2), 2, 3)},
                 "Fibonacci-type gap set is not {3+4Z_2}");
}

void length_counts_match(Checker& check) {
    const auto cantor = cli::preset_system("cs3");
    const auto zc = build_zeta(cantor);
    const auto c_counts = series_coefficients(zc, 30);
    Int power = 1;
    for (int m = 1; m <= 30; ++m) {
        if (c_counts[static_cast<std::size_t>(m - 1)] != power) {
            check.expect(false, "Cantor-type c_" + std::to_string(m) + " != 2^(m-1)");
            return;
        }
        power *= 2;
    }

    const auto fib = cli::preset_system("fs2");
    const auto f_counts = series_coefficients(build_zeta(fib), 30);
    Int f_prev = 0, f_here = 1; // c_m = F_{m-1} with F_0 = 0, F_1 = 1
    for (int m = 1; m <= 30; ++m) {
        if (f_counts[static_cast<std::size_t>(m - 1)] != f_prev) {
            check.expect(false, "Fibonacci-type c_" + std::to_string(m) + " != F_{m-1}");
            return;
        }
        const Int next = f_prev + f_here;
        f_prev = f_here;
        f_here = next;
    }

    // histogram of brute-force enumerated intervals, complete to the cutoff
    const auto histogram = [](const SelfSimilarSystem& sys, int cutoff) {
        std::map<int, Int> hist;
        for (const auto& b : enumerate_intervals(sys, cutoff, cutoff))
            ++hist[b.level / sys.d];
        return hist;
    };
    const auto hist_c = histogram(cantor, 16);
    for (int m = 1; m <= 16; ++m)
        if (hist_c.count(m) ? hist_c.at(m) != c_counts[static_cast<std::size_t>(m - 1)]
                            : c_counts[static_cast<std::size_t>(m - 1)] != 0) {
            check.expect(false, "Cantor-type histogram mismatch at m = " + std::to_string(m));
            return;
        }
    const auto hist_f = histogram(fib, 24);
    for (int m = 1; m <= 24; ++m)
        if (hist_f.count(m) ? hist_f.at(m) != f_counts[static_cast<std::size_t>(m - 1)]
                            : f_counts[static_cast<std::size_t>(m - 1)] != 0) {
            check.expect(false, "Fibonacci-type histogram mismatch at m = " + std::to_string(m));
            return;
        }
}

void explicit_formula_convergence(Checker& check) {
    int improved = 0, total = 0;
    for (const std::string name : {"cs3", "fs2"}) {
        const auto zf = preset_zeta(name);
        const auto dims = complex_dimensions<R>(zf);
        const R log_r = log(to_real<R>(zf.r));
        for (int m = 1; m <= 25; ++m) {
            const R eps = exp((R(m) + R(1) / 2) * log_r);
            const R direct = to_real<R>(volume_direct(zf, eps));
            const R coarse = abs(volume_explicit(zf, dims, eps, 2000) - direct);
            const R fine = abs(volume_explicit(zf, dims, eps, 8000) - direct);
            if (!(coarse <= R("1e-2") * direct)) {
                check.expect(false, name + " at m=" + std::to_string(m) +
                                        ": relative discrepancy " + fmt(coarse / direct) +
                                        " > 1e-2 at N=2000");
                return;
            }
            ++total;
            if (fine < coarse)
                ++improved;
        }
    }
    check.expect(total == 50, "expected 50 sample points");
    check.expect(improved >= 45, "N=8000 improved only " + std::to_string(improved) +
                                     "/50 discrepancies (need >= 45)");
}

void average_content_closed_forms(Checker& check) {
    const R tol("1e-12");
    const R ln2 = log(R(2)), ln3 = log(R(3));
    const R phi = (1 + sqrt(R(5))) / 2;

    const auto zc = preset_zeta("cs3");
    const R mav_c = average_content<R>(zc);
    expect_close(check, "Cantor-type average content", mav_c, 1 / (6 * (ln3 - ln2)), tol);
    const auto zf = preset_zeta("fs2");
    const R mav_f = average_content<R>(zf);
    expect_close(check, "Fibonacci-type average content", mav_f,
                 1 / (2 * (phi + 2) * (ln2 - log(phi))), tol);

    const R ces_c = cesaro_average<R>(zc, 400);
    check.expect(abs(ces_c - mav_c) <= R("1e-2") * mav_c,
                 "Cantor-type Cesaro(400) off by " + fmt(abs(ces_c - mav_c) / mav_c));
    const R ces_f = cesaro_average<R>(zf, 400);
    check.expect(abs(ces_f - mav_f) <= R("1e-2") * mav_f,
                 "Fibonacci-type Cesaro(400) off by " + fmt(abs(ces_f - mav_f) / mav_f));
}

void oscillation_extremes(Checker& check) {
    const auto cantor = nonmeasurability_report<R>(preset_zeta("cs3"));
    check.expect(cantor.liminf_exact.has_value() && cantor.limsup_exact.has_value(),
                 "Cantor-type extremes should be certified exact");
    if (cantor.liminf_exact)
        check.expect(*cantor.liminf_exact == Rational(1, 3),
                     "exact liminf != 1/3: " + to_string(*cantor.liminf_exact));
    if (cantor.limsup_exact)
        check.expect(*cantor.limsup_exact == Rational(1, 2),
                     "exact limsup != 1/2: " + to_string(*cantor.limsup_exact));
    check.expect(cantor.amplitude > R("1e-6"), "Cantor-type amplitude too small");

    const auto fib = nonmeasurability_report<R>(preset_zeta("fs2"));
    check.expect(fib.amplitude > R("1e-6"), "Fibonacci-type amplitude too small");
}

void randomized_invariants(Checker& check) {
    std::mt19937_64 rng(0xACCE5509ULL);
    for (int trial = 0; trial < 200; ++trial) {
        const auto tag = " (system " + std::to_string(trial) + ")";
        const auto sys = testutil::random_system(rng);
        const auto zf = build_zeta(sys);

        Rational total = 0;
        for (const auto& f : sys.maps)
            total += contraction_ratio(f);
        for (const auto& g : sys.gaps)
            total += haar_measure(g);
        if (total != 1) {
            check.expect(false, "gap identity broken" + tag);
            return;
        }

        const auto dims = complex_dimensions<R>(zf);
        const auto& lead = dims.lines.front();
        if (!(lead.base.imag() == 0 && lead.multiplicity == 1 &&
              lead.base.real() == dims.D && dims.D > 0 && dims.D < 1)) {
            check.expect(false, "leading line not real/simple in (0,1)" + tag);
            return;
        }
        for (std::size_t i = 1; i < dims.lines.size(); ++i) {
            const bool dominated = dims.lines[i].base.real() < dims.D ||
                                   dims.lines[i].base.imag() != 0;
            if (!(dims.lines[i].base.real() <= dims.D && dominated)) {
                check.expect(false, "a second line is real at Re = D" + tag);
                return;
            }
        }

        if (series_coefficients(zf, 20) != length_counts(sys, 20)) {
            check.expect(false, "series vs combinatorial counts" + tag);
            return;
        }

        Rational prev_eps = 0, prev_v = 0;
        bool first = true;
        std::vector<Rational> eps_grid;
        for (int k = 0; k < 8; ++k)
            eps_grid.emplace_back(1 + static_cast<long>(rng() % 9999), 10000);
        std::sort(eps_grid.begin(), eps_grid.end());
        for (const auto& eps : eps_grid) {
            const Rational v = volume_direct(zf, eps);
            if (!first && !(prev_v <= v)) {
                check.expect(false, "volume decreased between eps " + to_string(prev_eps) +
                                        " and " + to_string(eps) + tag);
                return;
            }
            prev_eps = eps;
            prev_v = v;
            first = false;
        }

        // Cesaro mean bracketed by the normalized piece extremes over the
        // same window: cesaro = mean(a_m) (rho-1)/ln(rho), factor in (1, rho)
        const int pieces = 60;
        const R rho = moran_root<R>(zf) * pow(R(zf.prime.value()), zf.d);
        R lo(0), hi(0);
        Rational eps_m = 1;
        R rho_pow(1);
        for (int m = 0; m < pieces; ++m) {
            const R a = to_real<R>(volume_direct(zf, eps_m)) * rho_pow;
            if (m == 0)
                lo = hi = a;
            lo = std::min(lo, a);
            hi = std::max(hi, a);
            eps_m *= zf.r;
            rho_pow *= rho;
        }
        const R cesaro = cesaro_average<R>(zf, pieces);
        if (!(cesaro >= lo * (1 - R("1e-9")) && cesaro <= rho * hi * (1 + R("1e-9")))) {
            check.expect(false, "Cesaro mean escaped the piece bracket" + tag);
            return;
        }
    }
}

void higher_multiplicity_machinery(Checker& check) {
    // hand-built zeta z/(1 - 2z)^2 over p = 3: double pole line at
    // omega_0 = ln 2 / ln 3, Laurent part 1/(2 ln^2 3) h^-2 + 0 h^-1
    const IntPolynomial num(std::vector<Int>{0, 1});
    const IntPolynomial den(std::vector<Int>{1, -4, 4});
    const ZetaFunction zf{Prime(3), 1, Rational(1, 3), num, den, num, den, false};
    const R ln3 = log(R(3));

    DimensionLine<R> line;
    line.base = C(log(R(2)) / ln3, R(0));
    line.z_root = C(R(1) / 2, R(0));
    line.multiplicity = 2;
    line.kind = LineKind::Pole;

    const auto laurent = principal_part(zf, line);
    check.expect(laurent.size() == 2, "expected two Laurent coefficients");
    expect_close(check, "a_{-2}", laurent[0].real(), 1 / (2 * ln3 * ln3), R("1e-10"));
    expect_close(check, "Im a_{-2}", laurent[0].imag(), R(0), R("1e-10"));
    check.expect(R(abs(laurent[1])) <= R("1e-10"), "a_{-1} should vanish, got " +
                                                       fmt(R(abs(laurent[1]))));

    // the n = 0 tube term of the double pole vs numerical contour
    // integration of eps^{1-s} zeta(s) / (p (1-s)) around omega_0
    DimensionSet<R> one_line;
    one_line.lines = {line};
    one_line.oscillatory_period = oscillatory_period<R>(zf);
    one_line.D = line.base.real();
    one_line.strict_dominance = true;

    const int K = 4096;
    const R radius = R(1) / 20;
    const R two_pi = 2 * pi_value<R>();
    for (const Rational& eps_rational : {Rational(3, 10), Rational(7, 100)}) {
        const R eps = to_real<R>(eps_rational);
        const R jet_term = volume_explicit(zf, one_line, eps, 0);
        C sum(0);
        for (int k = 0; k < K; ++k) {
            const R theta = two_pi * k / K;
            const C offset = C(radius * cos(theta), radius * sin(theta));
            const C s = C(one_line.D, R(0)) + offset;
            const auto value = evaluate_zeta<R>(zf, s);
            if (value.is_pole) {
                check.expect(false, "contour touched a pole");
                return;
            }
            const C integrand = cpow(eps, C(R(1)) - s) * value.value /
                                (C(R(3)) * (C(R(1)) - s));
            sum += integrand * offset; // ds/(2 pi i) contributes offset/K
        }
        sum /= K;
        expect_close(check, "contour residue at eps=" + to_string(eps_rational),
                     jet_term, sum.real(), R("1e-6"));
        check.expect(abs(sum.imag()) <= R("1e-12"),
                     "contour imaginary part should cancel");
    }
}

} // namespace

int main() {
    std::cout << "padic-tube acceptance gate\n";
    criterion(1, "Cantor-type dimension line, period, residue", 1.0, dims_cantor);
    criterion(2, "Fibonacci-type dimension lines and residues", 1.0, dims_fibonacci);
    criterion(3, "100 exact random volumes", 1.0, exact_random_volumes);
    criterion(4, "gap extraction on the presets", 1.0, gap_extraction);
    criterion(5, "length counts: closed forms and histograms", 10.0, length_counts_match);
    criterion(6, "explicit formula convergence on 50 midpoints", 30.0,
              explicit_formula_convergence);
    criterion(7, "average Minkowski content and Cesaro means", 5.0,
              average_content_closed_forms);
    criterion(8, "oscillation extremes and nonmeasurability", 5.0, oscillation_extremes);
    criterion(9, "200 randomized system invariants", 120.0, randomized_invariants);
    criterion(10, "double-pole Laurent and jet tube term", 5.0, higher_multiplicity_machinery);

    std::cout << (10 - failures) << "/10 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
