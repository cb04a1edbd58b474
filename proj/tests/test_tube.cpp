#include <doctest.h>

#include <padic/dims.hpp>
#include <padic/system.hpp>
#include <padic/tube.hpp>
#include <padic/zeta.hpp>

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

using namespace padic;
using R = Real128;

namespace {

SelfSimilarSystem cantor3() {
    const Prime p(3);
    return validate_system({AffineContraction(p, 3, 0), AffineContraction(p, 3, 2)});
}

SelfSimilarSystem fibonacci2() {
    const Prime p(2);
    return validate_system({AffineContraction(p, 2, 0), AffineContraction(p, 4, 1)});
}

SelfSimilarSystem tied2() {
    const Prime p(2);
    return validate_system({AffineContraction(p, 4, 0), AffineContraction(p, 4, 2)});
}

/// Independent volume oracle: count lengths by brute-force enumeration of
/// the intervals (complete for scaled exponents m <= depth) and subtract the
/// head sum from the total measure.
Rational volume_by_enumeration(const SelfSimilarSystem& sys, const Rational& eps, int depth) {
    const auto zf = build_zeta(sys);
    int head = 0;
    for (Rational rm = zf.r; rm >= eps; rm *= zf.r)
        ++head;
    REQUIRE(head <= depth);
    std::map<int, Int> hist;
    for (const auto& b : enumerate_intervals(sys, depth, depth))
        ++hist[b.level / sys.d];
    Rational acc = 1; // zeta(1) = 1 for geometric systems
    Rational rpow = 1;
    for (int m = 1; m <= head; ++m) {
        rpow *= zf.r;
        if (hist.count(m))
            acc -= Rational(hist.at(m)) * rpow;
    }
    return acc / sys.prime.value();
}

} // namespace

TEST_CASE("direct volumes on the reference points") {
    const auto zc = build_zeta(cantor3());
    CHECK(volume_direct(zc, Rational(1)) == Rational(1, 3));
    CHECK(volume_direct(zc, Rational(1, 3)) == Rational(2, 9));
    CHECK(volume_direct(zc, Rational(1, 9)) == Rational(4, 27));
    CHECK(volume_direct(zc, Rational(1, 27)) == Rational(8, 81));
    CHECK(volume_direct(zc, Rational(2)) == Rational(1, 3)); // saturates above eps = 1
    CHECK_THROWS_AS(volume_direct(zc, Rational(0)), std::domain_error);
    CHECK_THROWS_AS(volume_direct(zc, Rational(-1)), std::domain_error);

    const auto zfib = build_zeta(fibonacci2());
    CHECK(volume_direct(zfib, Rational(1, 3)) == Rational(1, 2));
    CHECK(volume_direct(zfib, Rational(1, 8)) == Rational(5, 16));

    // the floating overload is exact on dyadic input
    CHECK(volume_direct(zfib, R(1) / 8) == Rational(5, 16));
    CHECK(volume_direct(zc, R("0.125")) == volume_direct(zc, Rational(1, 8)));
}

TEST_CASE("direct volume agrees with brute-force interval enumeration") {
    const auto cantor = cantor3();
    const auto fib = fibonacci2();
    const auto tied = tied2();
    for (const Rational& eps :
         {Rational(1, 5), Rational(1, 7), Rational(1, 9), Rational(1, 50), Rational(1, 100)}) {
        CHECK(volume_direct(build_zeta(cantor), eps) == volume_by_enumeration(cantor, eps, 8));
        CHECK(volume_direct(build_zeta(fib), eps) == volume_by_enumeration(fib, eps, 10));
        CHECK(volume_direct(build_zeta(tied), eps) == volume_by_enumeration(tied, eps, 8));
    }
}

TEST_CASE("volume is nondecreasing in eps") {
    std::mt19937_64 rng(31);
    const auto zf = build_zeta(fibonacci2());
    for (int trial = 0; trial < 50; ++trial) {
        Rational e1(1 + static_cast<long>(rng() % 9999), 10000);
        Rational e2(1 + static_cast<long>(rng() % 9999), 10000);
        if (e2 < e1)
            std::swap(e1, e2);
        CHECK(volume_direct(zf, e1) <= volume_direct(zf, e2));
    }
}

TEST_CASE("thick volume adds the boundary measure") {
    const auto zc = build_zeta(cantor3());
    CHECK(thick_volume(zc, Rational(1, 9)) - volume_direct(zc, Rational(1, 9)) ==
          Rational(2, 3));
    const auto zfib = build_zeta(fibonacci2());
    CHECK(thick_volume(zfib, Rational(1, 8)) == Rational(5, 16) + Rational(1, 2));
}

TEST_CASE("validity thresholds") {
    CHECK(validity_threshold(build_zeta(cantor3())) == 1);
    CHECK(validity_threshold(build_zeta(fibonacci2())) == 1);
    CHECK(validity_threshold(build_zeta(tied2())) == 2); // z over 1 - 2z^2
    // lengths 2^-2, 2^-3, 2^-3 with the single gap 2^-1: z/(1 - z^2 - 2z^3)
    const auto wide = build_zeta(make_lattice(Prime(2), {2, 3, 3}, {1}));
    CHECK(validity_threshold(wide) == 4);
}

TEST_CASE("explicit formula reproduces the exact volume") {
    const int truncation = 2000;
    const R tol("2e-3");
    for (const auto& sys : {cantor3(), fibonacci2(), tied2()}) {
        const auto zf = build_zeta(sys);
        const auto dims = complex_dimensions<R>(zf);
        for (const Rational& eps : {Rational(1, 5), Rational(1, 20)}) {
            const Rational exact = volume_direct(zf, eps);
            const R approx = volume_explicit(zf, dims, to_real<R>(eps), truncation);
            CHECK(abs(approx - to_real<R>(exact)) <= tol * to_real<R>(exact));
        }
    }
    // a conjugate pair of pole lines: realness comes from cross-line pairing
    const auto zf = build_zeta(make_lattice(Prime(2), {1, 3}, {2, 3}));
    const auto dims = complex_dimensions<R>(zf);
    for (const Rational& eps : {Rational(1, 5), Rational(1, 13)}) {
        const Rational exact = volume_direct(zf, eps);
        const R approx = volume_explicit(zf, dims, to_real<R>(eps), truncation);
        CHECK(abs(approx - to_real<R>(exact)) <= R("5e-3") * to_real<R>(exact));
    }
    CHECK_THROWS_AS(volume_explicit(zf, dims, R(0), truncation), std::domain_error);
}

TEST_CASE("explicit formula converges to the jump midpoint at a breakpoint") {
    // V jumps at eps = r^m; the symmetric partial sums of the Fourier series
    // converge to the midpoint of the jump there.  At eps = 1/9 the one-sided
    // values are 4/27 and 2/9, so the formula must approach 5/27.
    const auto zf = build_zeta(cantor3());
    const auto dims = complex_dimensions<R>(zf);
    const R at_jump = volume_explicit(zf, dims, R(1) / 9, 2000);
    CHECK(abs(at_jump - R(5) / 27) <= R("1e-4"));
}

TEST_CASE("per-line Fourier amplitudes") {
    const auto zf = build_zeta(cantor3());
    const auto dims = complex_dimensions<R>(zf);
    const auto& line = dims.lines.front();

    // closed form: h(x) = eps^{-(1-D)} V(eps) at fractional depth 1/2 equals
    // (1/3) sqrt(3/2), since 3^{1-D} = 3/2
    const R reference = sqrt(R(3) / 2) / 3;
    CHECK(abs(fourier_G(zf, line, R(1) / 2, 2000) - reference) <= R("1e-8"));

    // G has period 1 in x
    const R a = fourier_G(zf, line, R(1) / 4, 500);
    const R b = fourier_G(zf, line, R(5) / 4, 500);
    CHECK(abs(a - b) <= R("1e-30"));

    // regrouping by line cannot change the sum
    for (const auto& sys : {cantor3(), fibonacci2()}) {
        const auto z = build_zeta(sys);
        const auto ds = complex_dimensions<R>(z);
        for (const Rational& eps : {Rational(1, 7), Rational(3, 100)}) {
            const R e = to_real<R>(eps);
            CHECK(abs(volume_via_G(z, ds, e, 400) - volume_explicit(z, ds, e, 400)) <=
                  R("1e-30"));
        }
    }
}

TEST_CASE("truncated tube formula and the spectral gap") {
    const auto zfib = build_zeta(fibonacci2());
    const auto dfib = complex_dimensions<R>(zfib);
    const R eps("1e-3");
    const auto trunc = truncated_volume(zfib, dfib, eps, 2000);
    // gap between Re = D and the next line is exactly 2D here
    CHECK(abs(trunc.remainder_bound_exponent - 2 * dfib.D) <= R("1e-30"));
    // the leading term already captures the volume up to O(eps^{2D})
    const R exact = to_real<R>(volume_direct(zfib, eps));
    CHECK(abs(trunc.leading - exact) <= R("1e-2") * exact);

    // single-line and fully-tied strings keep every line: no remainder scale
    const auto zc = build_zeta(cantor3());
    const auto dc = complex_dimensions<R>(zc);
    const auto tc = truncated_volume(zc, dc, R(1) / 7, 800);
    CHECK(isinf(tc.remainder_bound_exponent));
    CHECK(abs(tc.leading - volume_explicit(zc, dc, R(1) / 7, 800)) <= R("1e-30"));

    const auto zt = build_zeta(tied2());
    const auto dt = complex_dimensions<R>(zt);
    const auto tt = truncated_volume(zt, dt, R(1) / 100, 800);
    CHECK(isinf(tt.remainder_bound_exponent));
    CHECK(abs(tt.leading - volume_explicit(zt, dt, R(1) / 100, 800)) <= R("1e-30"));
}

TEST_CASE("breakpoint detection") {
    const auto zf = build_zeta(cantor3());
    CHECK(near_breakpoint(zf, R(1) / 27));
    CHECK(near_breakpoint(zf, (R(1) / 27) * (1 + R("1e-10"))));
    CHECK(!near_breakpoint(zf, (R(1) / 27) * R("1.01")));
    CHECK(!near_breakpoint(zf, R(1) / 20));
    CHECK(near_breakpoint(zf, R(1))); // m = 0
}

TEST_CASE("tube report rows are self-consistent") {
    const auto zf = build_zeta(cantor3());
    const auto dims = complex_dimensions<R>(zf);

    const auto row = tube_report(zf, dims, Rational(1, 27), 1000);
    CHECK(row.epsilon == Rational(1, 27));
    CHECK(row.v_direct == Rational(8, 81));
    CHECK(row.truncation == 1000);
    CHECK(row.breakpoint_flag);
    CHECK(row.discrepancy == abs(row.v_explicit - to_real<R>(row.v_direct)));

    const auto off = tube_report(zf, dims, Rational(1, 20), 1000);
    CHECK(!off.breakpoint_flag);
    CHECK(off.discrepancy <= R("1e-3"));
}
