#include <doctest.h>

#include <padic/contraction.hpp>
#include <padic/errors.hpp>
#include <padic/system.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

using namespace padic;

namespace {

SelfSimilarSystem cantor3() {
    const Prime p(3);
    return validate_system({AffineContraction(p, 3, 0), AffineContraction(p, 3, 2)});
}

SelfSimilarSystem fibonacci2() {
    const Prime p(2);
    return validate_system({AffineContraction(p, 2, 0), AffineContraction(p, 4, 1)});
}

/// Histogram of scaled length exponents m = level / d of a set of intervals.
std::map<int, Int> level_histogram(const std::vector<PAdicBall>& intervals, int d) {
    std::map<int, Int> hist;
    for (const auto& b : intervals) {
        REQUIRE(b.level % d == 0);
        ++hist[b.level / d];
    }
    return hist;
}

} // namespace

TEST_CASE("contraction maps validate their coefficients") {
    const Prime p2(2), p3(3);
    CHECK_NOTHROW(AffineContraction(p3, 3, 2));
    CHECK_NOTHROW(AffineContraction(p2, Rational(4), Rational(1)));
    CHECK_THROWS_AS(AffineContraction(p3, 1, 0), ValidationError);   // |a| = 1, no contraction
    CHECK_THROWS_AS(AffineContraction(p3, 2, 0), ValidationError);   // |2|_3 = 1
    CHECK_THROWS_AS(AffineContraction(p3, 0, 0), ValidationError);   // degenerate
    CHECK_THROWS_AS(AffineContraction(p3, 3, Rational(1, 3)), ValidationError); // b outside Z_3
    CHECK_NOTHROW(AffineContraction(p3, 3, Rational(1, 2))); // 1/2 is a 3-adic integer
}

TEST_CASE("contraction ratios on the reference maps") {
    CHECK(contraction_ratio(AffineContraction(Prime(3), 3, 0)) == Rational(1, 3));
    CHECK(contraction_ratio(AffineContraction(Prime(2), 4, 1)) == Rational(1, 4));
    CHECK(contraction_ratio(AffineContraction(Prime(2), 2, 0)) == Rational(1, 2));
    CHECK(contraction_level(AffineContraction(Prime(2), 4, 1)) == 2);
    CHECK(contraction_level(AffineContraction(Prime(5), 50, 3)) == 2);
}

TEST_CASE("image balls on the reference maps") {
    const Prime p3(3), p2(2);
    const PAdicBall ambient3(p3, 0, 0);
    CHECK(image_ball(AffineContraction(p3, 3, 0), ambient3) == PAdicBall(p3, 1, 0));
    CHECK(image_ball(AffineContraction(p3, 3, 2), ambient3) == PAdicBall(p3, 1, 2));
    CHECK(image_ball(AffineContraction(p2, 2, 0), PAdicBall(p2, 2, 3)) == PAdicBall(p2, 3, 6));
    // measure scales by the contraction ratio
    const AffineContraction f(p2, 4, 1);
    const PAdicBall b(p2, 1, 1);
    CHECK(haar_measure(image_ball(f, b)) == contraction_ratio(f) * haar_measure(b));
    CHECK_THROWS_AS(image_ball(f, PAdicBall(p3, 1, 1)), std::invalid_argument);
}

TEST_CASE("validated Cantor-type system") {
    const auto sys = cantor3();
    CHECK(sys.prime == Prime(3));
    CHECK(sys.scaling_exponents == std::vector<int>{1, 1});
    REQUIRE(sys.gaps.size() == 1);
    CHECK(sys.gaps[0] == PAdicBall(Prime(3), 1, 1));
    CHECK(sys.gap_exponents == std::vector<int>{1});
    CHECK(sys.d == 1);
    CHECK(sys.r == Rational(1, 3));
    CHECK(sys.scaled_scaling_exponents == sys.scaling_exponents);
    CHECK(sys.scaled_gap_exponents == sys.gap_exponents);
}

TEST_CASE("validated Fibonacci-type system") {
    const auto sys = fibonacci2();
    CHECK(sys.prime == Prime(2));
    CHECK(sys.scaling_exponents == std::vector<int>{1, 2});
    REQUIRE(sys.gaps.size() == 1);
    CHECK(sys.gaps[0] == PAdicBall(Prime(2), 2, 3));
    CHECK(sys.gap_exponents == std::vector<int>{2});
    CHECK(sys.d == 1);
    CHECK(sys.r == Rational(1, 2));
}

TEST_CASE("validation sorts maps by nonincreasing ratio") {
    const Prime p(2);
    // same Fibonacci-type system fed in the opposite order
    const auto sys = validate_system({AffineContraction(p, 4, 1), AffineContraction(p, 2, 0)});
    CHECK(sys.scaling_exponents == std::vector<int>{1, 2});
    CHECK(contraction_ratio(sys.maps[0]) == Rational(1, 2));
    CHECK(contraction_ratio(sys.maps[1]) == Rational(1, 4));
}

TEST_CASE("validation failure modes are distinguished") {
    const Prime p2(2), p3(3);
    // fewer than two maps
    CHECK_THROWS_AS(validate_system({AffineContraction(p3, 3, 0)}), ValidationError);
    CHECK_THROWS_AS(validate_system({}), ValidationError);
    // overlapping images
    CHECK_THROWS_AS(validate_system({AffineContraction(p3, 3, 0), AffineContraction(p3, 3, 0)}),
                    ValidationError);
    CHECK_THROWS_AS(validate_system({AffineContraction(p3, 3, 0), AffineContraction(p3, 9, 3)}),
                    ValidationError); // 9Z_3 + 3 sits inside 3Z_3
    // ratio sum = 1 leaves no gap
    CHECK_THROWS_AS(validate_system({AffineContraction(p2, 2, 0), AffineContraction(p2, 2, 1)}),
                    ValidationError);
    // mixed primes
    CHECK_THROWS_AS(validate_system({AffineContraction(p3, 3, 0), AffineContraction(p2, 2, 1)}),
                    ValidationError);
}

TEST_CASE("gap extraction coalesces complementary siblings") {
    const Prime p(2);
    // images 4Z_2 and 2+4Z_2; the complement 1+4Z_2 and 3+4Z_2 coalesces
    const auto sys = validate_system({AffineContraction(p, 4, 0), AffineContraction(p, 4, 2)});
    REQUIRE(sys.gaps.size() == 1);
    CHECK(sys.gaps[0] == PAdicBall(p, 1, 1));
    CHECK(sys.gap_exponents == std::vector<int>{1});
    CHECK(sys.scaling_exponents == std::vector<int>{2, 2});
    CHECK(sys.d == 1); // gcd(2, 2, 1)
}

TEST_CASE("gap identity holds exactly for validated systems") {
    for (const auto& sys : {cantor3(), fibonacci2()}) {
        Rational total = 0;
        for (const auto& f : sys.maps)
            total += contraction_ratio(f);
        for (const auto& g : sys.gaps)
            total += haar_measure(g);
        CHECK(total == 1);
    }
}

TEST_CASE("length counts follow the closed forms") {
    const auto cantor_counts = length_counts(cantor3(), 8);
    REQUIRE(cantor_counts.size() == 8);
    Int power = 1;
    for (int m = 1; m <= 8; ++m) { // c_m = 2^{m-1}
        CHECK(cantor_counts[static_cast<std::size_t>(m - 1)] == power);
        power *= 2;
    }

    const auto fib_counts = length_counts(fibonacci2(), 10);
    const long expected[] = {0, 1, 1, 2, 3, 5, 8, 13, 21, 34};
    REQUIRE(fib_counts.size() == 10);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(fib_counts[i] == expected[i]);

    CHECK(length_counts(cantor3(), 0).empty());
}

TEST_CASE("interval enumeration on the reference systems") {
    const auto cantor = cantor3();
    // depth 0: just the gap generators
    CHECK(enumerate_intervals(cantor, 0) == cantor.gaps);

    const auto depth1 = enumerate_intervals(cantor, 1);
    const std::vector<PAdicBall> expected1 = {
        PAdicBall(Prime(3), 1, 1), PAdicBall(Prime(3), 2, 3), PAdicBall(Prime(3), 2, 5)};
    CHECK(depth1 == expected1);

    const auto fib2 = enumerate_intervals(fibonacci2(), 2);
    const Prime p2(2);
    for (const auto& must : {PAdicBall(p2, 2, 3), PAdicBall(p2, 3, 6), PAdicBall(p2, 4, 12),
                             PAdicBall(p2, 4, 13)})
        CHECK(std::find(fib2.begin(), fib2.end(), must) != fib2.end());
    CHECK(fib2.size() == 7); // 1 + 2 + 4 words, minus nothing: F-type tree

    // intervals are pairwise disjoint
    for (std::size_t i = 0; i < fib2.size(); ++i)
        for (std::size_t j = i + 1; j < fib2.size(); ++j)
            CHECK(ball_relation(fib2[i], fib2[j]) == BallRelation::Disjoint);
}

TEST_CASE("enumerated histograms reproduce the length counts") {
    const auto cantor = cantor3();
    const auto cantor_hist = level_histogram(enumerate_intervals(cantor, 10, 10), cantor.d);
    const auto cantor_counts = length_counts(cantor, 10);
    for (int m = 1; m <= 10; ++m)
        CHECK(cantor_hist.at(m) == cantor_counts[static_cast<std::size_t>(m - 1)]);

    const auto fib = fibonacci2();
    const auto fib_hist = level_histogram(enumerate_intervals(fib, 12, 12), fib.d);
    const auto fib_counts = length_counts(fib, 12);
    for (int m = 2; m <= 12; ++m) // no interval has length r^1
        CHECK(fib_hist.at(m) == fib_counts[static_cast<std::size_t>(m - 1)]);
    CHECK(fib_hist.count(1) == 0);

    // the pruned overload really prunes
    for (const auto& b : enumerate_intervals(fib, 12, 6))
        CHECK(b.level <= 6);
}

TEST_CASE("lattice data derives the exponent gcd") {
    const auto lat = make_lattice(Prime(2), {2, 4}, {2, 2, 4, 4, 4});
    CHECK(lat.d == 2);
    CHECK(lat.scaled_scaling_exponents == std::vector<int>{1, 2});
    CHECK(lat.scaled_gap_exponents == std::vector<int>{1, 1, 2, 2, 2});

    const auto plain = make_lattice(Prime(3), {1, 1}, {1});
    CHECK(plain.d == 1);
    CHECK(plain.scaled_scaling_exponents == std::vector<int>{1, 1});
}

TEST_CASE("lattice data is validated") {
    CHECK_THROWS_AS(make_lattice(Prime(2), {}, {1}), ValidationError);
    CHECK_THROWS_AS(make_lattice(Prime(2), {1, 2}, {}), ValidationError);
    CHECK_THROWS_AS(make_lattice(Prime(2), {0, 2}, {2}), ValidationError);
    CHECK_THROWS_AS(make_lattice(Prime(2), {1, -2}, {2}), ValidationError);
    // the measures must still sum to 1: 1/2 + 1/2 + 1/4 > 1
    CHECK_THROWS_AS(make_lattice(Prime(2), {1, 1}, {2}), ValidationError);
    CHECK_THROWS_AS(make_lattice(Prime(3), {1, 1}, {2}), ValidationError); // 7/9 < 1
    CHECK_NOTHROW(make_lattice(Prime(2), {1, 3, 4}, {2, 4})); // 11/16 + 5/16
}
