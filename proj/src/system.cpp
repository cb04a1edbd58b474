#include "padic/system.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace padic {

namespace {

// Gap search by subdivision: a candidate ball disjoint from every image is a
// maximal complement ball (the first such ball on the way down is maximal by
// construction); a ball equal to or inside an image is discarded; otherwise
// recurse.  Depth is bounded by max n_j: at that level every ball is either
// an image or disjoint from all of them.
void gap_search(const PAdicBall& candidate, const std::vector<PAdicBall>& images,
                std::vector<PAdicBall>& gaps) {
    bool overlaps_image = false;
    for (const auto& img : images) {
        switch (ball_relation(candidate, img)) {
        case BallRelation::Equal:
        case BallRelation::FirstInsideSecond:
            return; // swallowed by an image: no gap here
        case BallRelation::SecondInsideFirst:
            overlaps_image = true;
            break;
        case BallRelation::Disjoint:
            break;
        }
    }
    if (!overlaps_image) {
        gaps.push_back(candidate);
        return;
    }
    for (const auto& child : subdivide(candidate))
        gap_search(child, images, gaps);
}

std::vector<Int> length_counts_impl(const std::vector<int>& scaled_n,
                                    const std::vector<int>& scaled_m, int M) {
    if (M < 0)
        throw std::invalid_argument("length_counts: M must be >= 0");
    std::vector<Int> c(static_cast<std::size_t>(M) + 1, Int(0)); // c[0] unused
    for (int m = 1; m <= M; ++m) {
        Int cm = static_cast<long>(std::count(scaled_m.begin(), scaled_m.end(), m));
        for (const int n : scaled_n)
            if (m - n >= 1)
                cm += c[static_cast<std::size_t>(m - n)];
        c[static_cast<std::size_t>(m)] = cm;
    }
    return {c.begin() + 1, c.end()};
}

} // namespace

LatticeData make_lattice(const Prime& p, const std::vector<int>& scaling_exponents,
                         const std::vector<int>& gap_exponents) {
    if (scaling_exponents.empty())
        throw ValidationError("lattice data needs at least one scaling exponent");
    if (gap_exponents.empty())
        throw ValidationError("lattice data needs at least one gap exponent");
    int d = 0;
    for (const int n : scaling_exponents) {
        if (n < 1)
            throw ValidationError("scaling exponent " + std::to_string(n) + " must be >= 1");
        d = std::gcd(d, n);
    }
    for (const int m : gap_exponents) {
        if (m < 1)
            throw ValidationError("gap exponent " + std::to_string(m) + " must be >= 1");
        d = std::gcd(d, m);
    }
    // The gap identity is arithmetic, not geometric: abstract lattice data
    // must still describe a partition of Z_p by measure.
    Rational total = 0;
    for (const int n : scaling_exponents)
        total += Rational(1, pow_int(Int(p.value()), static_cast<unsigned long>(n)));
    for (const int m : gap_exponents)
        total += Rational(1, pow_int(Int(p.value()), static_cast<unsigned long>(m)));
    if (total != 1)
        throw ValidationError("gap identity violated: lattice measures sum to " + to_string(total) +
                              ", not 1");
    LatticeData lat{p, d, scaling_exponents, gap_exponents};
    for (int& n : lat.scaled_scaling_exponents)
        n /= d;
    for (int& m : lat.scaled_gap_exponents)
        m /= d;
    std::sort(lat.scaled_scaling_exponents.begin(), lat.scaled_scaling_exponents.end());
    std::sort(lat.scaled_gap_exponents.begin(), lat.scaled_gap_exponents.end());
    return lat;
}

std::vector<PAdicBall> extract_gaps(const std::vector<AffineContraction>& maps) {
    if (maps.empty())
        throw ValidationError("extract_gaps: no maps");
    const Prime p = maps.front().prime;
    std::vector<PAdicBall> images;
    images.reserve(maps.size());
    for (const auto& f : maps)
        images.push_back(image_ball(f, PAdicBall(p, 0, 0)));
    std::vector<PAdicBall> gaps;
    gap_search(PAdicBall(p, 0, 0), images, gaps);
    std::sort(gaps.begin(), gaps.end(), ball_less); // coarsest (largest) first
    return gaps;
}

SelfSimilarSystem validate_system(const std::vector<AffineContraction>& maps_in) {
    if (maps_in.size() < 2)
        throw ValidationError("a self-similar system needs at least 2 maps, got " +
                              std::to_string(maps_in.size()));
    const Prime p = maps_in.front().prime;
    for (const auto& f : maps_in)
        if (f.prime != p)
            throw ValidationError("all maps must share one prime");

    // Sort by nonincreasing ratio (nondecreasing exponent); ties keep input
    // order resolved by image center for determinism.
    std::vector<AffineContraction> maps = maps_in;
    const PAdicBall ambient(p, 0, 0);
    std::stable_sort(maps.begin(), maps.end(),
                     [&](const AffineContraction& f, const AffineContraction& g) {
                         const int nf = contraction_level(f), ng = contraction_level(g);
                         if (nf != ng)
                             return nf < ng;
                         return ball_less(image_ball(f, ambient), image_ball(g, ambient));
                     });

    // Non-overlap of the images.
    std::vector<PAdicBall> images;
    images.reserve(maps.size());
    for (const auto& f : maps)
        images.push_back(image_ball(f, ambient));
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (ball_relation(images[i], images[j]) != BallRelation::Disjoint)
                throw ValidationError("images overlap: " + to_string(maps[i]) + " gives " +
                                      to_string(images[i]) + ", " + to_string(maps[j]) +
                                      " gives " + to_string(images[j]));

    SelfSimilarSystem sys{p, maps, {}, {}, {}, 1, {}, {}, Rational()};
    Rational ratio_sum(0);
    for (const auto& f : maps) {
        sys.scaling_exponents.push_back(contraction_level(f));
        ratio_sum += contraction_ratio(f);
    }
    if (ratio_sum >= 1)
        throw ValidationError("contraction ratios sum to " + to_string(ratio_sum) +
                              " >= 1; the images cannot leave a gap");

    sys.gaps = extract_gaps(maps);
    Rational gap_sum(0);
    for (const auto& g : sys.gaps) {
        sys.gap_exponents.push_back(g.level);
        gap_sum += haar_measure(g);
    }
    if (ratio_sum + gap_sum != 1)
        throw ValidationError("gap identity violated: ratio sum " + to_string(ratio_sum) +
                              " + gap sum " + to_string(gap_sum) + " != 1");

    int d = 0;
    for (const int n : sys.scaling_exponents)
        d = std::gcd(d, n);
    for (const int m : sys.gap_exponents)
        d = std::gcd(d, m);
    sys.d = d;
    sys.r = Rational(1, pow_int(Int(p.value()), static_cast<unsigned long>(d)));
    for (const int n : sys.scaling_exponents)
        sys.scaled_scaling_exponents.push_back(n / d);
    for (const int m : sys.gap_exponents)
        sys.scaled_gap_exponents.push_back(m / d);
    return sys;
}

std::vector<Int> length_counts(const SelfSimilarSystem& sys, int M) {
    return length_counts_impl(sys.scaled_scaling_exponents, sys.scaled_gap_exponents, M);
}

std::vector<Int> length_counts(const LatticeData& lat, int M) {
    return length_counts_impl(lat.scaled_scaling_exponents, lat.scaled_gap_exponents, M);
}

std::vector<PAdicBall> enumerate_intervals(const SelfSimilarSystem& sys, int max_word_length) {
    return enumerate_intervals(sys, max_word_length, -1);
}

std::vector<PAdicBall> enumerate_intervals(const SelfSimilarSystem& sys, int max_word_length,
                                           int max_scaled_exponent) {
    // Depth alpha intervals are the maps applied to depth alpha-1 intervals;
    // depth 0 is the gaps themselves.
    std::vector<PAdicBall> out;
    std::vector<PAdicBall> frontier = sys.gaps;
    const int level_cap = max_scaled_exponent < 0 ? -1 : max_scaled_exponent * sys.d;
    if (level_cap >= 0) {
        std::erase_if(frontier,
                      [&](const PAdicBall& b) { return b.level > level_cap; });
    }
    out.insert(out.end(), frontier.begin(), frontier.end());
    for (int depth = 1; depth <= max_word_length && !frontier.empty(); ++depth) {
        std::vector<PAdicBall> next;
        next.reserve(frontier.size() * sys.maps.size());
        for (const auto& f : sys.maps)
            for (const auto& b : frontier) {
                PAdicBall img = image_ball(f, b);
                if (level_cap >= 0 && img.level > level_cap)
                    continue; // children only get deeper: prune
                next.push_back(std::move(img));
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end(), ball_less);
    return out;
}

} // namespace padic
