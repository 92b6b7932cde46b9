#include <gtest/gtest.h>

#include <leafdens/closed_forms.hpp>
#include <leafdens/counting.hpp>

namespace leafdens {
namespace {

TEST(StarCopies, Examples) {
    EXPECT_EQ(star_copies(3, 3, 2), 30);
    EXPECT_EQ(star_copies(2, 2, 2), 6);
    EXPECT_EQ(star_copies(3, 3, 1), 1);
    EXPECT_THROW(star_copies(4, 3, 2), DomainError);
    EXPECT_THROW(star_copies(1, 3, 2), DomainError);
}

TEST(StarCopies, MatchesEngine) {
    CountingEngine engine;
    for (unsigned d = 2; d <= 4; ++d)
        for (unsigned r = 2; r <= d; ++r)
            for (unsigned h = 1; h <= 3; ++h)
                EXPECT_EQ(star_copies(r, d, h), engine.count(make_complete(r, 1), make_complete(d, h)))
                    << "r=" << r << " d=" << d << " h=" << h;
}

TEST(CaterpillarCopiesComplete, Examples) {
    EXPECT_EQ(caterpillar_copies_complete(2, 3, 2, 2), 4);
    EXPECT_EQ(caterpillar_copies_complete(2, 3, 3, 2), 54);
    EXPECT_EQ(caterpillar_copies_complete(2, 2, 3, 2), 36);
    EXPECT_THROW(caterpillar_copies_complete(3, 4, 3, 2), DomainError);
    EXPECT_THROW(caterpillar_copies_complete(4, 4, 3, 2), DomainError);
}

TEST(CaterpillarCopiesComplete, MatchesEngine) {
    CountingEngine engine;
    for (unsigned d = 2; d <= 4; ++d)
        for (unsigned h = 1; h <= 3; ++h) {
            Tree t = make_complete(d, h);
            for (unsigned r = 2; r <= d; ++r)
                for (unsigned k = r; k <= 9; k += r - 1)
                    EXPECT_EQ(caterpillar_copies_complete(r, k, d, h), engine.count(make_caterpillar(r, k), t))
                        << "r=" << r << " k=" << k << " d=" << d << " h=" << h;
        }
}

TEST(LimitDensityComplete, Examples) {
    EXPECT_EQ(limit_density_complete(2, 4, 2), ExactRatio(4, 7));
    EXPECT_EQ(limit_density_complete(2, 3, 3), ExactRatio(3, 4));
    EXPECT_THROW(limit_density_complete(3, 4, 3), DomainError);
}

TEST(LimitDensityComplete, DensitiesApproachTheLimit) {
    for (unsigned d = 2; d <= 4; ++d)
        for (unsigned r = 2; r <= d; ++r)
            for (unsigned k = r + r - 1; k <= 7; k += r - 1) {
                const ExactRatio limit = limit_density_complete(r, k, d);
                ExactRatio prev_err = -1;
                // Small heights cannot hold the caterpillar at all.
                const unsigned h0 = std::max(3u, (k - 1) / (r - 1) + 1);
                for (unsigned h = h0; h <= h0 + 3; ++h) {
                    const std::uint64_t n = ipow(BigCount(d), h).get_ui();
                    ExactRatio dens(caterpillar_copies_complete(r, k, d, h), binomial(n, k));
                    dens.canonicalize();
                    ExactRatio err = abs(dens - limit);
                    if (prev_err > 0) EXPECT_LT(err, prev_err) << "r=" << r << " k=" << k << " d=" << d << " h=" << h;
                    prev_err = err;
                }
            }
}

TEST(Liminf, Examples) {
    EXPECT_EQ(liminf_density(2, 3), ExactRatio(1));
    EXPECT_EQ(liminf_density(3, 3), ExactRatio(3, 4));
    EXPECT_EQ(liminf_density(2, 5), ExactRatio(4, 21));
    EXPECT_EQ(liminf_density(2, 4), ExactRatio(4, 7));
    EXPECT_EQ(liminf_density(2, 2), ExactRatio(1));
    LimitValue lv = liminf_limit(3, 3);
    EXPECT_EQ(lv.d, 3u);
    EXPECT_EQ(lv.k, 3u);
    EXPECT_EQ(lv.r, 2u);
    EXPECT_EQ(lv.value, ExactRatio(3, 4));
}

TEST(Liminf, EqualsCompleteTreeLimit) {
    for (unsigned d = 2; d <= 6; ++d)
        for (unsigned k = 2; k <= 10; ++k) EXPECT_EQ(liminf_density(d, k), limit_density_complete(2, k, d));
}

TEST(Liminf, DecreasesInKAndStaysPositive) {
    for (unsigned d = 2; d <= 5; ++d)
        for (unsigned k = 3; k <= 12; ++k) {
            EXPECT_GT(liminf_density(d, k), 0);
            EXPECT_LE(liminf_density(d, k), 1);
            EXPECT_LT(liminf_density(d, k + 1), liminf_density(d, k));
        }
}

TEST(CaterpillarConstant, Examples) {
    EXPECT_EQ(caterpillar_constant(2, 3), ExactRatio(1, 6));
    EXPECT_EQ(caterpillar_constant(3, 3), ExactRatio(1, 8));
    EXPECT_EQ(caterpillar_constant(2, 1), ExactRatio(1, 2));
}

TEST(BkLowerBound, Examples) {
    EXPECT_EQ(bk_lower_bound(2, 3, 4), ExactRatio(8, 3));
    EXPECT_EQ(bk_lower_bound(2, 3, 1), ExactRatio(-1, 3));
}

TEST(AsymptoticMinCopies, Examples) {
    for (std::uint64_t n : {1u, 2u, 9u, 27u, 1000u})
    {
        ExactRatio want(BigCount(n * n * n), BigCount(8));
        want.canonicalize();
        EXPECT_EQ(asymptotic_min_copies(3, 3, n), want);
    }
    EXPECT_EQ(asymptotic_min_copies(2, 4, 7), caterpillar_constant(2, 4) * ExactRatio(BigCount(7 * 7 * 7 * 7)));
}

}  // namespace
}  // namespace leafdens
