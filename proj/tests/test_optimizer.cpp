#include <numbers>

#include <gtest/gtest.h>

#include "beamsweep/config_io.hpp"
#include "beamsweep/optimizer.hpp"
#include "beamsweep/presets.hpp"

namespace bs = beamsweep;

namespace
{

bs::ScenarioConfig preset(std::string_view text, std::vector<std::string> overrides = {})
{
    return bs::parse_config_text(text, "preset", overrides);
}

}  // namespace

TEST(SweepSectors, CoversEveryCountOnce)
{
    const auto cfg   = preset(bs::presets::fig3_text);
    const auto curve = bs::sweep_sectors(cfg);
    ASSERT_EQ(curve.entries.size(), 67u);
    for (std::size_t i = 0; i < curve.entries.size(); ++i)
    {
        const auto& e = curve.entries[i];
        EXPECT_EQ(e.m, static_cast<long>(i) + 1);
        EXPECT_GE(e.xi, curve.xi_star);
        EXPECT_LE(e.pinsker_lb, e.xi + 1e-12);
        EXPECT_EQ(e.xi, e.alpha + e.beta);
        EXPECT_EQ(e.exact_split, 32 % e.m == 0);
    }
}

TEST(SweepSectors, OptimumIsReproducible)
{
    const auto cfg   = preset(bs::presets::fig3_text);
    const auto curve = bs::sweep_sectors(cfg);
    EXPECT_EQ(bs::analyze(cfg, curve.m_star).xi, curve.xi_star);
    EXPECT_EQ(bs::evaluate_sector_count(cfg, curve.m_star).xi, curve.xi_star);
}

TEST(SweepSectors, SmallBudgetHasInteriorOptimum)
{
    const auto curve = bs::sweep_sectors(preset(bs::presets::fig3_text));
    EXPECT_GT(curve.m_star, 1);
    EXPECT_LT(curve.m_star, 67);
    EXPECT_EQ(curve.m_star, 31);
}

TEST(SweepSectors, LargeBudgetPrefersOneSector)
{
    for (const char* noise : {"noise_dbm=-50", "noise_dbm=-60"})
    {
        const auto curve = bs::sweep_sectors(preset(bs::presets::fig2_text, {noise}));
        EXPECT_EQ(curve.m_star, 1) << noise;
        for (std::size_t i = 1; i < curve.entries.size(); ++i)
            EXPECT_GE(curve.entries[i].xi, curve.entries[i - 1].xi) << noise << " m=" << i + 1;
    }
}

TEST(SweepSectors, OptimumIsFirstMinimizer)
{
    for (const char* d : {"d_aw=30", "d_aw=50", "d_aw=80", "d_aw=400"})
        for (const char* lt : {"l_total=8", "l_total=32", "l_total=160"})
        {
            const auto curve = bs::sweep_sectors(preset(bs::presets::fig3_text, {d, lt}));
            long first_min   = 1;
            for (const auto& e : curve.entries)
                if (e.xi < curve.entries[static_cast<std::size_t>(first_min - 1)].xi)
                    first_min = e.m;
            EXPECT_EQ(curve.m_star, first_min) << d << ' ' << lt;
        }
}

TEST(SweepSectors, SingleAdmissibleCount)
{
    auto cfg       = preset(bs::presets::fig3_text);
    cfg.n_antennas = 3;  // floor(3 * 1.047 / 2) = 1
    const auto curve = bs::sweep_sectors(cfg);
    ASSERT_EQ(curve.entries.size(), 1u);
    EXPECT_EQ(curve.m_star, 1);
    EXPECT_EQ(curve.xi_star, curve.entries.front().xi);
}

TEST(SweepSectors, NoAdmissibleCount)
{
    auto cfg       = preset(bs::presets::fig3_text);
    cfg.n_antennas = 1;  // floor(0.52) = 0
    EXPECT_THROW(bs::sweep_sectors(cfg), std::out_of_range);
}
