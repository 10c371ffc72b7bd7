#include <gtest/gtest.h>

#include <cmath>

#include <landau/coefficient_bounds.hpp>
#include <landau/fields.hpp>

using namespace landau;

namespace {

GridSpec vgrid() {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = 12;
    g.v_extent = 6.0;
    return g;
}

BoundOptions quick() {
    BoundOptions o;
    o.samples = 24;
    o.max_order = 1;
    o.lattice_cells_v = 12;
    return o;
}

}  // namespace

TEST(Bounds, ConstantsAreFiniteAndWithoutViolations) {
    const BoundReport r = verify_coefficient_bounds(maxwellian(vgrid(), 1.0), 0.5, quick());
    EXPECT_TRUE(r.all_finite());
    EXPECT_EQ(r.entries.size(), bound_names().size());
    for (std::size_t k = 0; k < r.entries.size(); ++k) {
        EXPECT_EQ(r.entries[k].name, bound_names()[k]);
        EXPECT_EQ(r.entries[k].violations, 0) << r.entries[k].name;
        EXPECT_GE(r.entries[k].constant, 0.0);
    }
    EXPECT_GT(r.max_constant(), 0.0);
}

TEST(Bounds, ConstantsAreScaleInvariant) {
    // Both sides of every bound are linear in f.
    const Field f = random_smooth_field(vgrid(), 5, false);
    Field g = f;
    for (double& v : g.values) v *= 1e3;
    const BoundReport a = verify_coefficient_bounds(f, 1.0, quick());
    const BoundReport b = verify_coefficient_bounds(g, 1.0, quick());
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t k = 0; k < a.entries.size(); ++k)
        EXPECT_NEAR(a.entries[k].constant, b.entries[k].constant, 1e-9 * (1.0 + a.entries[k].constant))
            << a.entries[k].name;
}

TEST(Bounds, SameSeedSameReport) {
    const Field f = random_smooth_field(vgrid(), 2, false);
    const BoundReport a = verify_coefficient_bounds(f, 0.0, quick());
    const BoundReport b = verify_coefficient_bounds(f, 0.0, quick());
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
        EXPECT_EQ(a.entries[k].constant, b.entries[k].constant);
        EXPECT_EQ(a.entries[k].worst_index, b.entries[k].worst_index);
    }
}
