#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include <landau/fields.hpp>
#include <landau/norms.hpp>
#include <landau/report_io.hpp>

#ifdef LANDAU_HAVE_LAB
#include "run_config.hpp"
#include "runner.hpp"
#endif

using namespace landau;

TEST(Hash, Fnv1aReferenceVectors) {
    EXPECT_EQ(hex64(fnv1a64("")), "cbf29ce484222325");
    EXPECT_EQ(hex64(fnv1a64("a")), "af63dc4c8601ec8c");
    EXPECT_EQ(hex64(fnv1a64("foobar")), "85944171f73967e8");
}

namespace {

EnergyReport small_report(int snapshots) {
    GridSpec g;
    g.x_dims = 0;
    g.v_count = 8;
    g.v_extent = 4.0;
    std::vector<Field> traj;
    for (int k = 0; k < snapshots; ++k) {
        Field f = maxwellian(g, 1.0 + k);
        f.time = 0.1 * k;
        traj.push_back(f);
    }
    return energy_report(traj, WeightHierarchy::contraction(ModelParams::make(0.0)), 1);
}

}  // namespace

TEST(Csv, SingleSnapshotHasHeaderAndOneRow) {
    const EnergyReport r = small_report(1);
    const std::string csv = energy_csv(r);
    std::size_t crlf = 0;
    for (std::size_t p = csv.find("\r\n"); p != std::string::npos; p = csv.find("\r\n", p + 2)) ++crlf;
    EXPECT_EQ(crlf, 2u);
    const CsvTable t = parse_csv(csv);
    EXPECT_EQ(t.header.size(), 1 + r.indices.size() + 1);
    EXPECT_EQ(t.header.front(), "t");
    EXPECT_EQ(t.header.back(), "X_total");
    ASSERT_EQ(t.rows.size(), 1u);
}

TEST(Csv, ValuesRoundTripExactly) {
    const EnergyReport r = small_report(3);
    const CsvTable t = parse_csv(energy_csv(r));
    ASSERT_EQ(t.rows.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(t.rows[k].front(), r.times[k]);
        EXPECT_EQ(t.rows[k].back(), r.x_total[k]);
    }
    // Columns are sorted by (alpha, beta) and carry the per-index Y series.
    for (std::size_t c = 1; c + 1 < t.header.size(); ++c) {
        const auto it = std::find_if(r.indices.begin(), r.indices.end(),
                                     [&](const IndexSeries& s) { return "Y_" + s.index.label() == t.header[c]; });
        ASSERT_NE(it, r.indices.end()) << t.header[c];
        EXPECT_EQ(t.rows[2][c], it->y[2]);
        if (c > 1) {
            const auto prev = std::find_if(r.indices.begin(), r.indices.end(), [&](const IndexSeries& s) {
                return "Y_" + s.index.label() == t.header[c - 1];
            });
            const auto key = [](const MultiIndex& m) { return std::tuple(m.alpha, m.beta); };
            EXPECT_LT(key(prev->index), key(it->index));
        }
    }
}

TEST(Csv, ParserHandlesQuotesAndLineEnds) {
    const CsvTable t = parse_csv("\"a,b\",\"say \"\"hi\"\"\"\n1,2.5\r\n3,-4e-3");
    ASSERT_EQ(t.header.size(), 2u);
    EXPECT_EQ(t.header[0], "a,b");
    EXPECT_EQ(t.header[1], "say \"hi\"");
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[1][1], -4e-3);
    EXPECT_THROW(parse_csv("a,b\n1\n"), std::invalid_argument);
}

TEST(Json, ReportsCarryProvenanceAndSortedKeys) {
    Provenance p;
    p.config_hash = hex64(fnv1a64("x"));
    p.grid.v_count = 8;
    const std::string text = report_json(small_report(2), p);
    const auto j = nlohmann::json::parse(text);
    EXPECT_EQ(j.at("kind"), "EnergyReport");
    EXPECT_EQ(j.at("provenance").at("config_hash"), p.config_hash);
    EXPECT_EQ(j.at("provenance").at("library_version"), library_version());
    EXPECT_EQ(j.at("provenance").at("grid").at("v_count"), 8);
    std::string last;
    for (const auto& [k, v] : j.items()) {
        EXPECT_LT(last, k);
        last = k;
    }
    EXPECT_EQ(text.back(), '\n');
}

#ifdef LANDAU_HAVE_LAB

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("landau_unit_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

using namespace landau::lab;

TEST(Cli, MissingGammaIsAConfigError) {
    RunConfig c;
    c.mode = Mode::VerifyKernels;
    c.out = scratch("nogamma").string();
    std::ostringstream log;
    EXPECT_EQ(run(c, log), kConfigError);
    EXPECT_NE(log.str().find("gamma"), std::string::npos) << log.str();
}

TEST(Cli, AuditWeightsPasses) {
    RunConfig c;
    c.mode = Mode::AuditWeights;
    c.gamma = 0.0;
    c.out = scratch("audit").string();
    std::ostringstream log;
    EXPECT_EQ(run(c, log), kPass) << log.str();
    const auto j = nlohmann::json::parse(slurp(std::filesystem::path(c.out) / "audit.json"));
    EXPECT_EQ(j.at("kind"), "AuditReport");
    EXPECT_EQ(j.at("total_violations"), 0);
}

TEST(Cli, VerifyBoundsIsDeterministic) {
    RunConfig c;
    c.mode = Mode::VerifyBounds;
    c.gamma = 0.5;
    c.grid.v_count = 12;
    c.bound_samples = 32;
    c.bound_max_order = 1;
    c.seed = 42;
    c.out = scratch("bounds_a").string();
    std::ostringstream log;
    ASSERT_EQ(run(c, log), kPass) << log.str();
    const RunConfig first = c;
    c.out = scratch("bounds_b").string();
    ASSERT_EQ(run(c, log), kPass);
    for (const char* name : {"bounds_maxwellian.json", "bounds_random.json", "config.ini"})
        EXPECT_EQ(slurp(std::filesystem::path(first.out) / name), slurp(std::filesystem::path(c.out) / name)) << name;
}

TEST(Cli, IniParsing) {
    RunConfig c;
    apply_ini(c, "[run]\nmode = solve-linear\nseed = 9\n[model]\ngamma = 1\neta = 1/100\n[grid]\nv_count = 10\n"
                 "[solver]\nscheme = explicit\nR = 4\n[boundary]\nradii = 3.5, 4\n");
    EXPECT_EQ(*c.mode, Mode::SolveLinear);
    EXPECT_EQ(c.seed, 9u);
    EXPECT_EQ(*c.gamma, 1.0);
    EXPECT_EQ(c.eta, Rational(1, 100));
    EXPECT_EQ(c.grid.v_count, 10);
    EXPECT_EQ(c.scheme, Scheme::Explicit);
    EXPECT_EQ(c.radii, (std::vector<double>{3.5, 4.0}));
    try {
        apply_ini(c, "[solver]\nbogus = 1\n");
        FAIL() << "unknown key accepted";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
    }
    EXPECT_THROW(apply_ini(c, "[model]\ngamma = fast\n"), ConfigError);
}

TEST(Cli, GridFlag) {
    RunConfig c;
    apply_grid_flag(c, "v20,x6");
    EXPECT_EQ(c.grid.v_count, 20);
    EXPECT_EQ(c.grid.x_count, 6);
    EXPECT_THROW(apply_grid_flag(c, "q3"), ConfigError);
}

TEST(Cli, ModeNamesRoundTrip) {
    for (Mode m : {Mode::AuditWeights, Mode::VerifyKernels, Mode::VerifyBounds, Mode::SolveLinear, Mode::Picard,
                   Mode::BoundaryDecay})
        EXPECT_EQ(parse_mode(mode_name(m)), m);
    EXPECT_THROW(parse_mode("fly"), ConfigError);
}

#endif
