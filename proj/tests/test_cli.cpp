#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "motivic/cli.hpp"

using namespace motivic;
namespace fs = std::filesystem;

namespace {

nlohmann::json minimal_fixture() {
    // y^2 = x^3 - x over Q(i), ten prime entries
    return nlohmann::json::parse(R"({
      "label": "toy-i",
      "field": {"min_poly": [1, 0, 1], "disc": -4},
      "ainvs": [["0","0"],["0","0"],["0","0"],["-1","0"],["0","0"]],
      "conductor_norm": 64,
      "primes": [[3,2,0,6],[5,1,0,2],[5,1,1,2],[7,2,0,14],[11,2,0,22],
                 [13,1,0,6],[13,1,1,6],[17,1,0,-2],[17,1,1,-2],[19,2,0,38]]
    })");
}

fs::path temp_dir(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("motivic_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST(Ingest, MinimalFixtureParses) {
    auto c = parse_fixture(minimal_fixture());
    EXPECT_EQ(c.label, "toy-i");
    EXPECT_EQ(c.ap.size(), 10u);
    EXPECT_TRUE(c.imaginary());
    EXPECT_EQ(c.digest.size(), 64u);
}

TEST(Ingest, HasseViolationNamesThePrime) {
    auto j = minimal_fixture();
    j["primes"].push_back({2, 2, 0, 7});  // norm 4: |a| <= 4
    try {
        parse_fixture(j);
        FAIL() << "accepted a_P = 7 at norm 4";
    } catch (const FixtureError& e) {
        std::string m = e.what();
        EXPECT_NE(m.find("Hasse"), std::string::npos) << m;
        EXPECT_NE(m.find("p=2"), std::string::npos) << m;
        EXPECT_NE(m.find("primes[10]"), std::string::npos) << m;
    }
    j["primes"][10][3] = 4;
    EXPECT_NO_THROW(parse_fixture(j));
}

TEST(Ingest, DuplicatePrimeKeyRejected) {
    auto j = minimal_fixture();
    j["primes"].push_back({5, 1, 1, -2});
    EXPECT_THROW(parse_fixture(j), FixtureError);
}

TEST(Ingest, SchemaErrorsCarryFieldPath) {
    auto j = minimal_fixture();
    j["ainvs"][2] = "x";
    try {
        parse_fixture(j);
        FAIL();
    } catch (const FixtureError& e) {
        EXPECT_NE(std::string(e.what()).find("$.ainvs[2]"), std::string::npos) << e.what();
    }
    j = minimal_fixture();
    j.erase("conductor_norm");
    EXPECT_THROW(parse_fixture(j), FixtureError);
}

TEST(Ingest, BundledFixturesHaveDistinctDigests) {
    auto all = ingest(default_fixture_dir());
    ASSERT_GE(all.size(), 4u);
    std::set<std::string> d;
    for (const auto& c : all) d.insert(c.digest);
    EXPECT_EQ(d.size(), all.size());
}

TEST(Cache, HexRoundTripIsBitExact) {
    PrecisionScope ps(200);
    for (Real x : {const_pi() * -12345, Real(1) / Real("3e-30"), Real(0), exp(Real(-700))}) {
        Real y = real_from_hex(real_to_hex(x));
        EXPECT_EQ(x, y);
        EXPECT_EQ(real_to_hex(x), real_to_hex(y));
    }
}

TEST(Cache, LValueRoundTripWithoutFixtures) {
    auto dir = temp_dir("cache");
    CliOptions o;
    o.cache_dir = dir.string();
    LValueRequest rq{"Qs5-31a", "spin", "1", 0};
    LValueResult first;
    {
        CliContext ctx(o);
        first = compute_lvalue(ctx, rq);
        EXPECT_FALSE(first.cached);
    }
    // no fixtures: the label index and the blob are enough
    o.fixtures = (dir / "none").string();
    CliContext ctx(o);
    auto again = compute_lvalue(ctx, rq);
    EXPECT_TRUE(again.cached);
    EXPECT_EQ(real_to_hex(again.value.re), real_to_hex(first.value.re));
    EXPECT_EQ(real_to_hex(again.value.im), real_to_hex(first.value.im));
    EXPECT_EQ(again.sign, first.sign);
    // a different point is not cached and cannot be computed
    rq.s = "1.5";
    EXPECT_THROW(compute_lvalue(ctx, rq), CliError);
    fs::remove_all(dir);
}

TEST(Cache, KeyIsContentAddressed) {
    nlohmann::json a{{"curve", "x"}, {"bits", 64}}, b{{"bits", 64}, {"curve", "x"}}, c{{"curve", "x"}, {"bits", 65}};
    EXPECT_EQ(Cache::key_digest(a), Cache::key_digest(b));
    EXPECT_NE(Cache::key_digest(a), Cache::key_digest(c));
}

TEST(Commands, RepsPacket) {
    CliContext ctx(CliOptions{});
    std::ostringstream out;
    EXPECT_EQ(cmd_reps(ctx, {3, 2}, std::nullopt, RepsMode::Packet, out), 0);
    std::string s = out.str();
    EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
    EXPECT_NE(s.find("X^1_{(3,2);0}"), std::string::npos) << s;
    EXPECT_NE(s.find("X^2_{(3,-2);0}"), std::string::npos) << s;
}

TEST(Commands, RepsPKJson) {
    CliOptions o;
    o.json = true;
    CliContext ctx(o);
    std::ostringstream out;
    cmd_reps(ctx, {4, 1}, std::nullopt, RepsMode::PK, out);
    auto j = nlohmann::json::parse(out.str());
    EXPECT_TRUE(j["matches_lemma_pattern"].get<bool>());
    EXPECT_EQ(j["pk"]["X1"][0][0], 1);
    EXPECT_EQ(j["pk"]["X2"][2][2], 1);
}

TEST(Commands, PcalcTraceEndsAtOne) {
    CliContext ctx(CliOptions{});
    std::ostringstream out;
    EXPECT_EQ(cmd_pcalc(ctx, "main", 2, out), 0);
    std::string s = out.str();
    EXPECT_NE(s.find("-> 1   [cW]"), std::string::npos) << s;
    EXPECT_NE(s.find("closed: 1"), std::string::npos);
    std::ostringstream b;
    EXPECT_EQ(cmd_pcalc(ctx, "bianchi", 2, b), 0);
    EXPECT_NE(b.str().find("closed: pi^2 * u2"), std::string::npos) << b.str();
    EXPECT_THROW(cmd_pcalc(ctx, "bianchi", 4, b), std::invalid_argument);
}

TEST(Commands, VerifyJsonAndExitCode) {
    CliOptions o;
    o.json = true;
    CliContext ctx(o);
    std::ostringstream out;
    EXPECT_EQ(cmd_verify(ctx, "proof-chains", out), 0);
    auto j = nlohmann::json::parse(out.str());
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j[0]["status"], "pass");
    for (const char* k : {"check_id", "values", "rational", "citations"}) EXPECT_TRUE(j[0].contains(k));
    // the frame check fails on the v4 constant, so the exit code is nonzero
    std::ostringstream f;
    EXPECT_EQ(cmd_verify(ctx, "frame-identities", f), 1);
    std::ostringstream e;
    EXPECT_EQ(cmd_verify(ctx, "euler-factorization:Qi-65a", e), 0);
    EXPECT_THROW(cmd_verify(ctx, "nonsense", e), CliError);
    EXPECT_THROW(cmd_verify(ctx, "euler-factorization:nope", e), CliError);
}

TEST(Commands, UnknownKindAndLabel) {
    CliContext ctx(CliOptions{});
    LValueRequest rq{"Qs5-31a", "nonsense", "1", 0};
    EXPECT_THROW(compute_lvalue(ctx, rq), std::invalid_argument);
    rq = {"no-such-curve", "spin", "1", 0};
    EXPECT_THROW(compute_lvalue(ctx, rq), CliError);
}
