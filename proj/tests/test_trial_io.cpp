#include <doctest.h>

#include <random>

#include "pushrec/trial_io.hpp"
#include "test_helpers.hpp"

using namespace pushrec;

namespace {

const char* kMinimalTrial =
    "# subject,height_m,weight_kg,sex,handedness,age\n"
    "1.75,70,male,right,30\n"
    "# condition,eyes,lunging,stance\n"
    "closed,without,static\n"
    "t,rhip,lhip,rknee,lknee,rankle,lankle,force,ax,ay,az,gx,gy,gz\n"
    "0,0,0,0,0,0,0,0,0,0,0,0,0,0\n";

}  // namespace

TEST_CASE("parse_trial on a one-row all-zero file") {
    const RawTrial t = parse_trial(kMinimalTrial);
    REQUIRE(t.samples.size() == 1);
    CHECK(t.samples[0].t == 0.0);
    for (int c : t.samples[0].joint_counts) CHECK(c == 0);
    CHECK(t.samples[0].force_count == 0);
    CHECK(t.meta.height_m == 1.75);
    CHECK(t.meta.handedness == Handedness::Right);
    CHECK(t.condition.stance == Stance::Static);
    CHECK(t.sample_rate_hz == 1.0);  // rate undefined for one sample
}

TEST_CASE("parse_trial rejects out-of-range counts naming line and field") {
    std::string bad = kMinimalTrial;
    bad += "0.01,1000,0,0,0,0,0,0,0,0,0,0,0,0\n";
    try {
        parse_trial(bad, "bad.csv");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 7);
        CHECK(e.field() == "rhip");
        CHECK(std::string(e.what()).find("1000") != std::string::npos);
    }
}

TEST_CASE("parse_trial rejects malformed input") {
    SUBCASE("wrong subject header") {
        CHECK_THROWS_AS(parse_trial("# nope\n1,2,male,right,3\n"), ParseError);
    }
    SUBCASE("wrong column header") {
        std::string bad = kMinimalTrial;
        const auto pos = bad.find("t,rhip");
        bad.replace(pos, 6, "t,hipr");
        CHECK_THROWS_AS(parse_trial(bad), ParseError);
    }
    SUBCASE("non-monotone timestamps") {
        std::string bad = kMinimalTrial;
        bad += "0,1,1,1,1,1,1,0,0,0,0,0,0,0\n";  // repeats t=0
        try {
            parse_trial(bad, "bad.csv");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.field() == "t");
            CHECK(e.line() == 7);
        }
    }
    SUBCASE("short row") {
        std::string bad = kMinimalTrial;
        bad += "0.5,1,2,3\n";
        CHECK_THROWS_AS(parse_trial(bad), ParseError);
    }
    SUBCASE("negative count") {
        std::string bad = kMinimalTrial;
        bad += "0.5,-1,0,0,0,0,0,0,0,0,0,0,0,0\n";
        CHECK_THROWS_AS(parse_trial(bad), ParseError);
    }
    SUBCASE("non-integer count") {
        std::string bad = kMinimalTrial;
        bad += "0.5,1.5,0,0,0,0,0,0,0,0,0,0,0,0\n";
        CHECK_THROWS_AS(parse_trial(bad), ParseError);
    }
    SUBCASE("no data rows") {
        std::string bad(kMinimalTrial);
        bad.resize(bad.rfind("0,0"));
        CHECK_THROWS_AS(parse_trial(bad), ParseError);
    }
    SUBCASE("empty file") { CHECK_THROWS_AS(parse_trial(""), ParseError); }
    SUBCASE("bad sex token") {
        std::string bad = kMinimalTrial;
        const auto pos = bad.find("male");
        bad.replace(pos, 4, "none");
        CHECK_THROWS_AS(parse_trial(bad), ParseError);
    }
    SUBCASE("nonpositive height") {
        std::string bad = kMinimalTrial;
        const auto pos = bad.find("1.75");
        bad.replace(pos, 4, "0");
        CHECK_THROWS_AS(parse_trial(bad), ParseError);
    }
}

TEST_CASE("3-row fixture parses field-by-field") {
    const RawTrial t = parse_trial_file(testutil::fixture_path("trial_3row.csv"));
    REQUIRE(t.samples.size() == 3);
    CHECK(t.meta.height_m == 1.68);
    CHECK(t.meta.weight_kg == 62.5);
    CHECK(t.meta.sex == Sex::Female);
    CHECK(t.meta.handedness == Handedness::Left);
    CHECK(t.meta.age_years == 27.0);
    CHECK(t.condition.eyes == Eyes::Open);
    CHECK(t.condition.lunging == Lunging::With);
    CHECK(t.condition.stance == Stance::Dynamic);

    CHECK(t.samples[0].t == 0.0);
    CHECK(t.samples[1].t == 0.01);
    CHECK(t.samples[2].t == 0.02);
    CHECK(t.samples[0].joint_counts == std::array<int, 6>{500, 498, 450, 452, 470, 469});
    CHECK(t.samples[1].joint_counts == std::array<int, 6>{503, 495, 451, 455, 470, 468});
    CHECK(t.samples[2].joint_counts == std::array<int, 6>{507, 491, 453, 458, 471, 466});
    CHECK(t.samples[0].force_count == 0);
    CHECK(t.samples[1].force_count == 123);
    CHECK(t.samples[2].force_count == 456);
    CHECK(t.samples[1].accel_counts == std::array<int, 3>{502, 500, 530});
    CHECK(t.samples[2].gyro_counts == std::array<int, 3>{495, 507, 500});
    CHECK(t.sample_rate_hz == doctest::Approx(100.0));
}

TEST_CASE("serialize/parse round trip is the identity") {
    std::mt19937 rng(42);
    for (int rep = 0; rep < 25; ++rep) {
        const RawTrial t = testutil::random_trial(rng, 1 + static_cast<int>(rng() % 40));
        const RawTrial back = parse_trial(serialize_trial(t));
        CHECK(back.samples == t.samples);
        CHECK(back.meta.height_m == t.meta.height_m);
        CHECK(back.meta.weight_kg == t.meta.weight_kg);
        CHECK(back.meta.sex == t.meta.sex);
        CHECK(back.meta.handedness == t.meta.handedness);
        CHECK(back.meta.age_years == t.meta.age_years);
        CHECK(back.condition == t.condition);
    }
}

TEST_CASE("serialize_converted/parse_converted round trip") {
    std::mt19937 rng(43);
    const RawTrial t = testutil::random_trial(rng, 12);
    JointCounts theta0;
    theta0 << 500, 500, 450, 450, 470, 470;
    const ConvertedTrial c = convert_trial(t, theta0);
    const ConvertedTrial back = parse_converted(serialize_converted(c));
    for (int ch = 0; ch < 6; ++ch) {
        CHECK(back.joints[ch].angle_deg == c.joints[ch].angle_deg);
        CHECK(back.joints[ch].t == c.joints[ch].t);
    }
    CHECK(back.force.force_n == c.force.force_n);
    CHECK(back.imu.accel_g == c.imu.accel_g);
    CHECK(back.imu.gyro_dps == c.imu.gyro_dps);
}

TEST_CASE("read_columns handles generic and preambled files") {
    SUBCASE("knots fixture") {
        const ColumnsFile f = read_columns_file(testutil::fixture_path("knots.csv"));
        CHECK(f.preamble.empty());
        REQUIRE(f.header == std::vector<std::string>{"t", "y"});
        REQUIRE(f.data.rows() == 3);
        CHECK(f.data(1, 1) == 1.0);
    }
    SUBCASE("preamble passthrough") {
        const std::string text =
            "# subject,height_m,weight_kg,sex,handedness,age\n"
            "1.75,70,male,right,30\n"
            "# condition,eyes,lunging,stance\n"
            "closed,without,static\n"
            "t,a,b\n"
            "0,1,2\n"
            "1,3,4\n";
        const ColumnsFile f = read_columns(text);
        CHECK(f.preamble.size() == 4);
        CHECK(serialize_columns(f) == text);
    }
    SUBCASE("arbitrary first column is allowed for generic files") {
        const ColumnsFile f = read_columns("x,y\n1,2\n");
        CHECK(f.header[0] == "x");
    }
    SUBCASE("no data rows") { CHECK_THROWS_AS(read_columns("t,y\n"), ParseError); }
}

TEST_CASE("format_double round-trips and is compact") {
    CHECK(format_double(0.01) == "0.01");
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(300.0 * 300.0 / 999.0) == "90.09009009009009");
}
