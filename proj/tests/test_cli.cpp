#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "detstat/cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = detstat::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json parsed(const std::vector<std::string>& args) {
    const Outcome r = invoke(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, CountSingular) {
    const auto doc = parsed({"count-singular", "--n", "2", "--m", "4"});
    EXPECT_EQ(doc["count"], 88);
    EXPECT_EQ(doc["command"], "count-singular");
    EXPECT_TRUE(doc["wall_time_s"].is_null());
    EXPECT_EQ(doc["config"]["m"], 4);
    EXPECT_EQ(doc["results"].size(), 1u);
}

TEST(Cli, ExpSum) {
    const auto doc = parsed({"expsum", "--n", "2", "--m", "4", "--form", "1,0;0,0"});
    EXPECT_DOUBLE_EQ(doc["value_re"].get<double>(), 8.0);
    EXPECT_DOUBLE_EQ(doc["value_im"].get<double>(), 0.0);
    EXPECT_EQ(doc["histogram"], nlohmann::json({32, 16, 24, 16}));
}

TEST(Cli, BoxAndFixedDet) {
    EXPECT_EQ(parsed({"count-box", "--n", "2", "--m", "3", "--h", "10"})["count"], 79233);
    EXPECT_EQ(parsed({"fixed-det", "--n", "2", "--h", "1", "--d", "1"})["count"], 20);
    EXPECT_EQ(parsed({"squarefree", "--n", "2", "--h", "2"})["direct"], 384);
}

TEST(Cli, Exponents) {
    const auto doc = parsed({"exponents", "--n", "2"});
    EXPECT_EQ(doc["gamma"], "10/19");
    EXPECT_EQ(doc["theta"], "8/9");
}

TEST(Cli, CsvOutput) {
    const Outcome r = invoke({"expsum", "--n", "2", "--m", "4", "--form", "1,0;0,0", "--format", "csv"});
    ASSERT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "n,modulus,form,value_re,value_im,magnitude,mass,histogram");
    EXPECT_NE(row.find("\"1,0;0,0\""), std::string::npos);
    EXPECT_NE(row.find("32;16;24;16"), std::string::npos);
}

TEST(Cli, RepeatedRunsAreIdentical) {
    const std::vector<std::string> args{"expsum-sweep", "--n", "2", "--m", "9", "--seed", "7"};
    const Outcome a = invoke(args), b = invoke(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const std::vector<std::string> threaded{"count-box", "--n", "3", "--m", "4", "--h", "1", "--threads", "3"};
    auto one = nlohmann::json::parse(invoke(threaded).out);
    auto single = nlohmann::json::parse(invoke({"count-box", "--n", "3", "--m", "4", "--h", "1"}).out);
    EXPECT_EQ(one["results"], single["results"]);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(invoke({"count-singular", "--bogus", "1"}).code, 1);
    EXPECT_EQ(invoke({}).code, 1);
    EXPECT_EQ(invoke({"expsum", "--n", "2", "--m", "4", "--form", "1,0"}).code, 1);
    EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, 1);
    const Outcome refused = invoke({"count-box", "--n", "3", "--m", "2", "--h", "3", "--budget", "1000"});
    EXPECT_EQ(refused.code, 2);
    EXPECT_NE(refused.err.find("budget"), std::string::npos);
}

TEST(Cli, Verify) {
    const auto doc = parsed({"verify", "--suite", "L2.1"});
    EXPECT_TRUE(doc["all_pass"].get<bool>());
    EXPECT_FALSE(doc["results"].empty());
}

TEST(Cli, BudgetFromEnvironment) {
    ::setenv("DETSTAT_BUDGET", "1000", 1);
    EXPECT_EQ(invoke({"count-box", "--n", "3", "--m", "2", "--h", "3"}).code, 2);
    ::setenv("DETSTAT_BUDGET", "zero", 1);
    EXPECT_EQ(invoke({"count-singular", "--n", "2", "--m", "4"}).code, 1);
    ::unsetenv("DETSTAT_BUDGET");
    EXPECT_EQ(invoke({"count-singular", "--n", "2", "--m", "4"}).code, 0);
}
