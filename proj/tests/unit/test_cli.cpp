#ifdef MEINARDUS_HAVE_CLI

#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "meinardus");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int status = meinardus::cli::run_command(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

const std::string kOnes = R"({"type":"power","terms":[{"a":"1","r":"1"}]})";

} // namespace

TEST(Cli, Count)
{
    auto r = run({"count", "--family", kOnes, "--kind", "1", "--n", "10"});
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.substr(r.out.size() - 6), "10,42\n");
    auto j = run({"count", "--family", kOnes, "--n", "3", "--format", "json"});
    EXPECT_NE(j.out.find("\"counts\""), std::string::npos);
}

TEST(Cli, Formula)
{
    auto r = run({"formula", "--family", kOnes, "--kind", "1"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\"H\": \"0.14433756729"), std::string::npos);
    auto s = run({"formula", "--family", R"({"type":"binomial","l":1})", "--single"});
    EXPECT_EQ(s.status, 0);
    EXPECT_EQ(s.out.find("\"1/3\""), std::string::npos);
}

TEST(Cli, Compare)
{
    auto r = run({"compare", "--family", R"({"type":"binomial","l":1})", "--kind", "1", "--ngrid",
                  "100:2000:geometric:6", "--precision", "30"});
    EXPECT_EQ(r.status, 0);
    std::istringstream lines(r.out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line))
        ++count;
    EXPECT_EQ(count, 7);
    auto j = run({"compare", "--family", kOnes, "--ngrid", "0,5", "--format", "json"});
    EXPECT_EQ(j.status, 0);
    EXPECT_NE(j.out.find("\"c_exact\": \"7\""), std::string::npos);
}

TEST(Cli, DeltaAndBelief)
{
    auto d = run({"delta", "--family", kOnes, "--ngrid", "100,1000"});
    EXPECT_EQ(d.status, 0);
    EXPECT_EQ(d.out.rfind("n,delta_num,delta_exp,scaled_gap\n", 0), 0u);
    auto t = run({"delta", "--family", kOnes, "--terms"});
    EXPECT_NE(t.out.find("1,-0.25"), std::string::npos);
    auto b = run({"belief", "--family", R"({"type":"binomial","l":1})", "--ngrid", "100,200"});
    EXPECT_EQ(b.status, 0);
}

TEST(Cli, Cond3)
{
    auto r = run({"check-cond3", "--family", kOnes, "--kind", "3", "--deltas", "0.01", "--alphas", "0.25"});
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("pass=true"), std::string::npos);
}

TEST(Cli, OutputFile)
{
    const std::string path = ::testing::TempDir() + "meinardus_cli_out.csv";
    auto r = run({"count", "--family", kOnes, "--n", "4", "--out", path});
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), "n,count\n0,1\n1,1\n2,2\n3,3\n4,5\n");
    std::remove(path.c_str());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({"count", "--family", kOnes, "--n", "3", "--bogus"}).status, 2);
    EXPECT_EQ(run({"nonsense"}).status, 2);
    EXPECT_EQ(run({}).status, 2);
    EXPECT_EQ(run({"count", "--family", "{bad", "--n", "3"}).status, 2);
    EXPECT_EQ(run({"compare", "--family", kOnes}).status, 2);
    EXPECT_EQ(run({"count", "--family", R"({"type":"power","terms":[{"a":"1","r":"3/2"}]})", "--n", "3"}).status, 1);
    EXPECT_EQ(run({"delta", "--family", kOnes, "--kind", "2", "--n", "2"}).status, 1);
    EXPECT_EQ(run({"--help"}).status, 0);
}

#endif
