#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + LSCAT_CLI_PATH + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(LSCAT_SAMPLES_DIR) + "/" + name; }

nlohmann::json parse(const CliRun& r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST(Cli, Version) {
    const CliRun r = run("--version");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("schema 1"), std::string::npos);
}

TEST(Cli, SnfEchoesTransforms) {
    const CliRun r = run("snf --input " + sample("snf_2x2.json") + " --output json --verify");
    ASSERT_EQ(r.status, 0);
    const auto j = parse(r);
    EXPECT_EQ(j["factors"], nlohmann::json::parse("[2,6]"));
    EXPECT_EQ(j["D"]["data"], nlohmann::json::parse("[[2,0],[0,6]]"));
    EXPECT_EQ(j["minors_oracle"], "agrees");
}

TEST(Cli, InvariantCertificate) {
    const CliRun r = run("invariant --input " + sample("z3_onto_z_z2.json") + " --output json --verify");
    ASSERT_EQ(r.status, 0);
    const auto j = parse(r);
    EXPECT_EQ(j["value"], 2);
    EXPECT_EQ(j["lower_witness"]["dimension"], 2);
    EXPECT_TRUE(j["lower_witness"]["chain_map"]["squares_commute"].get<bool>());
}

TEST(Cli, TorsionNotKilledExitsTwo) {
    const CliRun r = run("invariant --input " + sample("z4_onto_z2.json") + " --output json");
    EXPECT_EQ(r.status, 2);
    const auto j = parse(r);
    EXPECT_EQ(j["error"], "TorsionNotKilled");
    EXPECT_NE(j["detail"].get<std::string>().find("Z_4 -> Z_2"), std::string::npos);
}

TEST(Cli, IllDefinedExitsTwo) {
    const CliRun r = run("check --input " + sample("z2_to_z4_bad.json") + " --output json");
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(parse(r)["error"], "IllDefined");
}

TEST(Cli, MalformedExitsOne) {
    EXPECT_EQ(run("snf --output json", "echo '{not json' |").status, 1);
    EXPECT_EQ(run("snf --output json", "echo '{\"rows\":1}' |").status, 1);
    EXPECT_EQ(run("snf --input /nonexistent/file.json").status, 1);
    EXPECT_EQ(run("frobnicate").status, 1);
    EXPECT_EQ(run("cohomology --coeff 4 --input " + sample("group_z2_z4.json")).status, 1);
}

TEST(Cli, StdinAndTextOutput) {
    const CliRun r = run("cohomology --max-dim 4 --coeff Z --input -", "echo '{\"free_rank\":0,\"torsion\":[4]}' |");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("H^2(Z_4; Z) = Z_4"), std::string::npos);
    EXPECT_NE(r.out.find("H^3(Z_4; Z) = 0"), std::string::npos);
}

TEST(Cli, CertifyDegreeTwo) {
    const CliRun r = run("certify --coeff Z --input " + sample("certify_z4_z2_deg2.json") + " --output json");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(parse(r)["induced_matrix"]["data"], nlohmann::json::parse("[[2]]"));
    const CliRun none = run("certify --coeff 2 --input " + sample("certify_z4_z2_deg2.json") + " --output json");
    EXPECT_EQ(none.status, 2);
    EXPECT_EQ(parse(none)["error"], "NoWitness");
}

TEST(Cli, BatchDeterministicAcrossJobs) {
    const std::string args = "snf --output json --input " + sample("mixed_batch.json");
    const CliRun a = run(args);
    const CliRun b = run(args + " --jobs 4");
    EXPECT_EQ(a.status, 2);
    EXPECT_EQ(a.out, b.out);
    const auto j = parse(a);
    ASSERT_EQ(j.size(), 4u);
    EXPECT_EQ(j[2]["value"], 2);
    EXPECT_EQ(j[3]["error"], "TorsionNotKilled");
}

TEST(Cli, EnvironmentCapIsEchoed) {
    const CliRun r = run("cohomology --output json --input " + sample("group_z2_z4.json"), "LSCAT_RANK_CAP=50");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(parse(r)["resource_cap"]["rank"], 50);
    const CliRun capped = run("cohomology --max-dim 12 --output json --input " + sample("group_z2_z4.json"),
                           "LSCAT_RANK_CAP=5");
    EXPECT_EQ(capped.status, 2);
    EXPECT_EQ(parse(capped)["error"], "ResourceCap");
}
