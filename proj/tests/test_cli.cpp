#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mouldlab/bch.hpp"
#include "mouldlab/io.hpp"

using namespace mouldlab;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(MOULDLAB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path golden = MOULDLAB_GOLDEN_DIR;

}  // namespace

TEST(Cli, ComputeText) {
  const CliRun r = run("compute --factors 2 --degree 2 --method dynkin --format text");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "deg 1: + X + Y\ndeg 2: + 1/2 XY - 1/2 YX\n");
}

TEST(Cli, DefaultsAreTwoFactorsDegreeFive) {
  const CliRun r = run("compute --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, io::dump(io::series_to_json(direct_log(2, 5))));
}

TEST(Cli, ComputeJsonThreeFactors) {
  const CliRun r = run("compute --method kimura_log --factors 3 --degree 4 --format json");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, io::dump(io::series_to_json(direct_log(3, 4))));
  EXPECT_EQ(r.out, slurp(golden / "series_direct_log_3_4.json"));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("compute --degree 0").code, 2);
  EXPECT_EQ(run("compute --factors 0").code, 2);
  EXPECT_EQ(run("compute --method bogus").code, 2);
  EXPECT_EQ(run("mould --name Q --bound 3").code, 2);
  EXPECT_EQ(run("mould --bound 3").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("verify --suite nope").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, MouldTables) {
  const CliRun t = run("mould --name T_N --bound 3");
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("(1 2) : -1/12\n"), std::string::npos);
  const CliRun i = run("mould --name I --bound 2 --format json");
  ASSERT_EQ(i.code, 0);
  const auto j = io::json::parse(i.out);
  ASSERT_EQ(j.at("entries").size(), 2u);
  EXPECT_EQ(j["entries"][0]["word"], "(1)");
  EXPECT_EQ(j["entries"][1]["word"], "(2)");
  EXPECT_EQ(run("mould --name S_N --bound 6 --format json").out, slurp(golden / "mould_S_N_w6.json"));
  EXPECT_EQ(run("mould --name T_N --bound 6 --format json").out, slurp(golden / "mould_T_N_w6.json"));
  const CliRun u = run("mould --name U --bound 3");
  EXPECT_NE(u.out.find("xyx : -1\n"), std::string::npos);
  EXPECT_EQ(run("mould --name I --alphabet omega --factors 3 --bound 1").out, "x1 : 1\nx2 : 1\nx3 : 1\n");
}

TEST(Cli, Determinism) {
  const std::string args = "compute --factors 2 --degree 5 --method kimura_log --format json";
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, slurp(golden / "compute_kimura_log_2_5.json"));
}

TEST(Cli, OutputFile) {
  const fs::path p = fs::temp_directory_path() / "mouldlab_cli_out.txt";
  fs::remove(p);
  EXPECT_EQ(run("compute --degree 3 --output " + p.string()).code, 0);
  EXPECT_EQ(slurp(p), io::series_to_text(direct_log(2, 3)));
  fs::remove(p);
}

TEST(Cli, VerifySuites) {
  const CliRun b = run("verify --suite bch --degree 5");
  EXPECT_EQ(b.code, 0) << b.out;
  EXPECT_EQ(b.out.find("[FAIL]"), std::string::npos);
  EXPECT_EQ(run("verify --suite all --degree 1").code, 0);
  EXPECT_EQ(run("verify --suite mould-identities --degree 4").code, 0);
  EXPECT_EQ(run("verify --suite compose --degree 4 --golden-dir " + golden.string()).code, 0);
}

TEST(Cli, CorruptedGoldenFails) {
  const fs::path dir = fs::temp_directory_path() / "mouldlab_golden_copy";
  fs::remove_all(dir);
  fs::copy(golden, dir);
  {
    std::ofstream f(dir / "mould_T_N_w6.json", std::ios::app);
    f << " ";
  }
  const CliRun r = run("verify --suite mould-identities --degree 2 --golden-dir " + dir.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("[FAIL] golden mould_T_N_w6.json"), std::string::npos);
  fs::remove_all(dir);
}
