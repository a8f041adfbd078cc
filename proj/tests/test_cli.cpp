#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "legfront/legfront.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(LEGFRONT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() / ("legfront_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string at(const std::string& name) const { return (dir / name).string(); }
};

const std::string kBadFront = std::string(LEGFRONT_DATA) + "/bad_front.json";

}  // namespace

TEST_F(Cli, WitnessExample) {
  const auto r = run("sheaf witness --poset zigzag --rank 1 --field 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("NoWitnessAtRank(1)"), std::string::npos);
}

TEST_F(Cli, ClassifyExample) {
  const auto r = run("loose-classify --rho 1 --action 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1/2 Critical\n");
}

TEST_F(Cli, BadFrontReportsViolations) {
  const auto r = run("validate " + kBadFront);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("valid: no"), std::string::npos);
  EXPECT_NE(r.out.find("VerticalTangency"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("validate --no-such-flag x").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("validate " + at("missing.json")).code, 2);
  EXPECT_EQ(run("loose-classify --rho 0 --action 1").code, 1);
  EXPECT_EQ(run("nonsqueeze --rho 1 --action 2").code, 1);
  EXPECT_EQ(run("approximate --builtin circle --epsilon -1").code, 1);
  EXPECT_EQ(run("sheaf witness --poset torus --rank 1").code, 2);
  {
    std::ofstream f(at("junk.json"));
    f << "{ nope";
  }
  EXPECT_EQ(run("invariants " + at("junk.json")).code, 2);
  // a budget of 10 cannot finish the rank-2 search
  EXPECT_EQ(run("sheaf witness --poset zigzag --rank 2 --field 2 --budget 10").code, 1);
}

TEST_F(Cli, EmittedJsonIsReadable) {
  ASSERT_EQ(run("move --builtin unknot --kind stabilize --event 1 --pos 0 -o " + at("m.json")).code, 0);
  const auto inv = run("invariants " + at("m.json"));
  EXPECT_EQ(inv.code, 0);
  EXPECT_NE(inv.out.find("tb: -2"), std::string::npos);
  ASSERT_EQ(run("lift " + at("m.json") + " -o " + at("l.json")).code, 0);
  EXPECT_NO_THROW(legfront::curves_from_json(legfront::read_json_file(at("l.json"))));
  ASSERT_EQ(run("approximate --builtin circle --circle-samples 401 --epsilon 0.2 -o " + at("a.json")).code, 0);
  EXPECT_EQ(run("approximate " + at("a.json") + " --epsilon 0.2").code, 0);
  ASSERT_EQ(run("loose-squeeze --rho 4 --action 2 --sigma 2 --count 3 --grid 20 -o " + at("c.json")).code, 0);
  EXPECT_EQ(run("loose-classify --chart " + at("c.json")).code, 0);
  ASSERT_EQ(run("sheaf witness --poset saucer --rank 1 -o " + at("w.json")).code, 0);
  const auto cert = run("certify " + at("w.json"));
  EXPECT_EQ(cert.code, 0);
  EXPECT_NE(cert.out.find("NonLooseWitnessFound"), std::string::npos);
  ASSERT_EQ(run("saucer --dim 1 --grid 400 -o " + at("s.json")).code, 0);
  EXPECT_EQ(run("validate " + at("s.json")).code, 0);
}

TEST_F(Cli, ConstantSheafIsNotACertificate) {
  const auto P = legfront::build_poset(legfront::PosetKind::SaucerSlice);
  legfront::write_text_file(at("k.json"), legfront::dump(legfront::sheaf_to_json(legfront::constant_sheaf(P))));
  const auto r = run("certify " + at("k.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("NotACertificate"), std::string::npos);
}

TEST_F(Cli, ByteDeterminism) {
  const std::vector<std::string> cmds = {
      "move --builtin random --random 5 -o {o}.json --svg {o}.svg",
      "approximate --builtin circle --circle-samples 401 --epsilon 0.2 --marked 0,100 -o {o}.json --svg {o}.svg",
      "park --start 0,0,0 --goal 1,0,0 --epsilon 0.1 -o {o}.json",
      "loose-squeeze --rho 4 --action 2 --grid 20 -o {o}.json",
      "wrinkle loci --mode standard --grid 41 --csv {o}.json --svg {o}.svg",
      "sheaf certify --poset zigzag --rank 1",
  };
  for (std::size_t k = 0; k < cmds.size(); ++k) {
    std::string outs[2], files[2];
    for (int pass = 0; pass < 2; ++pass) {
      std::string c = cmds[k];
      const std::string stem = at("o" + std::to_string(pass));
      for (std::size_t p; (p = c.find("{o}")) != std::string::npos;) c.replace(p, 3, stem);
      const auto r = run("--seed 0 " + c);
      ASSERT_EQ(r.code, 0) << c;
      outs[pass] = r.out;
      files[pass] = slurp(stem + ".json");
      if (fs::exists(stem + ".svg")) files[pass] += slurp(stem + ".svg");
    }
    EXPECT_EQ(outs[0], outs[1]) << cmds[k];
    EXPECT_EQ(files[0], files[1]) << cmds[k];
  }
}

TEST_F(Cli, SeedChangesRandomFronts) {
  const auto a = run("--seed 1 invariants --builtin random");
  const auto b = run("--seed 2 invariants --builtin random");
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out, b.out);
}
