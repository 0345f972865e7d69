#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "support.hpp"

using namespace dqt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dqspectra_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  Outcome run(const std::string& args) const {
    const std::string stdin_redirect = args.find('<') == std::string::npos ? " </dev/null" : "";
    const std::string cmd = std::string(DQSPECTRA_CLI) + " " + args + stdin_redirect + " >" + path("stdout") +
                            " 2>" + path("stderr");
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(path("stdout"));
    r.err = slurp(path("stderr"));
    return r;
  }

  fs::path dir_;
};

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

std::string line_starting(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line;
  return {};
}

}  // namespace

TEST(CliFormat, NumbersUseTwelveDigitsAndNoNegativeZero) {
  EXPECT_EQ(cli::num(-0.0), "0");
  EXPECT_EQ(cli::num(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(cli::num(-1.0), "-1");
}

TEST_F(CliTest, EigKnownAnswers) {
  const DQMatrix a = dq(QuatMatrix::identity(2), real_matrix({{0, 1}, {1, 0}}));
  const Outcome r = run("eig --in " + write("a.dqmat", to_dqmat(a)));
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "eigenvalues n=2\n1 1\n1 -1\n")) << r.out;

  const Outcome d = run("eig --in " + write("d.dqmat", to_dqmat(dq(real_matrix({{2, 0}, {0, 1}})))));
  EXPECT_EQ(d.code, 0);
  EXPECT_TRUE(contains(d.out, "eigenvalues n=2\n2 0\n1 0\n")) << d.out;
  EXPECT_TRUE(contains(d.out, "definiteness=PositiveDefinite"));
  EXPECT_TRUE(contains(d.out, "status=PASS"));
}

TEST_F(CliTest, EigReadsStdin) {
  const std::string in = write("d.dqmat", to_dqmat(dq(real_matrix({{2, 0}, {0, 1}}))));
  const Outcome r = run("eig < " + in);
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "2 0\n1 0\n"));
}

TEST_F(CliTest, EigRejectsNonHermitian) {
  Rng rng(61);
  const Outcome r = run("eig --in " + write("g.dqmat", to_dqmat(random_general(3, 3, rng))));
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "Hermitian")) << r.err;
}

TEST_F(CliTest, ParseErrorsAreStructuralRejections) {
  const Outcome r = run("eig --in " + write("bad.dqmat", "DQMAT 2 2\n1 0 0 0 0 0 0 0\n"));
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run("eig --in " + path("missing.dqmat")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("eig --tol -1").code, 2);
}

TEST_F(CliTest, VerifyReproducesEigResiduals) {
  Rng rng(62);
  const std::string in = write("h.dqmat", to_dqmat(random_hermitian(6, rng)));
  const Outcome e = run("eig --in " + in + " --out " + path("u.dqmat"));
  ASSERT_EQ(e.code, 0) << e.err;
  const Outcome v = run("verify --in " + in + " --factor " + path("u.dqmat"));
  ASSERT_EQ(v.code, 0) << v.err;
  const std::string le = line_starting(e.out, "residual_st=");
  ASSERT_FALSE(le.empty());
  EXPECT_EQ(le, line_starting(v.out, "residual_st="));
}

TEST_F(CliTest, SvdAndRank) {
  const std::string eps = write("e.dqmat", "DQMAT 1 1\n0 0 0 0 1 0 0 0\n");
  const Outcome s = run("svd --in " + eps);
  EXPECT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(contains(s.out, "singular_values m=1 n=1\n0 1\nrank=1 appreciable_rank=0\n")) << s.out;

  const Outcome r = run("rank --in " + write("i.dqmat", to_dqmat(DQMatrix::identity(4))));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "rank=4 appreciable_rank=4\n")) << r.out;
  EXPECT_TRUE(contains(r.out, "rank_st=4 cross_check=PASS"));
}

TEST_F(CliTest, SvdTruncation) {
  const std::string d = write("d.dqmat", to_dqmat(dq(real_matrix({{3, 0}, {0, 1}}))));
  const Outcome r = run("svd --in " + d + " --k 1 --out " + path("approx.dqmat"));
  EXPECT_EQ(r.code, 0) << r.err;
  const DQMatrix approx = parse_dqmat(slurp(path("approx.dqmat")));
  EXPECT_LE(max_abs(approx - dq(real_matrix({{3, 0}, {0, 0}}))), 1e-14);
  EXPECT_EQ(run("svd --in " + d + " --k 3").code, 2);
}

TEST_F(CliTest, SqrtPaths) {
  const Outcome bad = run("sqrt --in " + write("e.dqmat", to_dqmat(dq(QuatMatrix(2, 2), QuatMatrix::identity(2)))));
  EXPECT_EQ(bad.code, 3);
  EXPECT_TRUE(contains(bad.err, "not perfect")) << bad.err;

  const DualNumber d[2] = {{4, 4}, {1, 0}};
  const Outcome ok = run("sqrt --in " + write("d.dqmat", to_dqmat(DQMatrix::diagonal(d))) + " --out " + path("l.dqmat"));
  EXPECT_EQ(ok.code, 0) << ok.err;
  const DQMatrix l = parse_dqmat(slurp(path("l.dqmat")));
  EXPECT_TRUE(near(l(0, 0).real_part(), {2, 1}, 1e-14));
  // without --out, stdout stays a valid DQMAT file
  const Outcome inline_out = run("sqrt --in " + path("d.dqmat"));
  EXPECT_EQ(max_abs(parse_dqmat(inline_out.out) - l), 0.0);

  EXPECT_EQ(run("sqrt --in " + write("n.dqmat", to_dqmat(dq(real_matrix({{-1}}))))).code, 2);
}

TEST_F(CliTest, GenKinds) {
  const Outcome h = run("gen --kind hermitian --rows 3 --cols 3 --seed 7");
  ASSERT_EQ(h.code, 0);
  EXPECT_TRUE(is_hermitian(parse_dqmat(h.out), 1e-14));
  EXPECT_EQ(run("gen --kind hermitian --rows 3 --cols 3 --seed 7").out, h.out);
  EXPECT_NE(run("gen --kind hermitian --rows 3 --cols 3 --seed 8").out, h.out);

  const Outcome p = run("gen --kind psd --rows 2 --cols 4 --seed 1 --out " + path("p.dqmat"));
  ASSERT_EQ(p.code, 0);
  const Outcome pe = run("eig --in " + path("p.dqmat"));
  EXPECT_EQ(pe.code, 0) << pe.out;
  EXPECT_TRUE(contains(pe.out, "definiteness=PositiveSemidefinite")) << pe.out;

  const Outcome q = run("gen --kind pose --rows 2 --cols 2 --seed 3");
  ASSERT_EQ(q.code, 0);
  const DQMatrix pose = parse_dqmat(q.out);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const DualQuaternion e = pose(i, j);
      EXPECT_LE(dqdist(e * e.conj(), DualQuaternion(Quaternion(1.0))), 1e-12);
    }

  EXPECT_EQ(run("gen --kind general --rows 0 --cols 2").code, 2);
  EXPECT_EQ(run("gen --kind hermitian --rows 2 --cols 3").code, 2);
  EXPECT_EQ(run("gen --kind blob --rows 2 --cols 2").code, 2);
}

TEST_F(CliTest, Oracle) {
  const DQMatrix a = dq(real_matrix({{1, 0}, {0, 2}}), real_matrix({{3, 0}, {0, 4}}));
  const Outcome r = run("oracle --in " + write("a.dqmat", to_dqmat(a)));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "h=0.0001 deviation="));
  EXPECT_TRUE(contains(r.out, "status=PASS"));

  EXPECT_EQ(run("gen --kind hermitian --rows 5 --cols 5 --seed 2 --out " + path("h.dqmat")).code, 0);
  const Outcome h = run("oracle --in " + path("h.dqmat") + " --h 1e-3,1e-4");
  EXPECT_EQ(h.code, 0) << h.out;
  EXPECT_TRUE(contains(h.out, "h=0.001 deviation="));
}

TEST_F(CliTest, SweepCapFromEnvironment) {
  EXPECT_EQ(run("gen --kind hermitian --rows 6 --cols 6 --seed 4 --out " + path("h.dqmat")).code, 0);
  const std::string cmd = "DQSPECTRA_MAX_SWEEPS=0 " + std::string(DQSPECTRA_CLI) + " eig --in " + path("h.dqmat") +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 1);
}

TEST_F(CliTest, Deterministic) {
  EXPECT_EQ(run("gen --kind general --rows 4 --cols 3 --seed 9 --out " + path("b.dqmat")).code, 0);
  const Outcome a = run("svd --in " + path("b.dqmat"));
  const Outcome b = run("svd --in " + path("b.dqmat"));
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}
