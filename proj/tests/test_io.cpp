#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <limits>

#include "support.hpp"

using namespace dqt;

namespace {

bool bit_equal(const DQMatrix& a, const DQMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const DualQuaternion x = a(i, j);
      const DualQuaternion y = b(i, j);
      const double u[8] = {x.st().w(), x.st().x(), x.st().y(), x.st().z(),
                           x.inf().w(), x.inf().x(), x.inf().y(), x.inf().z()};
      const double v[8] = {y.st().w(), y.st().x(), y.st().y(), y.st().z(),
                           y.inf().w(), y.inf().x(), y.inf().y(), y.inf().z()};
      if (std::memcmp(u, v, sizeof u) != 0) return false;
    }
  }
  return true;
}

ErrorKind parse_error_kind(std::string_view text) {
  try {
    (void)parse_dqmat(text);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalAssertion;
}

}  // namespace

TEST(Dqmat, ParsesExamples) {
  const DQMatrix id = parse_dqmat("DQMAT 1 1\n1 0 0 0 0 0 0 0");
  EXPECT_EQ(id(0, 0), DualQuaternion(Quaternion(1.0)));
  const DQMatrix e = parse_dqmat("DQMAT 1 1\n0 0 0 0 1 0 0 0\n");
  EXPECT_EQ(e(0, 0), DualQuaternion(DualNumber::epsilon()));
}

TEST(Dqmat, CommentsBlankLinesAndCrlf) {
  const DQMatrix a = parse_dqmat("# leading comment\r\nDQMAT 1 2\r\n\n1 2 3 4 5 6 7 8\r\n# mid\n-1 0 0 0 0 0 0 0.5\n");
  EXPECT_EQ(a(0, 0), DualQuaternion(Quaternion(1, 2, 3, 4), Quaternion(5, 6, 7, 8)));
  EXPECT_EQ(a(0, 1), DualQuaternion(Quaternion(-1.0), Quaternion(0, 0, 0, 0.5)));
}

TEST(Dqmat, Errors) {
  EXPECT_EQ(parse_error_kind("DQMAT 2 2\n1 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\n"),
            ErrorKind::DimensionError);
  EXPECT_EQ(parse_error_kind("DQMAT 1 1\n1 0 0 0 0 0 0 0\n1 0 0 0 0 0 0 0\n"), ErrorKind::DimensionError);
  EXPECT_EQ(parse_error_kind(""), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("DQMAX 1 1\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("DQMAT 1 1\n1 0 0 0 0 0 0\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("DQMAT 1 1\n1 0 0 x 0 0 0 0\n"), ErrorKind::ParseError);
  EXPECT_EQ(parse_error_kind("DQMAT 1 1\nnan 0 0 0 0 0 0 0\n"), ErrorKind::ParseError);
  try {
    (void)parse_dqmat("DQMAT 1 1\n\n1 0 0 0 0 0 0 oops\n");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Dqmat, RoundTripIsBitExact) {
  Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = 1 + rng.bits() % 5;
    const std::size_t n = 1 + rng.bits() % 5;
    DQMatrix a = random_general(m, n, rng);
    // awkward magnitudes and signed zeros
    a.set(0, 0, {Quaternion(-0.0, 1e-310, 1.7976931348623157e308, std::bit_cast<double>(rng.bits() >> 2)),
                 Quaternion(0.1, -1.0 / 3.0, 5e-324, 2.0)});
    EXPECT_TRUE(bit_equal(parse_dqmat(to_dqmat(a)), a));
  }
}

TEST(Dqmat, WriterFormat) {
  EXPECT_EQ(to_dqmat(DQMatrix::identity(1)), "DQMAT 1 1\n1 0 0 0 0 0 0 0\n");
}
