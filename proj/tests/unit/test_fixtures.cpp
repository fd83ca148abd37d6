#include <gtest/gtest.h>

#include "io.hpp"
#include "table1_data.hpp"

using namespace bwkit;
using namespace bwkit::app;

namespace {

const fs::path kData = fs::path(BWKIT_SOURCE_DIR) / "data" / "table1";

Matrix fixture(const fs::path& rel) {
  return matrix_from_json(read_json_file(kData / rel).content, rel.string()).matrix();
}

}  // namespace

TEST(Fixtures, BarycenterMatchesCompiledData) {
  const auto ms = table1::barycenter_matrices();
  for (int i = 0; i < 5; ++i) EXPECT_EQ(fixture("barycenter/A" + std::to_string(i + 1) + ".json"), ms[i]) << i;
  EXPECT_EQ(fixture("barycenter/X_opt.json"), table1::barycenter_sdp_solution());
  EXPECT_EQ(fixture("barycenter/X_fp.json"), table1::barycenter_fixed_point_solution());
  const auto problem = read_json_file(kData / "barycenter/problem.json").content;
  EXPECT_EQ(problem.at("weights").get<std::vector<double>>(), table1::barycenter_weights());
}

TEST(Fixtures, BallMatchesCompiledData) {
  EXPECT_EQ(fixture("ball/A.json"), table1::ball_center());
  EXPECT_EQ(fixture("ball/X.json"), table1::ball_solution());
  const auto balls = read_json_file(kData / "ball/balls.json").content;
  EXPECT_EQ(balls.at("balls").at(0).at("radius_squared").get<double>(), table1::kBallRadiusSquared);
}

TEST(Fixtures, SetDistanceWitnessesNamedByTrace) {
  const Matrix t1 = fixture("set_distance/witness_trace1.json");
  const Matrix t2 = fixture("set_distance/witness_trace2.json");
  EXPECT_EQ(t1, table1::set_witness_trace1());
  EXPECT_EQ(t2, table1::set_witness_trace2());
  EXPECT_NEAR(t1.trace(), 1.0, 1e-3);
  EXPECT_NEAR(t2.trace(), 2.0, 1e-3);
  EXPECT_LE((t2 - 2.0 * t1).cwiseAbs().maxCoeff(), 1.0001e-4);
}

TEST(Fixtures, PublishedMatricesArePd) {
  for (const Matrix& m : table1::barycenter_matrices()) EXPECT_NO_THROW(PdMatrix::validate(m));
  EXPECT_NO_THROW(PdMatrix::validate(table1::ball_center()));
  EXPECT_NO_THROW(PdMatrix::validate(table1::ball_solution()));
  EXPECT_NO_THROW(PdMatrix::validate(table1::set_witness_trace1()));
}
