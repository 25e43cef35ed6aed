/*
   Copyright 2026 The hdgeom Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "hdgeom/io.hpp"
#include "hdgeom/serialize.hpp"
#include "scratch.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace hdgeom {
namespace {

using hdgeom::testing::scratch_dir;

std::string error_of(const std::function<void()>& f)
{
   try
   {
      f();
   }
   catch (const IoError& e)
   {
      return e.what();
   }
   return {};
}

TEST(Csv, DoubleFormattingRoundTrips)
{
   std::mt19937_64 rng(1);
   std::uniform_real_distribution<double> u(-1e6, 1e6);
   for (int t = 0; t < 1000; ++t)
   {
      const double x = u(rng) * std::pow(10.0, (t % 40) - 20);
      EXPECT_EQ(parse_double(format_double(x)).value(), x);
   }
   EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
   EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
   EXPECT_TRUE(std::isinf(parse_double("inf").value()));
   EXPECT_FALSE(parse_double("1.5x").has_value());
   EXPECT_FALSE(parse_double("").has_value());
}

TEST(Csv, MatrixRoundTripIsBitIdentical)
{
   const auto dir = scratch_dir();
   std::mt19937_64 rng(2);
   std::normal_distribution<double> g(0.0, 1.0);
   Matrix m(10, 5);
   for (Eigen::Index i = 0; i < 10; ++i)
   {
      for (Eigen::Index j = 0; j < 5; ++j)
      {
         m(i, j) = g(rng) / 3.0;
      }
   }
   save_matrix(dir / "m.csv", m);
   EXPECT_EQ(load_matrix(dir / "m.csv"), m);
   save_matrix(dir / "h.csv", m, {"a", "b", "c", "d", "e"});
   EXPECT_EQ(load_matrix(dir / "h.csv", CsvOptions{5, true}), m);
}

TEST(Csv, RaggedRowIsReportedWithLine)
{
   const auto dir = scratch_dir();
   write_text(dir / "r.csv", "1,2,3\n4,5,6\n7,8\n");
   const std::string msg = error_of([&] { load_matrix(dir / "r.csv"); });
   EXPECT_NE(msg.find(":3"), std::string::npos) << msg;
   EXPECT_NE(msg.find("ragged"), std::string::npos) << msg;
}

TEST(Csv, NonNumericCellIsReportedWithLine)
{
   const auto dir = scratch_dir();
   write_text(dir / "n.csv", "x,y\n1,2\n3,abc\n");
   const std::string msg = error_of([&] { load_matrix(dir / "n.csv"); });
   EXPECT_NE(msg.find(":3"), std::string::npos) << msg;
   EXPECT_NE(msg.find("abc"), std::string::npos) << msg;
}

TEST(Csv, ColumnCountMismatchIsReported)
{
   const auto dir = scratch_dir();
   write_text(dir / "c.csv", "1,2\n3,4\n");
   const std::string msg = error_of([&] { load_matrix(dir / "c.csv", CsvOptions{3, true}); });
   EXPECT_NE(msg.find(":1"), std::string::npos) << msg;
   EXPECT_NE(msg.find("expected"), std::string::npos) << msg;
}

TEST(Csv, MissingFileIsAnIoError)
{
   EXPECT_THROW(load_matrix("/nonexistent/hdgeom/file.csv"), IoError);
   EXPECT_THROW(read_text("/nonexistent/hdgeom/file.csv"), IoError);
}

TEST(Csv, DiagramRoundTrip)
{
   const auto dir = scratch_dir();
   PersistenceDiagram d;
   d.max_dim = 2;
   d.pairs = {{0, 0.0, 0.25}, {0, 0.0, kInfinity}, {1, 0.1, 0.7}, {2, 0.3, 0.31}};
   save_diagram(dir / "d.csv", d);
   EXPECT_EQ(read_text(dir / "d.csv").substr(0, 16), "dim,birth,death\n");
   EXPECT_EQ(load_diagram(dir / "d.csv").pairs, d.pairs);
   write_text(dir / "bad.csv", "dim,birth,death\n1,0.5,0.1\n");
   EXPECT_THROW(load_diagram(dir / "bad.csv"), IoError);
}

TEST(Csv, DistanceMatrixLayouts)
{
   const auto dir = scratch_dir();
   DistanceMatrix dm;
   dm.d = Matrix{{0.0, 1.5, 2.0}, {1.5, 0.0, 0.5}, {2.0, 0.5, 0.0}};
   save_distance_matrix(dir / "full.csv", dm);
   EXPECT_EQ(load_matrix(dir / "full.csv"), dm.d);
   save_distance_matrix(dir / "tri.csv", dm, true);
   EXPECT_EQ(read_text(dir / "tri.csv"), "i,j,d\n1,0,1.5\n2,0,2\n2,1,0.5\n");
}

TEST(Csv, MovingAverageHeader)
{
   const auto dir = scratch_dir();
   IsometryReport r;
   r.moving_average = {{1.0, 2.0, 0.5}};
   save_moving_average(dir / "ma.csv", r);
   EXPECT_EQ(read_text(dir / "ma.csv"), "bin_center,mean,std\n1,2,0.5\n");
}

TEST(Csv, Sha256OfKnownContent)
{
   const auto dir = scratch_dir();
   write_text(dir / "abc.txt", "abc");
   EXPECT_EQ(sha256_file(dir / "abc.txt"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Serialize, NonFiniteNumbersBecomeStrings)
{
   EXPECT_EQ(number(1.5), Json(1.5));
   EXPECT_EQ(number(std::numeric_limits<double>::infinity()), Json("inf"));
   EXPECT_EQ(number(std::nan("")), Json("nan"));
}

TEST(Serialize, ReportFieldsArePresent)
{
   IsometryReport r;
   r.slope = 2.0;
   r.intercept = 0.1;
   r.rho = 0.9;
   r.pairs_used = 10;
   r.window = 1;
   const Json j = to_json(r);
   for (const char* key : {"slope", "intercept", "rho", "pairs_used", "window"})
   {
      EXPECT_TRUE(j.contains(key)) << key;
   }
   DeviationReport dev;
   dev.max_abs_deviation = 0.25;
   const Json jd = to_json(dev);
   EXPECT_EQ(jd["max_abs_deviation"], Json(0.25));
   EXPECT_EQ(jd["normalization"], Json("ByP"));
   BettiEstimate b;
   b.counts = {1, 2, 1};
   b.rule = "r";
   EXPECT_EQ(to_json(b)["counts"], Json({1, 2, 1}));
}

} // namespace
} // namespace hdgeom
