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


// Exit-code contract of the command line tool.

#include "hdgeom/io.hpp"
#include "hdgeom/serialize.hpp"
#include "scratch.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

namespace hdgeom {
namespace {

namespace fs = std::filesystem;
using hdgeom::testing::scratch_dir;

int run_cli(const std::string& args)
{
   const std::string cmd = std::string(HDGEOM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
   const int status = std::system(cmd.c_str());
   return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, HelpSucceeds)
{
   EXPECT_EQ(run_cli("--help"), 0);
   EXPECT_EQ(run_cli("toy-circle --help"), 0);
}

TEST(Cli, SuccessfulRunExitsZero)
{
   const auto dir = scratch_dir();
   write_text(dir / "cfg.json", R"({"n": 200, "n_sub": 100, "p_list": [3, 200]})");
   EXPECT_EQ(run_cli("toy-circle --config " + (dir / "cfg.json").string() + " --out-dir " + (dir / "out").string() +
                     " --seed 3 --threads 2"),
             0);
   EXPECT_TRUE(fs::exists(dir / "out" / "manifest.json"));
   const Json report = Json::parse(read_text(dir / "out" / "report.json"));
   EXPECT_EQ(report["config"]["seed"], Json(3));
}

TEST(Cli, HardCheckFailureExitsTwo)
{
   const auto dir = scratch_dir();
   write_text(dir / "cfg.json", R"({"n": 200, "n_sub": 100, "p_list": [200], "expect_betti": [1, 5]})");
   EXPECT_EQ(run_cli("toy-circle --config " + (dir / "cfg.json").string() + " --out-dir " + (dir / "out").string()),
             2);
}

TEST(Cli, ConfigAndIoErrorsExitOne)
{
   const auto dir = scratch_dir();
   write_text(dir / "bad.json", "{ nope");
   write_text(dir / "unknown.json", R"({"colour": 1})");
   const std::string out = " --out-dir " + (dir / "out").string();
   EXPECT_EQ(run_cli("toy-circle --config " + (dir / "bad.json").string() + out), 1);
   EXPECT_EQ(run_cli("toy-circle --config " + (dir / "unknown.json").string() + out), 1);
   EXPECT_EQ(run_cli("toy-circle --config " + (dir / "missing.json").string() + out), 1);
   EXPECT_EQ(run_cli("toy-circle"), 1);
   EXPECT_EQ(run_cli("no-such-command"), 1);
   EXPECT_EQ(run_cli("external" + out), 1);
}

TEST(Cli, RipsAndBottleneckTools)
{
   const auto dir = scratch_dir();
   write_text(dir / "d.csv", "0,1,1,1.4142135623730951\n1,0,1.4142135623730951,1\n1,1.4142135623730951,0,1\n"
                             "1.4142135623730951,1,1,0\n");
   EXPECT_EQ(run_cli("rips --distances " + (dir / "d.csv").string() + " --out " + (dir / "dgm.csv").string() +
                     " --max-dim 1 --max-edge 2"),
             0);
   const PersistenceDiagram dgm = load_diagram(dir / "dgm.csv");
   EXPECT_EQ(dgm.count(1), 1u);
   EXPECT_EQ(run_cli("bottleneck " + (dir / "dgm.csv").string() + " " + (dir / "dgm.csv").string() + " --dim 1"), 0);
}

} // namespace
} // namespace hdgeom
