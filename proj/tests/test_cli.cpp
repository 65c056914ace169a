#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "test_util.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(ANDOR_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string fx(const std::string& name) {
  return andor::test::fixture_path(name);
}

}  // namespace

TEST(Cli, SolveSuccessPrintsStatusAndCost) {
  RunResult r = run("solve --alg s1 --graph " + fx("g1.aog"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "SUCCESS,14\n");
}

TEST(Cli, SolveFailureExitsOne) {
  RunResult r = run("solve --alg s1 --graph " + fx("g2.aog"));
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "FAILURE,INF\n");
}

TEST(Cli, AllAlgorithmsAgreeOnTheFixture) {
  for (const char* alg : {"s1", "s2", "revstar"}) {
    RunResult r = run(std::string("solve --alg ") + alg + " --graph " +
                      fx("g1.aog"));
    EXPECT_EQ(r.out, "SUCCESS,14\n") << alg;
  }
}

TEST(Cli, AoStarDiagnostics) {
  EXPECT_EQ(run("solve --alg aostar --graph " + fx("ao_stuck.aog")).out,
            "FAILURE,STUCK\n");
  EXPECT_EQ(run("solve --alg aostar --graph " + fx("ao_loop.aog")).out,
            "FAILURE,LOOP-DETECTED\n");
}

TEST(Cli, TraceCsv) {
  std::string trace = std::string(::testing::TempDir()) + "/s1_trace.csv";
  run("solve --alg s1 --graph " + fx("g1.aog") + " --trace " + trace);
  std::ifstream in(trace);
  std::string header, row1;
  std::getline(in, header);
  std::getline(in, row1);
  EXPECT_EQ(header, "iter,node,h");
  EXPECT_EQ(row1, "1,t1,0");

  std::string trace2 = std::string(::testing::TempDir()) + "/s2_trace.csv";
  run("solve --alg s2 --graph " + fx("g1.aog") + " --trace " + trace2);
  std::ifstream in2(trace2);
  std::getline(in2, header);
  EXPECT_EQ(header, "iter,expanded,closed_order,h(s),front(s)");
  std::getline(in2, row1);
  EXPECT_EQ(row1.substr(0, 4), "1,s,");
}

TEST(Cli, OracleVerbs) {
  EXPECT_EQ(run("oracle hstar --graph " + fx("g2.aog") + " --node q").out,
            "INF\n");
  EXPECT_EQ(run("oracle hstar --graph " + fx("g1.aog") + " --node s").out,
            "14\n");
  EXPECT_EQ(run("oracle hstar --graph " + fx("g2.aog") + " --node s").out,
            "UNDEF\n");
  EXPECT_EQ(
      run("oracle classify-node --graph " + fx("classify_g3.aog") + " --node s")
          .out,
      "III\n");
  EXPECT_EQ(
      run("oracle hprime --graph " + fx("explicit_a.aog") + " --node s").out,
      "15\n");

  RunResult enumeration =
      run("oracle enumerate --graph " + fx("mes_small.aog") + " --node s");
  EXPECT_EQ(enumeration.code, 0);
  EXPECT_NE(enumeration.out.find("count 5"), std::string::npos);
  EXPECT_NE(enumeration.out.find("TERMINATED"), std::string::npos);

  // first structure below n walks into the x -> n cycle
  EXPECT_EQ(run("oracle classify-mes --graph " + fx("mixed.aog") +
                " --node n --index 0")
                .out,
            "III\n");
  EXPECT_EQ(run("oracle classify-mes --graph " + fx("mixed.aog") +
                " --node n --index 1")
                .out,
            "I\n");

  RunResult composed =
      run("oracle compose --graph " + fx("compose_host.aog") + " --node n");
  EXPECT_EQ(composed.code, 0);
  EXPECT_NE(composed.out.find("root n"), std::string::npos);
  EXPECT_NE(composed.out.find("class I"), std::string::npos);
}

TEST(Cli, ValidateBrokenFileExitsTwo) {
  std::string path = std::string(::testing::TempDir()) + "/broken.aog";
  std::ofstream(path) << "start s\nnode s OR\nnode t TERMINAL\narc s t 0\n";
  RunResult r = run("validate --graph " + path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("delta"), std::string::npos);

  EXPECT_EQ(run("validate --graph " + fx("g1.aog")).code, 0);
  // explicit snapshots validate only under the right role
  EXPECT_EQ(run("validate --graph " + fx("explicit_a.aog")).code, 2);
  EXPECT_EQ(
      run("validate --graph " + fx("explicit_a.aog") + " --role auto").code, 0);
}

TEST(Cli, GenWritesLoadableGraphs) {
  std::string path = std::string(::testing::TempDir()) + "/gen.aog";
  RunResult r = run("gen --out " + path +
                    " --nodes 40 --and-pct 30 --cyclic --seed 9");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run("validate --graph " + path).code, 0);
  EXPECT_EQ(run("solve --alg s1 --graph " + path).code, 0);
}

TEST(Cli, SolveOnBuiltInSource) {
  RunResult r = run("solve --alg s2 --source chain:12 --budget 50");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "SUCCESS,13\n");
}

TEST(Cli, BenchSmokeRun) {
  std::string csv = std::string(::testing::TempDir()) + "/bench.csv";
  RunResult r = run("bench --config " + fx("bench_small.cfg") + " --out " + csv);
  EXPECT_EQ(r.code, 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.substr(0, 21), "alg,nodes,and_pct,cyc");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("solve --alg warp --graph " + fx("g1.aog")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("solve --graph /no/such/file.aog").code, 2);
  // searches need a complete graph, not a snapshot
  EXPECT_EQ(run("solve --alg s1 --graph " + fx("explicit_a.aog")).code, 2);
}

TEST(Cli, ReproducibleOutput) {
  std::string cmd = "oracle enumerate --graph " + fx("mes_small.aog") +
                    " --node n";
  EXPECT_EQ(run(cmd).out, run(cmd).out);
}
