#include "andor/bench.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace andor;

namespace {

ExperimentConfig tiny_config() {
  std::istringstream in(
      "algs=s1,s2,revstar,aostar\n"
      "nodes=60\n"
      "and_pct=30\n"
      "cyclic=false\n"
      "trials=4\n"
      "seed=5\n");
  return parse_experiment_config(in);
}

}  // namespace

TEST(Config, ParsesListsAndScalars) {
  std::istringstream in(
      "# comment\n"
      "algs=s1,revstar\n"
      "nodes=100,200\n"
      "and_pct=30,50\n"
      "cyclic=true,false\n"
      "trials=7\n"
      "seed=11\n"
      "out=r.csv\n");
  ExperimentConfig cfg = parse_experiment_config(in);
  EXPECT_EQ(cfg.algorithms.size(), 2u);
  EXPECT_EQ(cfg.node_counts, (std::vector<int>{100, 200}));
  EXPECT_EQ(cfg.and_pcts, (std::vector<int>{30, 50}));
  EXPECT_EQ(cfg.cyclics, (std::vector<bool>{true, false}));
  EXPECT_EQ(cfg.trials, 7);
  EXPECT_EQ(cfg.seed, 11u);
  EXPECT_EQ(cfg.out, "r.csv");
}

TEST(Config, RejectsGarbage) {
  std::istringstream bad1("algs=s1\nnodes=10\nand_pct=30\ncyclic=maybe\n");
  EXPECT_THROW(parse_experiment_config(bad1), ParseError);
  std::istringstream bad2("algs=warp\nnodes=10\nand_pct=30\ncyclic=true\n");
  EXPECT_THROW(parse_experiment_config(bad2), ParseError);
  std::istringstream missing("nodes=10\n");
  EXPECT_THROW(parse_experiment_config(missing), InvalidArgument);
}

TEST(Bench, CountersAreDeterministic) {
  ExperimentConfig cfg = tiny_config();
  auto a = run_experiment(cfg);
  auto b = run_experiment(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].evals.mean, b[i].evals.mean);
    EXPECT_EQ(a[i].selections.mean, b[i].selections.mean);
    EXPECT_EQ(a[i].expansions.mean, b[i].expansions.mean);
    EXPECT_EQ(a[i].failures, b[i].failures);
  }
}

TEST(Bench, RecordsLookSane) {
  auto records = run_experiment(tiny_config());
  ASSERT_EQ(records.size(), 4u);  // one per algorithm, single cell
  for (const auto& r : records) {
    EXPECT_EQ(r.trials, 4);
    EXPECT_EQ(r.failures, 0);  // generated instances are always solvable
    EXPECT_GT(r.evals.mean, 0.0);
    EXPECT_GT(r.selections.mean, 0.0);
    if (r.algorithm == Algorithm::S2 || r.algorithm == Algorithm::AoStar) {
      EXPECT_GT(r.expansions.mean, 0.0);
    }
  }
}

TEST(Bench, CsvHeaderAndShape) {
  auto records = run_experiment(tiny_config());
  std::ostringstream out;
  write_csv(records, out);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header,
            "alg,nodes,and_pct,cyclic,trials,mean_time_us,mean_evals,"
            "mean_selections,mean_expansions,stddev_time_us,stddev_evals,"
            "stddev_selections,stddev_expansions");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(out.str().substr(0, out.str().find(',')), "alg");
}

TEST(Bench, SharedInstancesAcrossAlgorithms) {
  // same cell, same seeds: the uninformed searches must agree on status and
  // the informed ones must match them
  ExperimentConfig cfg = tiny_config();
  cfg.trials = 3;
  auto records = run_experiment(cfg);
  for (const auto& r : records) EXPECT_EQ(r.failures, 0);
}
