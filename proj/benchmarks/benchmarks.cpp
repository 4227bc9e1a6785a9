#include <benchmark/benchmark.h>

#include "infoops/evaluation.hpp"
#include "infoops/graph.hpp"
#include "infoops/rng.hpp"
#include "infoops/splitter.hpp"
#include "infoops/synth.hpp"
#include "infoops/textualize.hpp"

using namespace infoops;

namespace {

Corpus benchmark_corpus(int n_users) {
  SynthParams p;
  p.n_users = n_users;
  p.seed = 1;
  return generate_campaign(p);
}

void BM_Synth(benchmark::State& state) {
  SynthParams p;
  p.n_users = static_cast<int>(state.range(0));
  p.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(generate_campaign(p));
}
BENCHMARK(BM_Synth)->Arg(500)->Arg(2000);

void BM_TemporalSplit(benchmark::State& state) {
  Corpus c = benchmark_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(temporal_split(c, 100, 1));
}
BENCHMARK(BM_TemporalSplit)->Arg(500)->Arg(2000);

void BM_BuildGraph(benchmark::State& state) {
  Corpus c = benchmark_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_retweet_graph(c.tweets));
}
BENCHMARK(BM_BuildGraph)->Arg(500)->Arg(2000);

void BM_PageRank(benchmark::State& state) {
  Corpus c = benchmark_corpus(static_cast<int>(state.range(0)));
  auto g = build_retweet_graph(c.tweets);
  for (auto _ : state) benchmark::DoNotOptimize(pagerank(g));
}
BENCHMARK(BM_PageRank)->Arg(500)->Arg(2000);

void BM_EigenvectorCentrality(benchmark::State& state) {
  Corpus c = benchmark_corpus(static_cast<int>(state.range(0)));
  auto g = build_retweet_graph(c.tweets);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvector_centrality(g));
}
BENCHMARK(BM_EigenvectorCentrality)->Arg(500)->Arg(2000);

void BM_RocAuc(benchmark::State& state) {
  Rng rng(7);
  std::vector<double> scores;
  std::vector<Label> labels;
  for (int i = 0; i < state.range(0); ++i) {
    scores.push_back(rng.unit());
    labels.push_back(rng.bernoulli(0.2) ? Label::driver : Label::organic);
  }
  labels[0] = Label::driver;
  labels[1] = Label::organic;
  for (auto _ : state) benchmark::DoNotOptimize(roc_auc(scores, labels));
}
BENCHMARK(BM_RocAuc)->Arg(1000)->Arg(100000);

void BM_MetadataText(benchmark::State& state) {
  Corpus c = benchmark_corpus(200);
  std::map<std::string, std::vector<Tweet>> by_user;
  for (const Tweet& t : c.tweets) by_user[t.author_id].push_back(t);
  for (auto _ : state)
    for (const auto& [user, tweets] : by_user)
      benchmark::DoNotOptimize(metadata_text(user, tweets));
}
BENCHMARK(BM_MetadataText);

}  // namespace

BENCHMARK_MAIN();
