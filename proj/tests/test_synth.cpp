#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "infoops/splitter.hpp"
#include "infoops/synth.hpp"

using namespace infoops;

TEST_CASE("driver prevalence follows driver_fraction") {
  SynthParams p;
  p.n_users = 1000;
  p.driver_fraction = 0.02;
  p.tweets_per_user_range = {2, 4};
  Corpus c = generate_campaign(p);
  std::set<std::string> drivers, organics;
  for (const Tweet& t : c.tweets)
    (t.label == Label::driver ? drivers : organics).insert(t.author_id);
  CHECK(drivers.size() == 20);
  CHECK(organics.size() == 980);

  p.driver_fraction = 0.25;
  Corpus v = generate_campaign(p);
  drivers.clear();
  for (const Tweet& t : v.tweets)
    if (t.label == Label::driver) drivers.insert(t.author_id);
  CHECK(drivers.size() == 250);
}

TEST_CASE("same params and seed give byte-identical corpora") {
  SynthParams p;
  p.n_users = 80;
  p.seed = 42;
  Corpus a = generate_campaign(p);
  Corpus b = generate_campaign(p);
  CHECK(a == b);

  auto dir = std::filesystem::temp_directory_path();
  write_corpus(a, dir / "infoops_synth_a.ndjson", CorpusFormat::ndjson);
  write_corpus(b, dir / "infoops_synth_b.ndjson", CorpusFormat::ndjson);
  std::ifstream fa(dir / "infoops_synth_a.ndjson"), fb(dir / "infoops_synth_b.ndjson");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());

  p.seed = 43;
  CHECK(generate_campaign(p) != a);
}

TEST_CASE("generated corpora validate and round-trip through ingestion") {
  SynthParams p;
  p.n_users = 60;
  p.seed = 9;
  Corpus c = generate_campaign(p);
  CHECK_NOTHROW(validate_corpus(c));
  auto path = std::filesystem::temp_directory_path() / "infoops_synth_rt.ndjson";
  write_corpus(c, path, CorpusFormat::ndjson);
  CHECK(ingest_corpus(path, CorpusFormat::ndjson) == c);
}

TEST_CASE("driver subgraph is denser than the cross-class wiring") {
  SynthParams p;
  p.n_users = 300;
  p.seed = 3;
  Corpus c = generate_campaign(p);

  std::map<std::string, Label> label_of;
  for (const Tweet& t : c.tweets) label_of[t.author_id] = t.label;

  std::size_t dd = 0, d_out = 0, oo = 0, o_out = 0;
  for (const Tweet& t : c.tweets) {
    if (!t.retweeted_author_id) continue;
    bool from_driver = t.label == Label::driver;
    bool to_driver = label_of.at(*t.retweeted_author_id) == Label::driver;
    if (from_driver) {
      ++d_out;
      if (to_driver) ++dd;
    } else {
      ++o_out;
      if (to_driver) ++oo;
    }
  }
  REQUIRE(d_out > 0);
  REQUIRE(o_out > 0);
  double driver_rate = static_cast<double>(dd) / static_cast<double>(d_out);
  double organic_rate = static_cast<double>(oo) / static_cast<double>(o_out);
  CHECK(driver_rate > organic_rate);
  CHECK(driver_rate > 0.5);
  CHECK(organic_rate < 0.2);
}

TEST_CASE("late users make the temporal split non-degenerate") {
  SynthParams p;
  p.n_users = 200;
  p.seed = 1;
  Corpus c = generate_campaign(p);
  SplitDataset s = temporal_split(c, 100, 1);
  CHECK_FALSE(s.train.empty());
  CHECK_FALSE(s.test.empty());
  CHECK_FALSE(s.test_users.empty());
}

TEST_CASE("parameter validation") {
  SynthParams p;
  p.n_users = 1;
  CHECK_THROWS(generate_campaign(p));
  p = SynthParams{};
  p.driver_fraction = 0.0;
  CHECK_THROWS(generate_campaign(p));
  p = SynthParams{};
  p.time_window = {10, 10};
  CHECK_THROWS(generate_campaign(p));
  p = SynthParams{};
  p.tweets_per_user_range = {0, 5};
  CHECK_THROWS(generate_campaign(p));
  p = SynthParams{};
  p.p_retweet = 1.5;
  CHECK_THROWS(generate_campaign(p));
}
