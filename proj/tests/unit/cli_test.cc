// Copyright 2025 The skg-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the installed binary: exit codes, determinism,
// input immutability.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include "skg/corpus.h"
#include "skg/jsonl.h"
#include "support/fixtures.h"

namespace {

struct RunOutcome {
  int exit_code = -1;
  std::string stdout_text;
  std::string stderr_text;
};

RunOutcome run_cli(const std::string& args, const std::string& workdir) {
  std::string out_path = workdir + "/cli_stdout.txt";
  std::string err_path = workdir + "/cli_stderr.txt";
  std::string command = skg::testing::cli_bin() + " " + args + " >" +
                        out_path + " 2>" + err_path;
  int status = std::system(command.c_str());
  RunOutcome outcome;
  if (WIFEXITED(status)) outcome.exit_code = WEXITSTATUS(status);
  outcome.stdout_text = skg::testing::read_file(out_path);
  outcome.stderr_text = skg::testing::read_file(err_path);
  return outcome;
}

std::string data_flag() { return "--data-dir " + skg::testing::data_dir(); }

}  // namespace

TEST_CASE("usage errors exit 2, missing files exit 3") {
  skg::testing::TempDir dir;
  CHECK(run_cli("", dir.root()).exit_code == 2);
  CHECK(run_cli("no-such-command", dir.root()).exit_code == 2);
  CHECK(run_cli("--help", dir.root()).exit_code == 0);
  CHECK(run_cli("stats --corpus /definitely/missing.jsonl", dir.root())
            .exit_code == 3);
}

TEST_CASE("stats prints the per-source table") {
  skg::testing::TempDir dir;
  skg::save_corpus(skg::testing::fixture_corpus(25), dir.path("corpus.jsonl"));
  RunOutcome outcome =
      run_cli("stats --corpus " + dir.path("corpus.jsonl"), dir.root());
  CHECK(outcome.exit_code == 0);
  CHECK(outcome.stdout_text.find("#SKGs") != std::string::npos);
  CHECK(outcome.stdout_text.find("All") != std::string::npos);
}

TEST_CASE("pipeline runs are deterministic and leave inputs untouched") {
  skg::testing::TempDir dir;
  skg::save_corpus(skg::testing::fixture_corpus(40), dir.path("corpus.jsonl"));
  {
    std::ofstream jobs(dir.path("jobs.jsonl"));
    jobs << R"json({"id":"j1","context":"A day out.","concept_sets":[["dog","ball"],["man","throw"],["dog","catch"],["owner"]]})json"
         << "\n";
  }
  std::string corpus_before = skg::testing::read_file(dir.path("corpus.jsonl"));
  std::string jobs_before = skg::testing::read_file(dir.path("jobs.jsonl"));

  std::string base = "run-pipeline --jobs " + dir.path("jobs.jsonl") +
                     " --corpus " + dir.path("corpus.jsonl") + " " +
                     data_flag() + " --seed 7";
  RunOutcome first =
      run_cli(base + " --out " + dir.path("out1.jsonl"), dir.root());
  CHECK(first.exit_code == 0);
  RunOutcome second = run_cli(
      base + " --parallelism 4 --out " + dir.path("out2.jsonl"), dir.root());
  CHECK(second.exit_code == 0);

  std::string out1 = skg::testing::read_file(dir.path("out1.jsonl"));
  CHECK(!out1.empty());
  CHECK(out1 == skg::testing::read_file(dir.path("out2.jsonl")));
  CHECK(out1.find("\"id\":\"j1\"") != std::string::npos);

  // Inputs unchanged.
  CHECK(skg::testing::read_file(dir.path("corpus.jsonl")) == corpus_before);
  CHECK(skg::testing::read_file(dir.path("jobs.jsonl")) == jobs_before);
}

TEST_CASE("make-instances honors the seed") {
  skg::testing::TempDir dir;
  skg::save_corpus(skg::testing::fixture_corpus(15), dir.path("corpus.jsonl"));
  std::string base = "make-instances --corpus " + dir.path("corpus.jsonl") +
                     " --kind imagination --dropout 0.3 " + data_flag();
  CHECK(run_cli(base + " --seed 11 --out " + dir.path("a.jsonl"), dir.root())
            .exit_code == 0);
  CHECK(run_cli(base + " --seed 11 --out " + dir.path("b.jsonl"), dir.root())
            .exit_code == 0);
  CHECK(run_cli(base + " --seed 12 --out " + dir.path("c.jsonl"), dir.root())
            .exit_code == 0);
  std::string a = skg::testing::read_file(dir.path("a.jsonl"));
  CHECK(a == skg::testing::read_file(dir.path("b.jsonl")));
  CHECK(a != skg::testing::read_file(dir.path("c.jsonl")));
}

TEST_CASE("config layering: flags beat environment beats config file") {
  skg::testing::TempDir dir;
  skg::save_corpus(skg::testing::fixture_corpus(10), dir.path("corpus.jsonl"));
  {
    std::ofstream config(dir.path("skg.ini"));
    config << "seed=5\n";
  }
  auto instances = [&](const std::string& prefix, const std::string& extra,
                       const std::string& out) {
    std::string command = prefix + " " + skg::testing::cli_bin() +
                          " make-instances --corpus " +
                          dir.path("corpus.jsonl") +
                          " --kind imagination --config " +
                          dir.path("skg.ini") + " " + data_flag() + " " +
                          extra + " --out " + dir.path(out) +
                          " >/dev/null 2>&1";
    REQUIRE(std::system(command.c_str()) == 0);
    return skg::testing::read_file(dir.path(out));
  };
  std::string from_config = instances("", "", "config.jsonl");
  std::string from_seed5 = instances("", "--seed 5", "flag5.jsonl");
  CHECK(from_config == from_seed5);  // config supplied the seed

  std::string from_env = instances("SKG_SEED=7", "", "env.jsonl");
  std::string from_seed7 = instances("", "--seed 7", "flag7.jsonl");
  CHECK(from_env == from_seed7);      // env beats config
  CHECK(from_env != from_config);

  std::string flag_wins = instances("SKG_SEED=7", "--seed 5", "both.jsonl");
  CHECK(flag_wins == from_config);    // flag beats env
}

TEST_CASE("map-vg, filter-overlap and evaluate round trip") {
  skg::testing::TempDir dir;
  {
    std::ofstream vg(dir.path("vg.jsonl"));
    vg << R"json({"image_id":"img1","triples":[{"subject":"man","predicate":"throw","object":"ball","is_verb":true},{"subject":"man","predicate":"with","object":"glove"}]})json"
       << "\n"
       << R"json({"image_id":"img2","triples":[{"subject":"cup","predicate":"on","object":"table"},{"subject":"dog","predicate":"have","object":"ear"}]})json"
       << "\n";
  }
  RunOutcome mapped = run_cli("map-vg --in " + dir.path("vg.jsonl") +
                                  " --out " + dir.path("visual.jsonl") + " " +
                                  data_flag(),
                              dir.root());
  CHECK(mapped.exit_code == 0);
  std::vector<skg::CorpusRecord> visual =
      skg::load_corpus(dir.path("visual.jsonl"));
  // img2 is disconnected and splits into two components.
  CHECK(visual.size() == 3);

  {
    std::ofstream forbidden(dir.path("forbidden.jsonl"));
    forbidden << R"json(["man","throw","ball"])json" << "\n";
  }
  RunOutcome filtered = run_cli(
      "filter-overlap --corpus " + dir.path("visual.jsonl") + " --forbidden " +
          dir.path("forbidden.jsonl") + " --out " + dir.path("kept.jsonl"),
      dir.root());
  CHECK(filtered.exit_code == 0);
  CHECK(skg::load_corpus(dir.path("kept.jsonl")).size() == 2);
  CHECK(filtered.stderr_text.find("removed 1") != std::string::npos);
}

TEST_CASE("imagine and verbalize subcommands answer request files") {
  skg::testing::TempDir dir;
  skg::save_corpus(skg::testing::fixture_corpus(30), dir.path("corpus.jsonl"));
  {
    std::ofstream requests(dir.path("imagine.jsonl"));
    requests << R"json({"id":"q1","concepts":["dog","ball"]})json" << "\n";
  }
  RunOutcome imagined = run_cli(
      "imagine --requests " + dir.path("imagine.jsonl") + " --corpus " +
          dir.path("corpus.jsonl") + " --out " + dir.path("graphs.jsonl") +
          " " + data_flag(),
      dir.root());
  CHECK(imagined.exit_code == 0);
  std::string graphs = skg::testing::read_file(dir.path("graphs.jsonl"));
  CHECK(graphs.find("\"penman\"") != std::string::npos);

  {
    std::ofstream requests(dir.path("verbalize.jsonl"));
    requests << R"json({"id":"q1","concepts":["man","bottle"],"penman":"(z0 / hold :ARG0 (z1 / man) :ARG1 (z2 / bottle))"})json"
             << "\n";
  }
  RunOutcome verbalized = run_cli(
      "verbalize --requests " + dir.path("verbalize.jsonl") + " --out " +
          dir.path("sentences.jsonl"),
      dir.root());
  CHECK(verbalized.exit_code == 0);
  CHECK(skg::testing::read_file(dir.path("sentences.jsonl"))
            .find("A man holds a bottle.") != std::string::npos);
}
