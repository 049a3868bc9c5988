// Copyright 2026 The fgrain Authors.
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

#include <cstdlib>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_util.hpp"

using fgrain::cli::RunConfig;
using fgrain::testing::data_path;
using fgrain::testing::TempDir;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fgrain::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> pipeline_flags() {
  return {"--img", data_path("synth_img.fgrn").string(), "--txt",
          data_path("synth_txt.fgrn").string(), "--units", data_path("synth_units.fgrn").string()};
}

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("eval prints the config echo and an accuracy line") {
  auto r = run(with({"eval", "--sets", data_path("synth10.cset").string(), "--metric", "fclip"},
                    pipeline_flags()));
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 12);
  auto cfg = fgrain::cli::parse_config_header(ls[0]);
  CHECK(cfg.subcommand == "eval");
  CHECK(cfg.metric == "fclip");
  auto summary = nlohmann::json::parse(ls[1]);
  CHECK(summary["kind"] == "eval");
  CHECK(summary["correct"] == 7);
  CHECK(summary["accuracyPct"].get<double>() == 70.0);
}

TEST_CASE("output files carry a header that round-trips to the run config") {
  TempDir tmp;
  const auto out = (tmp / "m.jsonl").string();
  auto r = run({"filter", "--scores", data_path("scores10.jsonl").string(), "--rate", "30",
                "--metric", "fclip", "--out", out});
  REQUIRE(r.code == 0);
  auto ls = lines(fgrain::testing::slurp(out));
  REQUIRE(ls.size() == 12);
  auto cfg = fgrain::cli::parse_config_header(ls[0]);
  CHECK(fgrain::cli::config_header(cfg) == ls[0]);
  CHECK(cfg.rate == 30.0);
  CHECK(cfg.output == out);
  CHECK(cfg.inputs.at("scores") == data_path("scores10.jsonl").string());
  std::size_t removed = 0;
  for (std::size_t i = 2; i < ls.size(); ++i) {
    removed += nlohmann::json::parse(ls[i])["status"] == "removed";
  }
  CHECK(removed == 3);
}

TEST_CASE("config header round trip for every optional field") {
  RunConfig c;
  c.subcommand = "ablate";
  c.inputs = {{"sets", "a.cset"}, {"pool", "p.fgrn"}};
  c.metric = "fclip";
  c.variant = "np";
  c.w = 1.0;
  c.clamp_negative = false;
  c.rate = 0.25;
  c.seed = 18446744073709551615ull;
  c.alpha = 0.3;
  c.batch_size = 4;
  c.k = 10;
  c.bins = 20;
  c.epochs = 3;
  c.hold_out_every = 10;
  c.dataset = "d";
  c.model_tag = "m";
  c.embed_url = "http://x";
  c.output = "o";
  c.jobs = 3;
  CHECK(fgrain::cli::parse_config_header(fgrain::cli::config_header(c)) == c);
  CHECK(fgrain::cli::parse_config_header("# " + fgrain::cli::config_header(c)) == c);
}

TEST_CASE("unknown subcommand is a usage error") {
  auto r = run({"frobnicate"});
  CHECK(r.code == 1);
  CHECK(r.err.find("unknown subcommand 'frobnicate'") != std::string::npos);
  CHECK(r.err.find("usage: fgrain") != std::string::npos);
  CHECK(run({}).code == 1);
}

TEST_CASE("stochastic subcommands require a seed") {
  auto r = run(with({"ablate", "--sets", data_path("synth10.cset").string(), "--pool",
                     data_path("synth_pool.fgrn").string(), "--rate", "0.5"},
                    pipeline_flags()));
  CHECK(r.code == 1);
  CHECK(r.err.find("--seed") != std::string::npos);
  auto f = run({"filter", "--scores", data_path("scores10.jsonl").string(), "--rate", "30",
                "--metric", "random"});
  CHECK(f.code == 1);
}

TEST_CASE("mutually exclusive and unknown flags are rejected") {
  auto r = run({"tag", "--text", "a dog", "--input", "x.txt"});
  CHECK(r.code == 1);
  auto d = run({"rankdiff", "--scores", "a", "--f-scores", "b", "--c-scores", "c"});
  CHECK(d.code == 1);
  // --jobs is offered only where work runs in parallel.
  CHECK(run({"filter", "--scores", data_path("scores10.jsonl").string(), "--rate", "30",
             "--metric", "fclip", "--jobs", "2"})
            .code == 1);
}

TEST_CASE("data errors exit 2") {
  auto r = run(with({"eval", "--sets", "/nonexistent.cset"}, pipeline_flags()));
  CHECK(r.code == 2);
  CHECK(r.err.find("fgrain: error:") != std::string::npos);
  auto bad = run({"filter", "--scores", data_path("scores10.jsonl").string(), "--rate", "100",
                  "--metric", "fclip"});
  CHECK(bad.code == 2);
}

TEST_CASE("help exits 0") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("eval") != std::string::npos);
  auto s = run({"filter", "--help"});
  CHECK(s.code == 0);
  CHECK(s.out.find("--rate") != std::string::npos);
}

TEST_CASE("ablation output is deterministic across job counts") {
  auto base = with({"ablate", "--sets", data_path("synth50.cset").string(), "--pool",
                    data_path("synth_pool.fgrn").string(), "--rate", "0.5", "--seed", "4"},
                   pipeline_flags());
  auto a = run(with(base, {"--jobs", "1"}));
  auto b = run(with(base, {"--jobs", "3"}));
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  // Only the echoed jobs value differs.
  auto la = lines(a.out), lb = lines(b.out);
  REQUIRE(la.size() == lb.size());
  for (std::size_t i = 1; i < la.size(); ++i) CHECK(la[i] == lb[i]);
  CHECK(run(with(base, {"--jobs", "1"})).out == a.out);
}

TEST_CASE("tag prints one token per line") {
  auto r = run({"tag", "--text", "a dog on the grass"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "a\tDET\ndog\tNOUN\non\tADP\nthe\tDET\ngrass\tNOUN\n");
  auto u = run({"tag", "--text", "a dog on the grass", "--units", "np"});
  REQUIRE(u.code == 0);
  CHECK(u.out.find("the grass") != std::string::npos);
}

TEST_CASE("score, penalty, overlap and rankdiff run end to end") {
  TempDir tmp;
  const auto scores = (tmp / "s.jsonl").string();
  auto s = run(with({"score", "--manifest", data_path("pairs.jsonl").string(), "--out", scores},
                    pipeline_flags()));
  REQUIRE(s.code == 0);
  auto ls = lines(fgrain::testing::slurp(scores));
  REQUIRE(ls.size() == 25);

  auto p = run(with({"penalty", "--manifest", data_path("pairs.jsonl").string(), "--batch-size",
                     "8"},
                    pipeline_flags()));
  REQUIRE(p.code == 0);
  CHECK(nlohmann::json::parse(lines(p.out)[1])["batches"] == 3);

  const auto ma = (tmp / "a.jsonl").string(), mb = (tmp / "b.jsonl").string();
  REQUIRE(run({"filter", "--scores", scores, "--rate", "50", "--metric", "fclip", "--out", ma})
              .code == 0);
  REQUIRE(run({"filter", "--scores", scores, "--rate", "50", "--metric", "clip", "--out", mb})
              .code == 0);
  auto o = run({"overlap", "--a", ma, "--b", mb});
  REQUIRE(o.code == 0);
  auto ov = nlohmann::json::parse(lines(o.out)[1]);
  CHECK(ov["kind"] == "overlap");
  CHECK(ov["overlap"].get<double>() >= 0.0);

  auto d = run({"rankdiff", "--scores", scores, "--k", "3"});
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(lines(d.out)[1])["kind"] == "rank-diff");
}

TEST_CASE("the installed binary honours the exit-code contract") {
  const std::string exe = FGRAIN_CLI_EXE;
  CHECK(WEXITSTATUS(std::system((exe + " frobnicate 2>/dev/null").c_str())) == 1);
  CHECK(WEXITSTATUS(std::system((exe + " --help >/dev/null").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system(
            (exe + " filter --scores /nonexistent --rate 30 --metric clip 2>/dev/null").c_str())) ==
        2);
}
