#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path work_dir() {
  const auto dir = fs::temp_directory_path() / "ucpbench_cli_tests";
  fs::create_directories(dir);
  return dir;
}

RunResult run(const std::string& args) {
  const auto dir = work_dir();
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd = std::string(UCPBENCH_BIN) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto path = work_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

const std::string kZeros13 = "0,0,0,0,0,0,0,0,0,0,0,0,0";
const std::string kZeros8 = "0,0,0,0,0,0,0,0";

// Strips the one run-dependent line from a report for byte comparison.
std::string without_timestamp(const std::string& text) {
  std::stringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("generated_at") == std::string::npos) out += line + "\n";
  return out;
}

}  // namespace

TEST_CASE("compute-size full and no-ef modes") {
  const auto full = run("compute-size --actors 0,0,1 --usecases 1,0,0 --tcf " +
                        kZeros13 + " --ef " + kZeros8 + " --mode full");
  CHECK(full.exit_code == 0);
  CHECK(full.out.find("ucp   6.72") != std::string::npos);

  const auto no_ef = run("compute-size --actors 0,0,1 --usecases 1,0,0 --tcf " +
                         kZeros13 + " --mode no-ef");
  CHECK(no_ef.exit_code == 0);
  CHECK(no_ef.out.find("ucp   4.80") != std::string::npos);

  const auto missing_ef = run("compute-size --actors 0,0,1 --usecases 1,0,0 --tcf " +
                              kZeros13 + " --mode full");
  CHECK(missing_ef.exit_code == 1);

  const auto bad_rating = run("compute-size --actors 0,0,1 --usecases 1,0,0 --tcf " +
                              kZeros13 + " --ef 6,0,0,0,0,0,0,0 --mode full");
  CHECK(bad_rating.exit_code == 1);

  const auto bad_arity =
      run("compute-size --actors 0,0 --usecases 1,0,0 --tcf " + kZeros13 +
          " --mode no-ef");
  CHECK(bad_arity.exit_code == 1);
}

TEST_CASE("generate writes deterministic dataset files") {
  const auto dir = work_dir();
  const auto a = (dir / "gen_a.csv").string();
  const auto b = (dir / "gen_b.csv").string();
  const auto ra = run("generate --profile ds1 --seed 7 --out " + a);
  CHECK(ra.exit_code == 0);
  CHECK(ra.out.find("\"n\": 45") != std::string::npos);
  const auto rb = run("generate --profile ds1 --seed 7 --out " + b);
  CHECK(rb.exit_code == 0);
  CHECK(slurp(a) == slurp(b));

  // Header + 45 rows.
  int lines = 0;
  std::stringstream ss(slurp(a));
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 46);

  const auto unknown = run("generate --profile ds9 --out " + a);
  CHECK(unknown.exit_code == 1);
}

TEST_CASE("estimate on baselines and m4") {
  const auto train = write_file(
      "train5.csv",
      "id,env1,env2,env3,env4,env5,env6,env7,env8,ucp,effort\n"
      "p1,3,3,3,3,3,3,3,3,100,2000\n"
      "p2,2,3,3,3,3,3,3,3,120,2500\n"
      "p3,4,3,3,3,3,3,3,3,90,1900\n"
      "p4,3,2,3,3,3,3,3,3,150,3100\n"
      "p5,3,4,3,3,3,3,3,3,80,1500\n");

  const auto karner = run("estimate --model karner --train " + train.string() +
                          " --env 0,0,0,0,0,0,0,0 --ucp 100");
  CHECK(karner.exit_code == 0);
  CHECK(karner.out.find("effort        2000.00") != std::string::npos);

  const auto sw = run("estimate --model sw --train " + train.string() +
                      " --env 3,3,3,3,3,3,3,3 --ucp 100");
  CHECK(sw.exit_code == 0);
  CHECK(sw.out.find("effort        2000.00") != std::string::npos);

  // Mirrored-pair construction: h = 22, leave-one-out correlation 0.6, the
  // nearest analogy to the query has productivity 34.
  const auto m4_train = write_file(
      "m4.csv",
      "id,env1,env2,env3,env4,env5,env6,env7,env8,ucp,effort\n"
      "a,0,0,0,0,0,0,0,0,10,260\n"
      "b,1,0,0,0,0,0,0,0,10,340\n"
      "c,5,5,5,5,5,5,5,5,10,180\n"
      "d,4,5,5,5,5,5,5,5,10,100\n");
  const auto m4 = run("estimate --model m4 --train " + m4_train.string() +
                      " --env 2,0,0,0,0,0,0,0 --ucp 100");
  CHECK(m4.exit_code == 0);
  CHECK(m4.out.find("productivity  29.20") != std::string::npos);
  CHECK(m4.out.find("effort        2920.00") != std::string::npos);

  const auto missing = run("estimate --model karner --train /nonexistent.csv "
                           "--env 0,0,0,0,0,0,0,0 --ucp 100");
  CHECK(missing.exit_code == 2);

  const auto bad_model = run("estimate --model m9 --train " + train.string() +
                             " --env 0,0,0,0,0,0,0,0 --ucp 100");
  CHECK(bad_model.exit_code == 1);
  CHECK(bad_model.err.find("karner") != std::string::npos);  // catalog listed
}

TEST_CASE("evaluate produces reports and is deterministic") {
  const auto dir = work_dir();
  const auto data = dir / "eval_data.csv";
  REQUIRE(run("generate --profile ds2 --n 20 --seed 11 --out " + data.string())
              .exit_code == 0);

  const auto out1 = dir / "reports1";
  const auto out2 = dir / "reports2";
  const std::string models = "karner,sw,m2,m4";
  const auto r1 = run("evaluate --data " + data.string() + " --models " + models +
                      " --seed 5 --mc-runs 200 --out " + out1.string());
  CHECK(r1.exit_code == 0);
  CHECK(r1.out.find("karner") != std::string::npos);
  const auto r2 = run("evaluate --data " + data.string() + " --models " + models +
                      " --seed 5 --mc-runs 200 --out " + out2.string());
  CHECK(r2.exit_code == 0);

  for (const std::string m : {"karner", "sw", "m2", "m4"}) {
    const auto f1 = out1 / ("report_" + m + ".json");
    const auto f2 = out2 / ("report_" + m + ".json");
    REQUIRE(fs::exists(f1));
    REQUIRE(fs::exists(f2));
    CHECK(without_timestamp(slurp(f1)) == without_timestamp(slurp(f2)));
  }

  const auto unknown = run("evaluate --data " + data.string() + " --models m9 --out " +
                           out1.string());
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("m1") != std::string::npos);
}

TEST_CASE("compare consumes evaluation reports") {
  const auto dir = work_dir();
  const auto data = dir / "cmp_data.csv";
  REQUIRE(run("generate --profile ds2 --n 24 --seed 3 --out " + data.string())
              .exit_code == 0);
  const auto out = dir / "cmp_reports";
  REQUIRE(run("evaluate --data " + data.string() +
              " --models karner,sw,m4 --seed 5 --mc-runs 100 --out " + out.string())
              .exit_code == 0);

  const auto cmp_out = dir / "comparison.json";
  const auto cmp = run("compare " + (out / "report_karner.json").string() + " " +
                       (out / "report_sw.json").string() + " " +
                       (out / "report_m4.json").string() + " --out " +
                       cmp_out.string());
  CHECK(cmp.exit_code == 0);
  REQUIRE(fs::exists(cmp_out));
  const auto text = slurp(cmp_out);
  CHECK(text.find("scott_knott") != std::string::npos);
  CHECK(text.find("win_tie_loss") != std::string::npos);

  // Fold ids must match across reports.
  const auto other = dir / "cmp_data2.csv";
  REQUIRE(run("generate --profile ds2 --n 24 --seed 4 --out " + other.string())
              .exit_code == 0);
  const auto out_b = dir / "cmp_reports_b";
  REQUIRE(run("evaluate --data " + other.string() +
              " --models karner --seed 5 --mc-runs 100 --out " + out_b.string())
              .exit_code == 0);
  // Same generator profile/ids; alter ids to provoke the mismatch.
  auto tampered = slurp(out_b / "report_karner.json");
  const auto pos = tampered.find("ds2-0");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 5, "xs2-0");
  write_file("tampered.json", tampered);
  const auto bad = run("compare " + (out / "report_sw.json").string() + " " +
                       (work_dir() / "tampered.json").string());
  CHECK(bad.exit_code == 2);
}

TEST_CASE("UCPBENCH_SEED is honored only without --seed") {
  const auto dir = work_dir();
  const auto with_env = dir / "env_seed.csv";
  const auto with_flag = dir / "flag_seed.csv";
  const auto baseline = dir / "plain_seed.csv";

  const std::string env_prefix = "UCPBENCH_SEED=99 ";
  CHECK(std::system((env_prefix + UCPBENCH_BIN + " generate --profile ds2 --n 8 --out " +
                     with_env.string() + " > /dev/null 2>&1")
                        .c_str()) == 0);
  REQUIRE(run("generate --profile ds2 --n 8 --seed 99 --out " + baseline.string())
              .exit_code == 0);
  CHECK(slurp(with_env) == slurp(baseline));

  CHECK(std::system((env_prefix + UCPBENCH_BIN + " generate --profile ds2 --n 8 "
                     "--seed 7 --out " +
                     with_flag.string() + " > /dev/null 2>&1")
                        .c_str()) == 0);
  REQUIRE(run("generate --profile ds2 --n 8 --seed 7 --out " + dir.string() +
              "/flag_ref.csv")
              .exit_code == 0);
  CHECK(slurp(with_flag) == slurp(dir / "flag_ref.csv"));
  CHECK(slurp(with_flag) != slurp(with_env));
}

TEST_CASE("config file supplies defaults") {
  const auto dir = work_dir();
  const auto cfg = write_file("run.cfg",
                              "# benchmark defaults\n"
                              "seed = 13\n"
                              "mc_runs = 100\n"
                              "models = karner,sw\n");
  const auto data = dir / "cfg_data.csv";
  REQUIRE(run("generate --profile ds2 --n 12 --seed 2 --out " + data.string())
              .exit_code == 0);
  const auto out = dir / "cfg_reports";
  const auto r = run("evaluate --data " + data.string() + " --config " +
                     cfg.string() + " --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "report_karner.json"));
  CHECK(fs::exists(out / "report_sw.json"));
  CHECK_FALSE(fs::exists(out / "report_m1.json"));
  CHECK(slurp(out / "report_karner.json").find("\"seed\": 13") != std::string::npos);

  const auto bad_cfg = write_file("bad.cfg", "bogus_key = 1\n");
  const auto rb = run("evaluate --data " + data.string() + " --config " +
                      bad_cfg.string() + " --out " + out.string());
  CHECK(rb.exit_code == 1);
}
