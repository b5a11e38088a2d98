#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <json.hpp>

#include "recor/scenario.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;  // stdout and stderr together
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RECOR_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int st = pclose(pipe);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const char* name) {
  const fs::path p = fs::temp_directory_path() / "recor_cli_test" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("compute on cubic data") {
  const auto dir = scratch("compute");
  {
    std::ofstream f(dir / "cube.csv");
    f << "x,y,label\n";
    for (int i = 1; i <= 30; ++i) f << i * 0.1 << "," << i * i * i * 0.001 << ",p" << i << "\n";
  }
  const auto r = run("compute " + (dir / "cube.csv").string() +
                     " --x x --y y --measures rearrangement,pearson --format csv");
  CHECK(r.status == 0);
  CHECK(r.out.find("rearrangement,1\n") != std::string::npos);
  const auto at = r.out.find("pearson,");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(r.out.substr(at + 8)) < 1.0);
}

TEST_CASE("compute on a line gives +1 for every signed measure") {
  const auto dir = scratch("line");
  {
    std::ofstream f(dir / "line.csv");
    f << "x,y\n";
    for (int i = 0; i < 20; ++i) f << i << "," << 2 * i + 1 << "\n";
  }
  const auto r = run("compute " + (dir / "line.csv").string() +
                     " --x x --y y --measures all --format json");
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["scores"].size() == 9);
  for (const auto& s : j["scores"]) {
    if (s["signed"].get<bool>() && s["measure"] != "additivity" && s["measure"] != "concordance") {
      CAPTURE(s["measure"].get<std::string>());
      CHECK(s["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("usage and contract errors exit 2") {
  const auto dir = scratch("errors");
  std::ofstream(dir / "d.csv") << "a,b\n1,2\n2,oops\n3,5\n4,4\n";
  const std::string file = (dir / "d.csv").string();

  auto r = run("compute " + file + " --x a --y nope");
  CHECK(r.status == 2);
  CHECK(r.out.find("available columns: a, b") != std::string::npos);

  r = run("compute " + file + " --x a --y b --missing error");
  CHECK(r.status == 2);
  CHECK(r.out.find(":3:") != std::string::npos);
  CHECK(r.out.find("'b'") != std::string::npos);

  CHECK(run("compute " + file + " --x a --y b").status == 0);
  CHECK(run("compute " + file + " --x a --y b --measures nonsense").status == 2);
  CHECK(run("bench --r-grid 0:2:0.1 -o " + (dir / "b").string()).status == 2);
  CHECK(run("bench --n 1 -o " + (dir / "b").string()).status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("").status == 2);
}

TEST_CASE("nist exit codes") {
  const auto empty = scratch("nist_empty");
  const auto r = run("nist --dir " + empty.string());
  CHECK(r.status == 3);
  CHECK(r.out.find("no datasets found") != std::string::npos);

  const auto out = scratch("nist_out");
  const auto ok = run("nist --measures pearson -o " + out.string());
  CHECK(ok.status == 0);
  CHECK(count_lines(slurp(out / "nist_scores.csv")) == 1 + 5);

  const auto partial = scratch("nist_partial");
  fs::copy_file(fs::path(RECOR_DATA_DIR) / "nist" / "Thurber.dat", partial / "Thurber.dat");
  std::ofstream(partial / "Broken.dat") << "garbage\n";
  const auto pr = run("nist --dir " + partial.string() + " -o " + out.string());
  CHECK(pr.status == 0);
  CHECK(pr.out.find("Broken.dat") != std::string::npos);

  std::ofstream(empty / "Broken.dat") << "garbage\n";
  CHECK(run("nist --dir " + empty.string()).status == 3);
}

TEST_CASE("scenario listing") {
  auto r = run("scenarios --family monotone --format csv");
  REQUIRE(r.status == 0);
  CHECK(count_lines(r.out) == 1 + 50);
  r = run("scenarios --family non_monotone --format csv");
  CHECK(count_lines(r.out) == 1 + 16);

  const auto dir = scratch("scen");
  r = run("scenarios --family all --format json -o " + (dir / "all.json").string());
  REQUIRE(r.status == 0);
  const auto back = recor::load_scenario_file((dir / "all.json").string());
  CHECK(back.size() == 66);
}

TEST_CASE("bench writes identical files for identical flags") {
  const auto a = scratch("bench_a");
  const auto b = scratch("bench_b");
  const std::string flags =
      " --family non_monotone --n 64 --reps 2 --r-grid 0:1:0.25 --include-hsic";
  const auto ra = run("bench" + flags + " --threads 1 -o " + a.string());
  const auto rb = run("bench" + flags + " --threads 3 -o " + b.string());
  REQUIRE(ra.status == 0);
  REQUIRE(rb.status == 0);
  CHECK(ra.out == rb.out);
  for (const char* f : {"scores.csv", "scores.json", "accuracy.csv", "accuracy.json"}) {
    CAPTURE(f);
    CHECK(slurp(a / f).size() > 0);
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(count_lines(slurp(a / "scores.csv")) == 1 + 16 * 9 * 5 * 2);

  const auto custom = scratch("bench_custom");
  std::ofstream(custom / "s.txt") << "hump | sin(pi*x) | 0 | 1 | non_monotone\n";
  const auto rc = run("bench --scenario-file " + (custom / "s.txt").string() +
                      " --n 32 --reps 1 --r-grid 0.5:1:0.5 --measures r#,xi -o " +
                      (custom / "out").string());
  CHECK(rc.status == 0);
  CHECK(count_lines(slurp(custom / "out" / "scores.csv")) == 1 + 1 * 2 * 2 * 1);
}

TEST_CASE("an undefined measure on valid input is a data error") {
  const auto dir = scratch("data_error");
  std::ofstream(dir / "two.csv") << "a,b\n1,2\n2,1\n";
  const auto r = run("compute " + (dir / "two.csv").string() + " --x a --y b --measures xi");
  CHECK(r.status == 3);
  CHECK(r.out.find("insufficient sample") != std::string::npos);
  CHECK(run("compute " + (dir / "two.csv").string() + " --x a --y b --measures r#").status == 0);
}
