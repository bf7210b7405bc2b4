// End-to-end checks of the command-line binary. The path to the built
// executable arrives as the first program argument.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_bin;

int run(const std::string& args) {
  const std::string cmd = g_bin + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) : path("/tmp/sc_cli_" + name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string& s) const { return (path / s).string(); }
};

}  // namespace

TEST_CASE("gen writes deterministic, well-formed dataset files") {
  TempDir t("gen");
  REQUIRE(run("gen --n 40 --p 5 --k-true 2 --seed 9 --out " + (t / "a")) == 0);
  REQUIRE(run("gen --n 40 --p 5 --k-true 2 --seed 9 --out " + (t / "b")) == 0);
  CHECK(slurp(t.path / "a/data.csv") == slurp(t.path / "b/data.csv"));
  CHECK(slurp(t.path / "a/truth.csv") == slurp(t.path / "b/truth.csv"));
  REQUIRE(run("gen --n 40 --p 5 --k-true 2 --seed 10 --out " + (t / "c")) == 0);
  CHECK(slurp(t.path / "a/data.csv") != slurp(t.path / "c/data.csv"));

  auto rows = parse_csv(t.path / "a/data.csv");
  REQUIRE(rows.size() == 41);
  REQUIRE(rows[0].size() == 6);
  CHECK(rows[0][0] == "x1");
  CHECK(rows[0][4] == "x5");
  CHECK(rows[0][5] == "label");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK((rows[i][5] == "1" || rows[i][5] == "-1"));
  }
  auto truth = parse_csv(t.path / "a/truth.csv");
  REQUIRE(truth.size() == 6);
  CHECK(truth[0] == std::vector<std::string>{"schema_version", "feature_index", "weight"});
  int nz = 0;
  for (std::size_t i = 1; i < truth.size(); ++i) nz += truth[i][2] != "0";
  CHECK(nz == 2);
}

TEST_CASE("fit exit codes and report schema") {
  TempDir t("fit");
  REQUIRE(run("gen --n 60 --p 8 --k-true 2 --seed 4 --label-model sign --out " +
              (t / "ds")) == 0);
  const std::string data = " --data " + (t / "ds") + "/data.csv";

  CHECK(run("fit" + data + " --method sparse-logistic --k 2 --out " + (t / "f1")) == 0);
  auto rep = parse_csv(t.path / "f1/fit_report.csv");
  REQUIRE(rep.size() == 2);
  REQUIRE(rep[0].size() == 13);
  CHECK(rep[0][0] == "schema_version");
  CHECK(rep[1][0] == "1");
  CHECK(rep[1][1] == "sparse-logistic");
  CHECK(rep[1][10] == "1");  // certified
  CHECK(rep[1][11] == "2");  // support_size == k
  auto wrows = parse_csv(t.path / "f1/fit_weights.csv");
  CHECK(wrows.size() == 9);

  // determinism of the full fit artifact (timing column aside)
  CHECK(run("fit" + data + " --method sparse-logistic --k 2 --out " + (t / "f1b")) == 0);
  auto repb = parse_csv(t.path / "f1b/fit_report.csv");
  REQUIRE(repb.size() == 2);
  for (std::size_t c = 0; c < rep[1].size(); ++c) {
    if (c == 9) continue;  // wall_time_sec
    CHECK(rep[1][c] == repb[1][c]);
  }
  CHECK(slurp(t.path / "f1/fit_weights.csv") == slurp(t.path / "f1b/fit_weights.csv"));

  // huge lambda -> empty support, converged
  CHECK(run("fit" + data + " --method lasso-logistic --lambda 1e6 --out " + (t / "f2")) == 0);
  auto rep2 = parse_csv(t.path / "f2/fit_report.csv");
  CHECK(rep2[1][11] == "0");

  CHECK(run("fit" + data + " --method bogus --k 2") != 0);
  CHECK(run("fit --data /tmp/sc_cli_missing.csv --method sparse-logistic --k 2") == 2);
  // budget exhaustion has its own exit status
  CHECK(run("fit" + data +
            " --method sparse-logistic --k 3 --max-cuts 1 --tol 1e-12 --gamma 10") == 3);
}

TEST_CASE("fit rejects malformed and single-class csv with parse context") {
  TempDir t("badcsv");
  {
    std::ofstream f(t / "ragged.csv");
    f << "x1,x2,label\n1.0,2.0,1\n3.0,1\n";
  }
  CHECK(run("fit --data " + (t / "ragged.csv") + " --method sparse-logistic --k 1") == 2);
  {
    std::ofstream f(t / "oneclass.csv");
    f << "x1,x2,label\n1.0,2.0,1\n3.0,4.0,1\n-1.0,0.5,1\n";
  }
  CHECK(run("fit --data " + (t / "oneclass.csv") + " --method sparse-logistic --k 1") == 1);
  {
    std::ofstream f(t / "zeroone.csv");
    f << "x1,label\n1.0,1\n-2.0,0\n1.5,1\n-0.5,0\n2.0,1\n-1.0,0\n";
  }
  CHECK(run("fit --data " + (t / "zeroone.csv") + " --method sparse-logistic --k 1") == 0);
}

TEST_CASE("sweep is deterministic and rows are internally consistent") {
  TempDir t("sweep");
  {
    std::ofstream f(t / "sweep.cfg");
    f << "[sweep]\n"
         "methods = sparse-logistic,lasso-logistic\n"
         "grid = n\ngrid_values = 50,90\nseeds = 2\n"
         "p = 12\nk_true = 2\nk = 2\nsnr = -1\nlabel_model = sign\n"
         "out = " << (t / "s1.csv") << "\n";
  }
  REQUIRE(run("sweep --config " + (t / "sweep.cfg") + " --workers 3") == 0);
  auto rows = parse_csv(t.path / "s1.csv");
  REQUIRE(rows.size() == 1 + 2 * 2 * 2);
  REQUIRE(rows[0].size() == 19);
  CHECK(rows[0][0] == "schema_version");
  CHECK(rows[0][18] == "error");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 19);
    CHECK(rows[i][18] == "");  // no partial failures here
    // a_count + f_count == support_size
    CHECK(std::stoi(rows[i][8]) + std::stoi(rows[i][9]) == std::stoi(rows[i][10]));
    double auc = std::stod(rows[i][11]);
    CHECK(auc >= 0.0);
    CHECK(auc <= 1.0);
  }
  // deterministic merge order regardless of worker count, wall time excluded
  {
    std::ofstream f(t / "sweep2.cfg");
    f << "[sweep]\n"
         "methods = sparse-logistic,lasso-logistic\n"
         "grid = n\ngrid_values = 50,90\nseeds = 2\n"
         "p = 12\nk_true = 2\nk = 2\nsnr = -1\nlabel_model = sign\n"
         "out = " << (t / "s2.csv") << "\n";
  }
  REQUIRE(run("sweep --config " + (t / "sweep2.cfg") + " --workers 1") == 0);
  auto rows2 = parse_csv(t.path / "s2.csv");
  REQUIRE(rows2.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < 19; ++c) {
      if (c == 16) continue;  // wall_time_sec
      CHECK(rows[i][c] == rows2[i][c]);
    }
  }
}

TEST_CASE("theory command validates closed forms against monte carlo") {
  TempDir t("theory");
  {
    std::ofstream f(t / "th.cfg");
    f << "[theory]\nsamples = 150000\nrecovery_trials = 20\nseed = 3\n";
  }
  REQUIRE(run("theory --config " + (t / "th.cfg") + " --out " + (t / "out")) == 0);
  auto rows = parse_csv(t.path / "out/theory.csv");
  REQUIRE(rows.size() > 10);
  REQUIRE(rows[0].size() == 16);
  bool saw_mc = false, saw_recovery = false, saw_n0 = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    REQUIRE(r.size() == 16);
    const std::string& q = r[1];
    if (q == "orthant2" || q == "orthant3" || q == "mean_z") {
      saw_mc = true;
      double closed = std::stod(r[10]), est = std::stod(r[12]), se = std::stod(r[13]);
      CHECK(std::abs(closed - est) <= 4.0 * se + 1e-12);
    }
    if (q == "recovery") {
      saw_recovery = true;
      double freq = std::stod(r[15]);
      CHECK(freq >= 0.0);
      CHECK(freq <= 1.0);
    }
    if (q == "n0_threshold") {
      saw_n0 = true;
      CHECK(std::stol(r[9]) > 0);
    }
  }
  CHECK(saw_mc);
  CHECK(saw_recovery);
  CHECK(saw_n0);
  // determinism
  REQUIRE(run("theory --config " + (t / "th.cfg") + " --out " + (t / "out2")) == 0);
  CHECK(slurp(t.path / "out/theory.csv") == slurp(t.path / "out2/theory.csv"));
}

TEST_CASE("cv command writes a selected row") {
  TempDir t("cv");
  REQUIRE(run("gen --n 100 --p 8 --k-true 2 --seed 6 --label-model sign --out " +
              (t / "ds")) == 0);
  REQUIRE(run("cv --data " + (t / "ds") + "/data.csv --method sparse --seed 2 --out " +
              (t / "o1")) == 0);
  auto rows = parse_csv(t.path / "o1/cv.csv");
  REQUIRE(rows.size() > 2);
  REQUIRE(rows[0].size() == 8);
  int selected = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) selected += rows[i][7] == "1";
  CHECK(selected == 1);
  REQUIRE(run("cv --data " + (t / "ds") + "/data.csv --method sparse --seed 2 --out " +
              (t / "o2")) == 0);
  CHECK(slurp(t.path / "o1/cv.csv") == slurp(t.path / "o2/cv.csv"));
  REQUIRE(run("cv --data " + (t / "ds") + "/data.csv --method lasso --seed 2 --out " +
              (t / "o3")) == 0);
  auto lrows = parse_csv(t.path / "o3/cv.csv");
  CHECK(lrows.size() == 11);  // default 10-point path
  CHECK(run("cv --data " + (t / "ds") + "/data.csv --method nope") == 1);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 1;
  }
  g_bin = argv[1];
  doctest::Context ctx;
  return ctx.run();
}
