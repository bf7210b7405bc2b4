// Command-line front end. Talks to the library exclusively through the C API.
//
// Exit codes: 0 success (certified / converged), 1 usage or invalid input,
// 2 file I/O or parse failure, 3 iteration budget exhausted before the
// optimality certificate.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "sparseclf.h"

namespace {

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitBudget = 3;

int status_to_exit(sc_status st) {
  switch (st) {
    case SC_OK: return kExitOk;
    case SC_EPARSE:
    case SC_EIO: return kExitIo;
    case SC_EBUDGET: return kExitBudget;
    default: return kExitUsage;
  }
}

[[noreturn]] void die(sc_status st) {
  std::fprintf(stderr, "error: %s\n", sc_last_error());
  std::exit(status_to_exit(st));
}

void check(sc_status st) {
  if (st != SC_OK) die(st);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Flat key-value config with [section] headers and '#' comments.
// Keys are stored as "section.key".
std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open config %s\n", path.c_str());
    std::exit(kExitIo);
  }
  std::map<std::string, std::string> kv;
  std::string line, section;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: %s:%d: expected key=value\n", path.c_str(), lineno);
      std::exit(kExitUsage);
    }
    std::string key = trim(line.substr(0, eq));
    kv[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
  }
  return kv;
}

using Config = std::map<std::string, std::string>;

std::string cfg_str(const Config& c, const std::string& key, const std::string& dflt) {
  auto it = c.find(key);
  return it == c.end() ? dflt : it->second;
}
double cfg_num(const Config& c, const std::string& key, double dflt) {
  auto it = c.find(key);
  return it == c.end() ? dflt : std::stod(it->second);
}
std::vector<double> cfg_list(const Config& c, const std::string& key,
                             const std::vector<double>& dflt) {
  auto it = c.find(key);
  if (it == c.end()) return dflt;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

std::ofstream open_out(const std::filesystem::path& p) {
  if (!p.parent_path().empty()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) {
    std::fprintf(stderr, "error: cannot write %s\n", p.string().c_str());
    std::exit(kExitIo);
  }
  return out;
}

struct GenParams {
  int n = 100, p = 10, k_true = 3;
  double rho = 0.0, snr = -1.0, sigma2 = 0.0;
  std::string label_model = "logistic", truth_model = "pm1";
  std::uint64_t seed = 0;
};

sc_dataset* generate_or_die(const GenParams& g) {
  sc_dataset* d = nullptr;
  check(sc_dataset_generate(g.n, g.p, g.k_true, g.rho, g.snr, g.label_model.c_str(),
                            g.truth_model.c_str(), g.sigma2, g.seed, &d));
  return d;
}

void write_truth_csv(sc_dataset* d, const std::filesystem::path& path) {
  std::vector<double> wt(sc_dataset_p(d));
  check(sc_dataset_true_weights(d, wt.data()));
  auto out = open_out(path);
  out << "schema_version,feature_index,weight\n";
  for (std::size_t j = 0; j < wt.size(); ++j)
    out << kSchemaVersion << ',' << j << ',' << fmt(wt[j]) << '\n';
}

// ---- gen ----------------------------------------------------------------

int cmd_gen(const GenParams& g, const std::string& out_dir) {
  sc_dataset* d = generate_or_die(g);
  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  check(sc_dataset_save_csv(d, (dir / "data.csv").string().c_str()));
  write_truth_csv(d, dir / "truth.csv");
  std::printf("generated n=%d p=%d k_true=%d seed=%llu single_class=%d -> %s\n",
              sc_dataset_n(d), sc_dataset_p(d), g.k_true,
              static_cast<unsigned long long>(g.seed), sc_dataset_single_class(d),
              dir.string().c_str());
  sc_dataset_free(d);
  return kExitOk;
}

// ---- fit ----------------------------------------------------------------

int cmd_fit(const std::string& data_path, const std::string& method, int k,
            double gamma, double lambda, double tol, int max_cuts,
            const std::string& out_dir) {
  const bool sparse = method == "sparse-logistic" || method == "sparse-svm";
  const bool lasso = method == "lasso-logistic" || method == "lasso-svm";
  if (!sparse && !lasso) {
    std::fprintf(stderr, "error: unknown method '%s'\n", method.c_str());
    return kExitUsage;
  }
  const char* loss = (method == "sparse-svm" || method == "lasso-svm") ? "hinge" : "logistic";

  sc_dataset* d = nullptr;
  check(sc_dataset_load_csv(data_path.c_str(), &d));
  const int p = sc_dataset_p(d);

  std::vector<double> w(p);
  double b = 0.0, objective = 0.0;
  int cuts = 0, iterations = 0, certified = 1, support_size = 0;
  double wall = 0.0;
  std::vector<int> support(p, 0);
  sc_status st = SC_OK;

  if (sparse) {
    sc_fit* f = nullptr;
    st = sc_fit_sparse(d, k, gamma, loss, tol, max_cuts, 0.0, &f);
    if (st != SC_OK && st != SC_EBUDGET) die(st);
    check(sc_fit_weights(f, w.data()));
    check(sc_fit_support(f, support.data()));
    b = sc_fit_intercept(f);
    objective = sc_fit_objective(f);
    cuts = sc_fit_cuts(f);
    iterations = sc_fit_iterations(f);
    certified = sc_fit_certified(f);
    wall = sc_fit_walltime(f);
    for (int j = 0; j < p; ++j) support_size += support[j];
    sc_fit_free(f);
  } else {
    sc_lasso* f = nullptr;
    check(sc_lasso_fit(d, lambda, loss, &f));
    check(sc_lasso_weights(f, w.data()));
    b = sc_lasso_intercept(f);
    objective = sc_lasso_objective(f);
    support_size = sc_lasso_support_size(f);
    double wmax = 0.0;
    for (double v : w) wmax = std::max(wmax, std::fabs(v));
    for (int j = 0; j < p; ++j) support[j] = wmax > 0.0 && std::fabs(w[j]) > 1e-8 * wmax;
    sc_lasso_free(f);
  }

  std::filesystem::path dir(out_dir);
  {
    auto out = open_out(dir / "fit_report.csv");
    out << "schema_version,method,k,lambda,gamma,objective,intercept,cuts_used,"
           "iterations,wall_time_sec,certified,support_size,support\n";
    std::string supp;
    for (int j = 0; j < p; ++j)
      if (support[j]) supp += (supp.empty() ? "" : ";") + std::to_string(j);
    out << kSchemaVersion << ',' << method << ',' << (sparse ? k : 0) << ','
        << fmt(lasso ? lambda : 0.0) << ',' << fmt(sparse ? gamma : 0.0) << ','
        << fmt(objective) << ',' << fmt(b) << ',' << cuts << ',' << iterations << ','
        << fmt(wall) << ',' << certified << ',' << support_size << ',' << supp << '\n';
  }
  {
    auto out = open_out(dir / "fit_weights.csv");
    out << "schema_version,feature_index,weight\n";
    for (int j = 0; j < p; ++j)
      out << kSchemaVersion << ',' << j << ',' << fmt(w[j]) << '\n';
  }
  std::printf("%s: objective=%s support_size=%d certified=%d\n", method.c_str(),
              fmt(objective).c_str(), support_size, certified);
  sc_dataset_free(d);
  return (sparse && !certified) ? kExitBudget : kExitOk;
}

// ---- sweep --------------------------------------------------------------

struct SweepJob {
  std::string method;
  std::string grid_name;
  double grid_value = 0.0;
  std::uint64_t seed = 0;
  GenParams gen;
  int k = 0;
  double gamma = 1.0;
  double lambda_frac = 0.1;  // lasso: lambda = frac * lambda_max
  double tol = 0.0;
  int max_cuts = 0;
};

std::string run_sweep_job(const SweepJob& job) {
  std::ostringstream row;
  row << kSchemaVersion << ',' << job.method << ',' << job.grid_name << ','
      << fmt(job.grid_value) << ',' << job.seed << ',';
  auto finish_error = [&](const std::string& msg) {
    row << "0,0,0,0,0,0,0,0,0,0,0,0," << msg;
    return row.str();
  };

  sc_dataset* d = nullptr;
  sc_status st = sc_dataset_generate(job.gen.n, job.gen.p, job.gen.k_true, job.gen.rho,
                                     job.gen.snr, job.gen.label_model.c_str(),
                                     job.gen.truth_model.c_str(), job.gen.sigma2,
                                     job.gen.seed, &d);
  if (st != SC_OK) return finish_error(sc_last_error());
  if (sc_dataset_single_class(d)) {
    sc_dataset_free(d);
    return finish_error("single-class instance");
  }

  const int p = sc_dataset_p(d);
  std::vector<double> w(p), wt(p);
  double b = 0.0, objective = 0.0, wall = 0.0, lambda = 0.0;
  int cuts = 0, iterations = 0, certified = 1;

  const bool sparse = job.method.rfind("sparse", 0) == 0;
  const char* loss = job.method.find("svm") != std::string::npos ? "hinge" : "logistic";
  if (sparse) {
    sc_fit* f = nullptr;
    st = sc_fit_sparse(d, job.k, job.gamma, loss, job.tol, job.max_cuts, 0.0, &f);
    if (st != SC_OK && st != SC_EBUDGET) {
      std::string msg = sc_last_error();
      sc_dataset_free(d);
      return finish_error(msg);
    }
    sc_fit_weights(f, w.data());
    b = sc_fit_intercept(f);
    objective = sc_fit_objective(f);
    cuts = sc_fit_cuts(f);
    iterations = sc_fit_iterations(f);
    certified = sc_fit_certified(f);
    wall = sc_fit_walltime(f);
    sc_fit_free(f);
  } else {
    double grid2[2];
    st = sc_lambda_grid(d, loss, 2, grid2);
    if (st == SC_OK) {
      lambda = job.lambda_frac * grid2[0];
      sc_lasso* f = nullptr;
      st = sc_lasso_fit(d, lambda, loss, &f);
      if (st == SC_OK) {
        sc_lasso_weights(f, w.data());
        b = sc_lasso_intercept(f);
        objective = sc_lasso_objective(f);
        sc_lasso_free(f);
      }
    }
    if (st != SC_OK) {
      std::string msg = sc_last_error();
      sc_dataset_free(d);
      return finish_error(msg);
    }
  }

  int a_count = 0, f_count = 0;
  double auc_v = 0.0, mis = 0.0;
  sc_dataset_true_weights(d, wt.data());
  sc_recovery(w.data(), wt.data(), p, &a_count, &f_count);
  st = sc_eval(d, w.data(), b, &auc_v, &mis);
  if (st != SC_OK) {
    std::string msg = sc_last_error();
    sc_dataset_free(d);
    return finish_error(msg);
  }
  sc_dataset_free(d);

  row << job.k << ',' << fmt(sparse ? job.gamma : 0.0) << ',' << fmt(lambda) << ','
      << a_count << ',' << f_count << ',' << (a_count + f_count) << ',' << fmt(auc_v)
      << ',' << fmt(mis) << ',' << fmt(objective) << ',' << cuts << ',' << iterations
      << ',' << fmt(wall) << ',' << certified << ',';
  return row.str();
}

int cmd_sweep(const Config& cfg, int workers, const std::string& out_override,
              std::int64_t seed_override) {
  GenParams base;
  base.n = static_cast<int>(cfg_num(cfg, "sweep.n", 100));
  base.p = static_cast<int>(cfg_num(cfg, "sweep.p", 20));
  base.k_true = static_cast<int>(cfg_num(cfg, "sweep.k_true", 3));
  base.rho = cfg_num(cfg, "sweep.rho", 0.0);
  base.snr = cfg_num(cfg, "sweep.snr", -1.0);
  base.sigma2 = cfg_num(cfg, "sweep.sigma2", 0.0);
  base.label_model = cfg_str(cfg, "sweep.label_model", "logistic");
  base.truth_model = cfg_str(cfg, "sweep.truth_model", "pm1");

  const std::string grid_name = cfg_str(cfg, "sweep.grid", "n");
  if (grid_name != "n" && grid_name != "k") {
    std::fprintf(stderr, "error: sweep.grid must be 'n' or 'k'\n");
    return kExitUsage;
  }
  auto grid = cfg_list(cfg, "sweep.grid_values", {100});
  const int seeds = static_cast<int>(cfg_num(cfg, "sweep.seeds", 1));
  std::uint64_t seed0 = static_cast<std::uint64_t>(cfg_num(cfg, "sweep.seed0", 0));
  if (seed_override >= 0) seed0 = static_cast<std::uint64_t>(seed_override);

  std::vector<std::string> methods;
  {
    std::stringstream ss(cfg_str(cfg, "sweep.methods", "sparse-logistic"));
    std::string tok;
    while (std::getline(ss, tok, ',')) methods.push_back(tok);
  }
  for (const auto& m : methods) {
    if (m != "sparse-logistic" && m != "sparse-svm" && m != "lasso-logistic" &&
        m != "lasso-svm") {
      std::fprintf(stderr, "error: unknown sweep method '%s'\n", m.c_str());
      return kExitUsage;
    }
  }

  std::vector<SweepJob> jobs;
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    for (int s = 0; s < seeds; ++s) {
      for (const auto& m : methods) {
        SweepJob job;
        job.method = m;
        job.grid_name = grid_name;
        job.grid_value = grid[gi];
        job.gen = base;
        if (grid_name == "n") job.gen.n = static_cast<int>(grid[gi]);
        job.k = static_cast<int>(cfg_num(cfg, "sweep.k", base.k_true));
        if (grid_name == "k") job.k = static_cast<int>(grid[gi]);
        // one fresh instance per (grid point, seed); methods share it by seed
        job.seed = seed0 + 1000 * gi + static_cast<std::uint64_t>(s);
        job.gen.seed = job.seed;
        job.gamma = cfg_num(cfg, "sweep.gamma", 1.0);
        job.lambda_frac = cfg_num(cfg, "sweep.lambda_frac", 0.1);
        job.tol = cfg_num(cfg, "sweep.tol", 0.0);
        job.max_cuts = static_cast<int>(cfg_num(cfg, "sweep.max_cuts", 0));
        jobs.push_back(job);
      }
    }
  }

  std::vector<std::string> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      rows[i] = run_sweep_job(jobs[i]);
    }
  };
  const int nthreads = std::max(1, workers);
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::string out_path = out_override.empty()
                             ? cfg_str(cfg, "sweep.out", "sweep.csv")
                             : (std::filesystem::path(out_override) / "sweep.csv").string();
  auto out = open_out(out_path);
  out << "schema_version,method,grid_name,grid_value,seed,k,gamma,lambda,a_count,"
         "f_count,support_size,auc,misclass,objective,cuts_used,iterations,"
         "wall_time_sec,certified,error\n";
  for (const auto& r : rows) out << r << '\n';
  std::printf("sweep: %zu rows -> %s\n", rows.size(), out_path.c_str());
  return kExitOk;
}

// ---- theory -------------------------------------------------------------

int cmd_theory(const Config& cfg, const std::string& out_dir, std::int64_t seed_override) {
  const long samples = static_cast<long>(cfg_num(cfg, "theory.samples", 1000000));
  const int k = static_cast<int>(cfg_num(cfg, "theory.k", 2));
  const int p = static_cast<int>(cfg_num(cfg, "theory.p", 6));
  const int trials = static_cast<int>(cfg_num(cfg, "theory.recovery_trials", 200));
  auto sigma2s = cfg_list(cfg, "theory.sigma2", {0.0, 0.25, 1.0});
  auto rhos = cfg_list(cfg, "theory.rho", {-0.5, 0.0, 0.3, 0.7});
  std::uint64_t seed = static_cast<std::uint64_t>(cfg_num(cfg, "theory.seed", 1));
  if (seed_override >= 0) seed = static_cast<std::uint64_t>(seed_override);

  auto out = open_out(std::filesystem::path(out_dir) / "theory.csv");
  out << "schema_version,quantity,rho12,rho13,rho23,k,p,sigma2,ell,n,closed_form,"
         "lower_bound,mc_estimate,mc_stderr,samples,empirical_freq\n";
  auto row = [&](const std::string& quantity, double r12, double r13, double r23,
                 int kk, int pp, double s2, int ell, long n, double closed, double lb,
                 double est, double se, long ns, double freq) {
    out << kSchemaVersion << ',' << quantity << ',' << fmt(r12) << ',' << fmt(r13)
        << ',' << fmt(r23) << ',' << kk << ',' << pp << ',' << fmt(s2) << ',' << ell
        << ',' << n << ',' << fmt(closed) << ',' << fmt(lb) << ',' << fmt(est) << ','
        << fmt(se) << ',' << ns << ',' << fmt(freq) << '\n';
  };

  double v = 0, est = 0, se = 0;
  for (double r : rhos) {
    check(sc_orthant2(r, &v));
    check(sc_mc_orthant2(r, samples, seed, &est, &se));
    row("orthant2", r, 0, 0, 0, 0, 0, 0, 0, v, 0, est, se, samples, 0);
  }
  const double triples[][3] = {{0.0, 0.0, 0.0}, {0.3, 0.2, 0.1}, {0.5, 0.5, 0.5}};
  for (const auto& t : triples) {
    check(sc_orthant3(t[0], t[1], t[2], &v));
    check(sc_mc_orthant3(t[0], t[1], t[2], samples, seed + 1, &est, &se));
    row("orthant3", t[0], t[1], t[2], 0, 0, 0, 0, 0, v, 0, est, se, samples, 0);
  }
  for (double s2 : sigma2s) {
    for (int ell = 0; ell <= k; ++ell) {
      check(sc_q_of_ell(k, p, s2, ell, &v));
      row("q_of_ell", 0, 0, 0, k, p, s2, ell, 0, v, 0, 0, 0, 0, 0);
      double ez = 0, lb = 0;
      check(sc_mean_z_exact(k, p, s2, ell, &ez));
      if (ell < k) check(sc_mean_z_lower_bound(k, p, s2, ell, &lb));
      check(sc_mc_mean_z(k, p, s2, ell, samples, seed + 2 + ell, &est, &se));
      row("mean_z", 0, 0, 0, k, p, s2, ell, 0, ez, lb, est, se, samples, 0);
    }
  }
  // recovery frequency of the exhaustive size-k minimizer vs the failure tail
  for (double s2 : sigma2s) {
    long n0 = 0;
    check(sc_n0_threshold(k, p, s2, &n0));
    row("n0_threshold", 0, 0, 0, k, p, s2, 0, n0, static_cast<double>(n0), 0, 0, 0, 0, 0);
    for (long n : {n0, n0 + n0 / 2, 2 * n0}) {
      double tail = 0;
      check(sc_failure_tail(n, k, p, s2, &tail));
      int good = 0;
      for (int t = 0; t < trials; ++t) {
        sc_dataset* d = nullptr;
        check(sc_dataset_generate(static_cast<int>(n), p, k, 0.0, -1.0, "sign",
                                  "binary", s2, seed + 7000 + 31 * t, &d));
        std::vector<int> s(p);
        std::vector<double> wt(p);
        check(sc_brute_force_min(d, k, s.data()));
        check(sc_dataset_true_weights(d, wt.data()));
        bool exact = true;
        for (int j = 0; j < p; ++j)
          if ((s[j] != 0) != (wt[j] != 0.0)) exact = false;
        good += exact;
        sc_dataset_free(d);
      }
      row("recovery", 0, 0, 0, k, p, s2, 0, n, 1.0 - tail, 0, 0, 0, trials,
          static_cast<double>(good) / trials);
    }
  }
  std::printf("theory validation -> %s\n",
              (std::filesystem::path(out_dir) / "theory.csv").string().c_str());
  return kExitOk;
}

// ---- cv -----------------------------------------------------------------

int cmd_cv(const std::string& data_path, const std::string& method, const Config& cfg,
           double gamma_flag, double tol, std::int64_t seed_override,
           const std::string& out_dir) {
  sc_dataset* d = nullptr;
  check(sc_dataset_load_csv(data_path.c_str(), &d));
  std::uint64_t seed = static_cast<std::uint64_t>(cfg_num(cfg, "cv.seed", 0));
  if (seed_override >= 0) seed = static_cast<std::uint64_t>(seed_override);
  const std::string loss = cfg_str(cfg, "cv.loss", "logistic");
  const double train_fraction = cfg_num(cfg, "cv.train_fraction", 0.8);

  std::vector<double> table;
  double star1 = 0, star2 = 0;
  int rows = 0;
  if (method == "sparse") {
    auto kvals = cfg_list(cfg, "cv.k_grid", {1, 2, 3, 4, 5});
    std::vector<int> kg(kvals.begin(), kvals.end());
    auto gg = cfg_list(cfg, "cv.gamma_grid", {gamma_flag > 0 ? gamma_flag : 1.0});
    rows = static_cast<int>(kg.size() * gg.size());
    table.resize(5 * rows);
    check(sc_cv_sparse(d, kg.data(), static_cast<int>(kg.size()), gg.data(),
                       static_cast<int>(gg.size()), loss.c_str(), train_fraction, seed,
                       tol, 0, table.data(), &star1, &star2));
  } else if (method == "lasso") {
    auto lg = cfg_list(cfg, "cv.lambda_grid", {});
    if (lg.empty()) {
      lg.resize(static_cast<int>(cfg_num(cfg, "cv.lambda_count", 10)));
      check(sc_lambda_grid(d, loss.c_str(), static_cast<int>(lg.size()), lg.data()));
    }
    rows = static_cast<int>(lg.size());
    table.resize(5 * rows);
    check(sc_cv_lasso(d, lg.data(), rows, loss.c_str(), train_fraction, seed,
                      table.data(), &star1));
  } else {
    std::fprintf(stderr, "error: cv method must be 'sparse' or 'lasso'\n");
    sc_dataset_free(d);
    return kExitUsage;
  }

  auto out = open_out(std::filesystem::path(out_dir) / "cv.csv");
  out << "schema_version,method,k_or_lambda,gamma,val_auc,val_misclass,support_size,"
         "selected\n";
  for (int r = 0; r < rows; ++r) {
    const double* t = &table[5 * r];
    const bool sel = method == "sparse" ? (t[0] == star1 && t[1] == star2)
                                        : (t[0] == star1);
    out << kSchemaVersion << ',' << method << ',' << fmt(t[0]) << ',' << fmt(t[1])
        << ',' << fmt(t[2]) << ',' << fmt(t[3]) << ','
        << static_cast<long>(t[4]) << ',' << (sel ? 1 : 0) << '\n';
  }
  if (method == "sparse")
    std::printf("cv: selected k=%g gamma=%s\n", star1, fmt(star2).c_str());
  else
    std::printf("cv: selected lambda=%s\n", fmt(star1).c_str());
  sc_dataset_free(d);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cardinality-constrained sparse classification toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", data_path, method;
  std::int64_t seed = -1;
  int workers = 1, k = 0, max_cuts = 0;
  double gamma = 1.0, lambda = 0.0, tol = 0.0;

  app.add_option("--config", config_path, "key-value config file");
  app.add_option("--seed", seed, "seed override");
  app.add_option("--workers", workers, "worker threads for sweeps");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--method", method, "fit/cv method name");
  app.add_option("--k", k, "cardinality budget");
  app.add_option("--gamma", gamma, "ridge-style regularization strength");
  app.add_option("--lambda", lambda, "l1 penalty");
  app.add_option("--tol", tol, "relative optimality tolerance");
  app.add_option("--max-cuts", max_cuts, "cut budget for the exact method");

  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset");
  GenParams gp;
  gen->add_option("--n", gp.n);
  gen->add_option("--p", gp.p);
  gen->add_option("--k-true", gp.k_true);
  gen->add_option("--rho", gp.rho);
  gen->add_option("--snr", gp.snr, "signal-to-noise; negative means noiseless");
  gen->add_option("--sigma2", gp.sigma2);
  gen->add_option("--label-model", gp.label_model, "logistic | sign");
  gen->add_option("--truth-model", gp.truth_model, "pm1 | binary");

  auto* fit = app.add_subcommand("fit", "fit one model to a CSV dataset");
  fit->add_option("--data", data_path, "dataset CSV")->required();

  auto* sweep = app.add_subcommand("sweep", "grid x seed experiment to tidy CSV");
  auto* theory = app.add_subcommand("theory", "closed forms vs monte carlo tables");
  auto* cv = app.add_subcommand("cv", "train/validation model selection");
  cv->add_option("--data", data_path, "dataset CSV");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  Config cfg;
  if (!config_path.empty()) cfg = load_config(config_path);

  if (gen->parsed()) {
    if (!config_path.empty()) {
      gp.n = static_cast<int>(cfg_num(cfg, "gen.n", gp.n));
      gp.p = static_cast<int>(cfg_num(cfg, "gen.p", gp.p));
      gp.k_true = static_cast<int>(cfg_num(cfg, "gen.k_true", gp.k_true));
      gp.rho = cfg_num(cfg, "gen.rho", gp.rho);
      gp.snr = cfg_num(cfg, "gen.snr", gp.snr);
      gp.sigma2 = cfg_num(cfg, "gen.sigma2", gp.sigma2);
      gp.label_model = cfg_str(cfg, "gen.label_model", gp.label_model);
      gp.truth_model = cfg_str(cfg, "gen.truth_model", gp.truth_model);
      gp.seed = static_cast<std::uint64_t>(cfg_num(cfg, "gen.seed", 0));
    }
    if (seed >= 0) gp.seed = static_cast<std::uint64_t>(seed);
    return cmd_gen(gp, out_dir);
  }
  if (fit->parsed()) {
    if (method.empty()) {
      std::fprintf(stderr, "error: fit requires --method\n");
      return kExitUsage;
    }
    return cmd_fit(data_path, method, k, gamma, lambda, tol, max_cuts, out_dir);
  }
  if (sweep->parsed()) {
    if (config_path.empty()) {
      std::fprintf(stderr, "error: sweep requires --config\n");
      return kExitUsage;
    }
    return cmd_sweep(cfg, workers, out_dir == "." ? "" : out_dir, seed);
  }
  if (theory->parsed()) return cmd_theory(cfg, out_dir, seed);
  if (cv->parsed()) {
    if (data_path.empty() || method.empty()) {
      std::fprintf(stderr, "error: cv requires --data and --method\n");
      return kExitUsage;
    }
    return cmd_cv(data_path, method, cfg, gamma, tol, seed, out_dir);
  }
  return kExitUsage;
}
