#include "sparseclf.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "sparseclf/datagen.hpp"
#include "sparseclf/lasso.hpp"
#include "sparseclf/metrics.hpp"
#include "sparseclf/oa.hpp"
#include "sparseclf/theory.hpp"

using namespace sparseclf;

namespace {

thread_local std::string g_last_error;

sc_status fail(sc_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Runs fn() and maps exceptions onto status codes.
template <class Fn>
sc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(SC_EINVAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SC_EINVAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SC_EINVAL, e.what());
  }
}

Loss parse_loss(const char* s) {
  if (!s) throw std::invalid_argument("loss name is null");
  return loss_from_string(s);
}

}  // namespace

struct sc_dataset {
  Dataset data;
  std::vector<double> w_true;  // empty for loaded datasets
  bool generated = false;
  bool single_class = false;
};

struct sc_fit {
  FitResult result;
  int p = 0;
};

struct sc_lasso {
  LassoFit fit;
};

extern "C" {

const char* sc_last_error(void) { return g_last_error.c_str(); }

sc_status sc_dataset_generate(int n, int p, int k_true, double rho, double snr,
                              const char* label_model, const char* truth_model,
                              double sigma2, uint64_t seed, sc_dataset** out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null output pointer");
    SyntheticConfig cfg;
    cfg.n = n;
    cfg.p = p;
    cfg.k_true = k_true;
    cfg.rho = rho;
    cfg.snr = snr < 0.0 ? SyntheticConfig::kInfSnr : snr;
    cfg.sigma2 = sigma2;
    cfg.seed = seed;
    const std::string lm = label_model ? label_model : "logistic";
    if (lm == "logistic") cfg.label_model = LabelModel::logistic;
    else if (lm == "sign") cfg.label_model = LabelModel::sign;
    else return fail(SC_EINVAL, "unknown label model: " + lm);
    const std::string tm = truth_model ? truth_model : "pm1";
    if (tm == "pm1") cfg.truth_model = TruthModel::pm1;
    else if (tm == "binary") cfg.truth_model = TruthModel::binary;
    else return fail(SC_EINVAL, "unknown truth model: " + tm);
    auto inst = generate(cfg);
    auto* h = new sc_dataset;
    h->data = std::move(inst.data);
    h->w_true = std::move(inst.w_true);
    h->generated = true;
    h->single_class = inst.single_class;
    *out = h;
    return SC_OK;
  });
}

sc_status sc_dataset_load_csv(const char* path, sc_dataset** out) {
  return guarded([&]() -> sc_status {
    if (!path || !out) return fail(SC_EINVAL, "null argument");
    {
      std::ifstream probe(path);
      if (!probe.good()) return fail(SC_EIO, std::string("cannot open ") + path);
    }
    try {
      auto* h = new sc_dataset;
      h->data = load_csv(path);
      *out = h;
      return SC_OK;
    } catch (const std::runtime_error& e) {
      return fail(SC_EPARSE, e.what());
    }
  });
}

sc_status sc_dataset_save_csv(const sc_dataset* d, const char* path) {
  return guarded([&]() -> sc_status {
    if (!d || !path) return fail(SC_EINVAL, "null argument");
    try {
      save_csv(d->data, path);
    } catch (const std::runtime_error& e) {
      return fail(SC_EIO, e.what());
    }
    return SC_OK;
  });
}

void sc_dataset_free(sc_dataset* d) { delete d; }

int sc_dataset_n(const sc_dataset* d) { return d ? d->data.n : 0; }
int sc_dataset_p(const sc_dataset* d) { return d ? d->data.p : 0; }
int sc_dataset_single_class(const sc_dataset* d) { return d && d->single_class ? 1 : 0; }

sc_status sc_dataset_true_weights(const sc_dataset* d, double* out) {
  if (!d || !out) return fail(SC_EINVAL, "null argument");
  if (!d->generated) return fail(SC_EINVAL, "dataset has no planted truth");
  std::memcpy(out, d->w_true.data(), d->w_true.size() * sizeof(double));
  return SC_OK;
}

sc_status sc_fit_sparse(const sc_dataset* d, int k, double gamma, const char* loss,
                        double epsilon, int max_cuts, double inner_tol, sc_fit** out) {
  return guarded([&]() -> sc_status {
    if (!d || !out) return fail(SC_EINVAL, "null argument");
    FitOptions o;
    o.gamma = gamma;
    o.kind = parse_loss(loss);
    if (epsilon > 0.0) o.epsilon = epsilon;
    if (max_cuts > 0) o.max_cuts = max_cuts;
    if (inner_tol > 0.0) o.inner_tol = inner_tol;
    auto* h = new sc_fit;
    h->result = fit_sparse(d->data, k, o);
    h->p = d->data.p;
    *out = h;
    if (!h->result.certified)
      return fail(SC_EBUDGET, "cut budget exhausted before certification");
    return SC_OK;
  });
}

void sc_fit_free(sc_fit* f) { delete f; }

sc_status sc_fit_weights(const sc_fit* f, double* out) {
  if (!f || !out) return fail(SC_EINVAL, "null argument");
  std::memcpy(out, f->result.w.data(), f->result.w.size() * sizeof(double));
  return SC_OK;
}

double sc_fit_intercept(const sc_fit* f) { return f ? f->result.b : 0.0; }
double sc_fit_objective(const sc_fit* f) { return f ? f->result.objective : 0.0; }
int sc_fit_cuts(const sc_fit* f) { return f ? f->result.cuts_used : 0; }
int sc_fit_iterations(const sc_fit* f) { return f ? f->result.iterations : 0; }
int sc_fit_certified(const sc_fit* f) { return f && f->result.certified ? 1 : 0; }
double sc_fit_walltime(const sc_fit* f) { return f ? f->result.wall_time_sec : 0.0; }

sc_status sc_fit_support(const sc_fit* f, int* out) {
  if (!f || !out) return fail(SC_EINVAL, "null argument");
  for (int j = 0; j < f->p; ++j) out[j] = f->result.s.bits[j];
  return SC_OK;
}

sc_status sc_lasso_fit(const sc_dataset* d, double lambda, const char* loss,
                       sc_lasso** out) {
  return guarded([&]() -> sc_status {
    if (!d || !out) return fail(SC_EINVAL, "null argument");
    const Loss kind = parse_loss(loss);
    if (kind == Loss::squared_hinge)
      return fail(SC_EINVAL, "l1 baseline supports logistic and hinge only");
    auto* h = new sc_lasso;
    h->fit = kind == Loss::hinge ? fit_lasso_svm(d->data, lambda)
                                 : fit_lasso_logistic(d->data, lambda);
    *out = h;
    return SC_OK;
  });
}

void sc_lasso_free(sc_lasso* f) { delete f; }

sc_status sc_lasso_weights(const sc_lasso* f, double* out) {
  if (!f || !out) return fail(SC_EINVAL, "null argument");
  std::memcpy(out, f->fit.w.data(), f->fit.w.size() * sizeof(double));
  return SC_OK;
}

double sc_lasso_intercept(const sc_lasso* f) { return f ? f->fit.b : 0.0; }
double sc_lasso_objective(const sc_lasso* f) { return f ? f->fit.objective : 0.0; }
int sc_lasso_support_size(const sc_lasso* f) { return f ? f->fit.support_size : 0; }

sc_status sc_lambda_grid(const sc_dataset* d, const char* loss, int count, double* out) {
  return guarded([&]() -> sc_status {
    if (!d || !out) return fail(SC_EINVAL, "null argument");
    auto grid = lambda_grid(d->data, count, parse_loss(loss));
    std::memcpy(out, grid.data(), grid.size() * sizeof(double));
    return SC_OK;
  });
}

sc_status sc_eval(const sc_dataset* d, const double* w, double b,
                  double* out_auc, double* out_misclass) {
  return guarded([&]() -> sc_status {
    if (!d || !w || !out_auc || !out_misclass) return fail(SC_EINVAL, "null argument");
    std::vector<double> wv(w, w + d->data.p);
    *out_auc = auc(scores(d->data, wv, b), d->data.y);
    *out_misclass = misclass_rate(predict(d->data, wv, b), d->data.y);
    return SC_OK;
  });
}

sc_status sc_recovery(const double* w, const double* w_true, int p,
                      int* out_true_selected, int* out_false_selected) {
  return guarded([&]() -> sc_status {
    if (!w || !w_true || !out_true_selected || !out_false_selected || p < 1)
      return fail(SC_EINVAL, "null argument");
    auto r = recovery({w, w + p}, {w_true, w_true + p});
    *out_true_selected = r.accuracy_count;
    *out_false_selected = r.false_count;
    return SC_OK;
  });
}

namespace {

void fill_cv_table(const CvResult& res, double* table) {
  for (std::size_t i = 0; i < res.table.size(); ++i) {
    const auto& row = res.table[i];
    table[5 * i + 0] = row.k_or_lambda;
    table[5 * i + 1] = row.gamma;
    table[5 * i + 2] = row.val_auc;
    table[5 * i + 3] = row.val_misclass;
    table[5 * i + 4] = row.support_size;
  }
}

}  // namespace

sc_status sc_cv_sparse(const sc_dataset* d, const int* k_grid, int nk,
                       const double* gamma_grid, int ng, const char* loss,
                       double train_fraction, uint64_t seed, double epsilon,
                       int max_cuts, double* table, double* k_star,
                       double* gamma_star) {
  return guarded([&]() -> sc_status {
    if (!d || !k_grid || !gamma_grid || !table || !k_star || !gamma_star || nk < 1 || ng < 1)
      return fail(SC_EINVAL, "null argument");
    CvConfig cfg;
    cfg.method = CvMethod::sparse;
    cfg.kind = parse_loss(loss);
    cfg.k_grid.assign(k_grid, k_grid + nk);
    cfg.gamma_grid.assign(gamma_grid, gamma_grid + ng);
    cfg.train_fraction = train_fraction;
    cfg.seed = seed;
    if (epsilon > 0.0) cfg.fit.epsilon = epsilon;
    if (max_cuts > 0) cfg.fit.max_cuts = max_cuts;
    auto res = cross_validate(d->data, cfg);
    fill_cv_table(res, table);
    *k_star = res.k_star_or_lambda;
    *gamma_star = res.gamma_star;
    return SC_OK;
  });
}

sc_status sc_cv_lasso(const sc_dataset* d, const double* lambda_grid, int nl,
                      const char* loss, double train_fraction, uint64_t seed,
                      double* table, double* lambda_star) {
  return guarded([&]() -> sc_status {
    if (!d || !lambda_grid || !table || !lambda_star || nl < 1)
      return fail(SC_EINVAL, "null argument");
    CvConfig cfg;
    cfg.method = CvMethod::lasso;
    cfg.kind = parse_loss(loss);
    cfg.lambda_grid.assign(lambda_grid, lambda_grid + nl);
    cfg.train_fraction = train_fraction;
    cfg.seed = seed;
    auto res = cross_validate(d->data, cfg);
    fill_cv_table(res, table);
    *lambda_star = res.k_star_or_lambda;
    return SC_OK;
  });
}

sc_status sc_orthant2(double rho, double* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = orthant2(rho);
    return SC_OK;
  });
}

sc_status sc_orthant3(double r12, double r13, double r23, double* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = orthant3(r12, r13, r23);
    return SC_OK;
  });
}

sc_status sc_disagreement(const double* w, const double* w_prime, int p,
                          double sigma, double* out) {
  return guarded([&]() -> sc_status {
    if (!w || !w_prime || !out || p < 1) return fail(SC_EINVAL, "null argument");
    *out = disagreement_prob({w, w + p}, {w_prime, w_prime + p}, sigma);
    return SC_OK;
  });
}

namespace {
TheoryParams make_params(int k, int p, double sigma2, int ell) {
  TheoryParams tp;
  tp.k = k;
  tp.p = p;
  tp.sigma2 = sigma2;
  tp.ell = ell;
  return tp;
}
}  // namespace

sc_status sc_q_of_ell(int k, int p, double sigma2, int ell, double* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = q_of_ell(make_params(k, p, sigma2, ell));
    return SC_OK;
  });
}

sc_status sc_mean_z_exact(int k, int p, double sigma2, int ell, double* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = exact_mean_z(make_params(k, p, sigma2, ell));
    return SC_OK;
  });
}

sc_status sc_mean_z_lower_bound(int k, int p, double sigma2, int ell, double* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = mean_z_lower_bound(make_params(k, p, sigma2, ell));
    return SC_OK;
  });
}

sc_status sc_large_dev_bound(long n, int k, int p, double sigma2, int ell, double* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = large_dev_bound(n, make_params(k, p, sigma2, ell));
    return SC_OK;
  });
}

sc_status sc_n0_threshold(int k, int p, double sigma2, long* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = n0_threshold(k, p, sigma2);
    return SC_OK;
  });
}

sc_status sc_failure_tail(long n, int k, int p, double sigma2, double* out) {
  return guarded([&]() -> sc_status {
    if (!out) return fail(SC_EINVAL, "null argument");
    *out = failure_tail(n, k, p, sigma2);
    return SC_OK;
  });
}

namespace {
sc_status export_mc(const McEstimate& mc, double* est, double* se) {
  if (!est || !se) return fail(SC_EINVAL, "null argument");
  *est = mc.estimate;
  *se = mc.stderr_;
  return SC_OK;
}
}  // namespace

sc_status sc_mc_orthant2(double rho, long samples, uint64_t seed, double* est, double* se) {
  return guarded([&] { return export_mc(mc_orthant2(rho, samples, seed), est, se); });
}

sc_status sc_mc_orthant3(double r12, double r13, double r23, long samples,
                         uint64_t seed, double* est, double* se) {
  return guarded(
      [&] { return export_mc(mc_orthant3(r12, r13, r23, samples, seed), est, se); });
}

sc_status sc_mc_disagreement(const double* w, const double* w_prime, int p,
                             double sigma, long samples, uint64_t seed,
                             double* est, double* se) {
  return guarded([&]() -> sc_status {
    if (!w || !w_prime || p < 1) return fail(SC_EINVAL, "null argument");
    return export_mc(
        mc_disagreement({w, w + p}, {w_prime, w_prime + p}, sigma, samples, seed), est, se);
  });
}

sc_status sc_mc_mean_z(int k, int p, double sigma2, int ell, long samples,
                       uint64_t seed, double* est, double* se) {
  return guarded([&] {
    return export_mc(mc_mean_z(make_params(k, p, sigma2, ell), samples, seed), est, se);
  });
}

sc_status sc_brute_force_min(const sc_dataset* d, int k, int* out) {
  return guarded([&]() -> sc_status {
    if (!d || !out) return fail(SC_EINVAL, "null argument");
    auto s = brute_force_min(d->data, k);
    for (int j = 0; j < s.p(); ++j) out[j] = s.bits[j];
    return SC_OK;
  });
}

}  // extern "C"
