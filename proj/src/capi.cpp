// SPDX-License-Identifier: Apache-2.0
#include "mnp.h"

#include "mnp/closed_form.hpp"
#include "mnp/generators.hpp"
#include "mnp/iterative.hpp"
#include "mnp/linalg.hpp"
#include "mnp/matrix_market.hpp"
#include "mnp/oracles.hpp"
#include "mnp/projections.hpp"
#include "mnp/types.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <optional>
#include <string>
#include <utility>

struct mnp_matrix {
  mnp::Matrix m;
};

struct mnp_report {
  mnp::Matrix x;
  double objective = 0.0;
  int64_t iterations = 0;
  mnp_termination termination = MNP_TERM_CLOSED_FORM;
  double lambda = std::numeric_limits<double>::quiet_NaN();
  double delta_predicted = std::numeric_limits<double>::quiet_NaN();
  double feasibility_gap = 0.0;
  std::vector<mnp::IterationRecord> history;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& what) { g_last_error = what; }

mnp_status classify(const std::exception& e) {
  if (dynamic_cast<const mnp::ParseError*>(&e)) return MNP_ERR_PARSE;
  if (dynamic_cast<const mnp::IoError*>(&e)) return MNP_ERR_IO;
  if (dynamic_cast<const mnp::RankDeficiencyError*>(&e)) return MNP_ERR_RANK_DEFICIENT;
  if (dynamic_cast<const mnp::InfeasibleError*>(&e)) return MNP_ERR_INFEASIBLE;
  if (dynamic_cast<const mnp::ContractError*>(&e)) return MNP_ERR_CONTRACT;
  if (dynamic_cast<const mnp::DivergenceError*>(&e)) return MNP_ERR_DIVERGED;
  if (dynamic_cast<const mnp::PoleError*>(&e)) return MNP_ERR_INVALID_ARGUMENT;
  if (dynamic_cast<const mnp::ValidationError*>(&e)) return MNP_ERR_INVALID_ARGUMENT;
  return MNP_ERR_INTERNAL;
}

template <typename Fn>
mnp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MNP_OK;
  } catch (const std::exception& e) {
    set_error(e.what());
    return classify(e);
  } catch (...) {
    set_error("unknown error");
    return MNP_ERR_INTERNAL;
  }
}

mnp_status require_handles(std::initializer_list<const void*> handles) {
  for (const void* h : handles)
    if (h == nullptr) {
      set_error("null handle passed");
      return MNP_ERR_INVALID_ARGUMENT;
    }
  return MNP_OK;
}

mnp_matrix* wrap(mnp::Matrix m) { return new mnp_matrix{std::move(m)}; }

mnp_report* wrap_closed_form(const mnp::ClosedFormSolution& sol) {
  auto* r = new mnp_report;
  r->x = sol.x;
  r->objective = sol.objective;
  r->termination = MNP_TERM_CLOSED_FORM;
  if (sol.lambda) r->lambda = *sol.lambda;
  return r;
}

mnp_report* wrap_iterative(mnp::ConvergenceReport rep) {
  auto* r = new mnp_report;
  r->x = std::move(rep.x_star);
  r->objective = rep.objective;
  r->iterations = rep.iterations;
  r->lambda = rep.lambda;
  if (rep.delta_predicted) r->delta_predicted = *rep.delta_predicted;
  r->feasibility_gap = rep.feasibility_gap;
  switch (rep.termination) {
    case mnp::Termination::step_tol: r->termination = MNP_TERM_STEP_TOL; break;
    case mnp::Termination::max_iters: r->termination = MNP_TERM_MAX_ITERS; break;
    case mnp::Termination::target_reached: r->termination = MNP_TERM_TARGET_REACHED; break;
  }
  r->history = std::move(rep.history);
  return r;
}

mnp_report* wrap_oracle(const mnp::OracleResult& res) {
  auto* r = new mnp_report;
  r->x = res.x;
  r->objective = res.objective;
  r->iterations = res.iterations;
  r->termination = MNP_TERM_CLOSED_FORM;
  return r;
}

mnp::ConstraintSpec make_spec(const char* constraint, const mnp_matrix* eigvec) {
  mnp::ConstraintSpec spec;
  spec.kind = mnp::constraint_kind_from_string(constraint ? constraint : "");
  if (eigvec != nullptr) {
    mnp::require(eigvec->m.cols() == 1 || eigvec->m.rows() == 1,
                 "eigenvector must be a single row or column");
    mnp::Vector v = eigvec->m.cols() == 1 ? mnp::Vector(eigvec->m.col(0))
                                          : mnp::Vector(eigvec->m.row(0).transpose());
    spec.eigvec = v;
  }
  return spec;
}

}  // namespace

extern "C" {

const char* mnp_version(void) { return "0.1.0"; }

const char* mnp_status_name(mnp_status status) {
  switch (status) {
    case MNP_OK: return "ok";
    case MNP_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case MNP_ERR_RANK_DEFICIENT: return "rank-deficient";
    case MNP_ERR_INFEASIBLE: return "infeasible";
    case MNP_ERR_CONTRACT: return "contract-violation";
    case MNP_ERR_DIVERGED: return "diverged";
    case MNP_ERR_IO: return "io-error";
    case MNP_ERR_PARSE: return "parse-error";
    case MNP_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* mnp_last_error_message(void) { return g_last_error.c_str(); }

mnp_status mnp_matrix_create(int64_t rows, int64_t cols, const double* data, mnp_matrix** out) {
  if (mnp_status s = require_handles({out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
    mnp::Matrix m = mnp::Matrix::Zero(rows, cols);
    if (data != nullptr)
      for (int64_t i = 0; i < rows; ++i)
        for (int64_t j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
    mnp::require_matrix(m, "matrix");
    *out = wrap(std::move(m));
  });
}

void mnp_matrix_destroy(mnp_matrix* m) { delete m; }

int64_t mnp_matrix_rows(const mnp_matrix* m) { return m ? m->m.rows() : 0; }
int64_t mnp_matrix_cols(const mnp_matrix* m) { return m ? m->m.cols() : 0; }

mnp_status mnp_matrix_copy_data(const mnp_matrix* m, double* out) {
  if (mnp_status s = require_handles({m, out}); s != MNP_OK) return s;
  for (mnp::Index i = 0; i < m->m.rows(); ++i)
    for (mnp::Index j = 0; j < m->m.cols(); ++j) out[i * m->m.cols() + j] = m->m(i, j);
  return MNP_OK;
}

double mnp_matrix_frobenius(const mnp_matrix* m) {
  return m ? m->m.norm() : std::numeric_limits<double>::quiet_NaN();
}

mnp_status mnp_matrix_read_mm(const char* path, mnp_matrix** out) {
  if (mnp_status s = require_handles({path, out}); s != MNP_OK) return s;
  return guarded([&] { *out = wrap(mnp::read_matrix_market_file(path)); });
}

mnp_status mnp_matrix_write_mm(const char* path, const mnp_matrix* m) {
  if (mnp_status s = require_handles({path, m}); s != MNP_OK) return s;
  return guarded([&] { mnp::write_matrix_market_file(path, m->m); });
}

mnp_status mnp_matrix_multiply(const mnp_matrix* a, const mnp_matrix* b, mnp_matrix** out) {
  if (mnp_status s = require_handles({a, b, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(a->m.cols() == b->m.rows(), "multiply: inner dimensions differ");
    *out = wrap(a->m * b->m);
  });
}

mnp_status mnp_matrix_transpose(const mnp_matrix* a, mnp_matrix** out) {
  if (mnp_status s = require_handles({a, out}); s != MNP_OK) return s;
  return guarded([&] { *out = wrap(a->m.transpose()); });
}

mnp_status mnp_matrix_sub(const mnp_matrix* a, const mnp_matrix* b, mnp_matrix** out) {
  if (mnp_status s = require_handles({a, b, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(a->m.rows() == b->m.rows() && a->m.cols() == b->m.cols(),
                 "sub: dimensions differ");
    *out = wrap(a->m - b->m);
  });
}

mnp_status mnp_matrix_random_gaussian(int64_t rows, int64_t cols, uint64_t seed,
                                      mnp_matrix** out) {
  if (mnp_status s = require_handles({out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
    mnp::Rng rng(seed);
    *out = wrap(mnp::random_gaussian(rows, cols, rng));
  });
}

mnp_status mnp_matrix_random_conditioned(int64_t rows, int64_t cols, double cond, uint64_t seed,
                                         mnp_matrix** out) {
  if (mnp_status s = require_handles({out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
    mnp::Rng rng(seed);
    *out = wrap(mnp::random_conditioned(rows, cols, cond, rng));
  });
}

mnp_status mnp_matrix_random_member(const char* constraint, int64_t n, uint64_t seed,
                                    mnp_matrix** out) {
  if (mnp_status s = require_handles({constraint, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(n >= 1, "matrix dimensions must be positive");
    mnp::ConstraintSpec spec = make_spec(constraint, nullptr);
    mnp::Rng rng(seed);
    *out = wrap(mnp::random_member(spec, n, rng));
  });
}

mnp_status mnp_project(const mnp_matrix* a, const char* constraint, const mnp_matrix* eigvec,
                       mnp_matrix** out) {
  if (mnp_status s = require_handles({a, constraint, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::ConstraintSpec spec = make_spec(constraint, eigvec);
    if (mnp::is_composite(spec.kind))
      *out = wrap(mnp::project_intersection(a->m, {spec}));
    else
      *out = wrap(mnp::project(a->m, spec));
  });
}

mnp_status mnp_solve_rank(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                          int64_t rank, mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(rank >= 0, "rank bound must be nonnegative");
    *out = wrap_closed_form(mnp::solve_rank_constrained(a->m, b->m, c->m, rank));
  });
}

mnp_status mnp_solve_prescribed_eigenvalue(const mnp_matrix* a, const mnp_matrix* b,
                                           const mnp_matrix* c, double eigenvalue,
                                           mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, out}); s != MNP_OK) return s;
  return guarded([&] {
    *out = wrap_closed_form(mnp::solve_prescribed_eigenvalue(a->m, b->m, c->m, eigenvalue));
  });
}

mnp_status mnp_solve_norm(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                          double rho, const mnp_matrix* center, mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, out}); s != MNP_OK) return s;
  return guarded([&] {
    std::optional<mnp::Matrix> ctr;
    if (center != nullptr) ctr = center->m;
    *out = wrap_closed_form(mnp::solve_norm_constrained(a->m, b->m, c->m, rho, ctr));
  });
}

mnp_status mnp_solve_two_sided(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                               const mnp_matrix* f, const mnp_matrix* g, const mnp_matrix* h,
                               mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, f, g, h, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::TwoSidedConstraint tsc{f->m, g->m, h->m};
    *out = wrap_closed_form(mnp::solve_two_sided_product(a->m, b->m, c->m, tsc));
  });
}

mnp_status mnp_solve_symmetric(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                               mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, out}); s != MNP_OK) return s;
  return guarded([&] { *out = wrap_closed_form(mnp::solve_symmetric(a->m, b->m, c->m)); });
}

mnp_status mnp_solve_skew_symmetric(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                                    mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, out}); s != MNP_OK) return s;
  return guarded([&] { *out = wrap_closed_form(mnp::solve_skew_symmetric(a->m, b->m, c->m)); });
}

void mnp_iter_options_init(mnp_iter_options* opts) {
  if (opts == nullptr) return;
  opts->lambda = 0.0;
  opts->max_iters = 0;
  opts->tol_step = 0.0;
  opts->record_history = 0;
  opts->forward_error_reference = nullptr;
  opts->forward_error_target = 0.0;
  opts->initial_x = nullptr;
}

mnp_status mnp_solve_iterative(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                               const char* constraint, const mnp_matrix* eigvec,
                               const mnp_iter_options* opts, mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, constraint, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::ConstraintSpec spec = make_spec(constraint, eigvec);
    mnp::IterOptions io;
    if (opts != nullptr) {
      if (opts->lambda > 0.0) io.lambda = opts->lambda;
      if (opts->max_iters > 0) io.max_iters = opts->max_iters;
      if (opts->tol_step > 0.0) io.tol_step = opts->tol_step;
      io.record_history = opts->record_history != 0;
      if (opts->forward_error_reference != nullptr)
        io.forward_error_reference = opts->forward_error_reference->m;
      if (opts->forward_error_target > 0.0)
        io.forward_error_target = opts->forward_error_target;
      if (opts->initial_x != nullptr) io.initial_x = opts->initial_x->m;
    }
    *out = wrap_iterative(mnp::solve_iterative(a->m, b->m, c->m, spec, io));
  });
}

double mnp_optimal_lambda(const mnp_matrix* b, const mnp_matrix* c) {
  double value = std::numeric_limits<double>::quiet_NaN();
  if (b == nullptr || c == nullptr) return value;
  guarded([&] { value = mnp::optimal_lambda(b->m, c->m); });
  return value;
}

double mnp_rate_estimate(const mnp_matrix* b, const mnp_matrix* c) {
  double value = -1.0;
  if (b == nullptr || c == nullptr) return value;
  mnp_status s = guarded([&] { value = mnp::rate_estimate(b->m, c->m); });
  return s == MNP_OK ? value : -1.0;
}

mnp_status mnp_oracle_kron_ls(const mnp_matrix* a, const mnp_matrix* b, const mnp_matrix* c,
                              const char* parameterization, mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, parameterization, out}); s != MNP_OK) return s;
  return guarded([&] {
    auto param = mnp::make_parameterization(parameterization, b->m.cols(), c->m.rows());
    *out = wrap_oracle(mnp::oracle_kron_ls(a->m, b->m, c->m, param));
  });
}

mnp_status mnp_oracle_projected_gradient(const mnp_matrix* a, const mnp_matrix* b,
                                         const mnp_matrix* c, const char* constraint,
                                         const mnp_matrix* eigvec, int64_t steps,
                                         mnp_report** out) {
  if (mnp_status s = require_handles({a, b, c, constraint, out}); s != MNP_OK) return s;
  return guarded([&] {
    mnp::require(steps >= 1, "steps must be positive");
    mnp::ConstraintSpec spec = make_spec(constraint, eigvec);
    auto projector = mnp::make_set_projector(spec);
    *out = wrap_oracle(mnp::oracle_projected_gradient(a->m, b->m, c->m, projector, steps));
  });
}

void mnp_report_destroy(mnp_report* r) { delete r; }

mnp_status mnp_report_solution(const mnp_report* r, mnp_matrix** out) {
  if (mnp_status s = require_handles({r, out}); s != MNP_OK) return s;
  *out = wrap(r->x);
  return MNP_OK;
}

double mnp_report_objective(const mnp_report* r) {
  return r ? r->objective : std::numeric_limits<double>::quiet_NaN();
}

int64_t mnp_report_iterations(const mnp_report* r) { return r ? r->iterations : 0; }

mnp_termination mnp_report_termination(const mnp_report* r) {
  return r ? r->termination : MNP_TERM_CLOSED_FORM;
}

double mnp_report_lambda(const mnp_report* r) {
  return r ? r->lambda : std::numeric_limits<double>::quiet_NaN();
}

double mnp_report_delta_predicted(const mnp_report* r) {
  return r ? r->delta_predicted : std::numeric_limits<double>::quiet_NaN();
}

double mnp_report_feasibility_gap(const mnp_report* r) {
  return r ? r->feasibility_gap : std::numeric_limits<double>::quiet_NaN();
}

int64_t mnp_report_history_size(const mnp_report* r) {
  return r ? static_cast<int64_t>(r->history.size()) : 0;
}

mnp_status mnp_report_history_row(const mnp_report* r, int64_t index, int64_t* iter,
                                  double* objective, double* step_norm, double* forward_error) {
  if (mnp_status s = require_handles({r}); s != MNP_OK) return s;
  if (index < 0 || index >= static_cast<int64_t>(r->history.size())) {
    set_error("history index out of range");
    return MNP_ERR_INVALID_ARGUMENT;
  }
  const auto& rec = r->history[static_cast<std::size_t>(index)];
  if (iter != nullptr) *iter = rec.iter;
  if (objective != nullptr) *objective = rec.objective;
  if (step_norm != nullptr) *step_norm = rec.step_norm();
  if (forward_error != nullptr) *forward_error = rec.forward_error;
  return MNP_OK;
}

mnp_status mnp_gsvd_check(const mnp_matrix* b, const mnp_matrix* c, double* residual_factored,
                          double* residual_basis, double* beta_gamma_dev, int64_t* r, int64_t* s,
                          int64_t* k) {
  if (mnp_status st = require_handles({b, c}); st != MNP_OK) return st;
  return guarded([&] {
    mnp::GsvdFactors f = mnp::gsvd(b->m, c->m);
    const mnp::Index m_rows = b->m.rows();
    const mnp::Index p_cols = c->m.cols();
    const mnp::Index n = b->m.cols();

    mnp::Matrix wr0 = mnp::Matrix::Zero(f.k, n);
    wr0.leftCols(f.k) = f.w.transpose() * f.r;
    const double scale = 1.0 + b->m.norm() + c->m.norm();
    const double res_b = (f.u.transpose() * b->m * f.q - f.sigma_b(m_rows) * wr0).norm();
    const double res_c =
        (f.v.transpose() * c->m.transpose() * f.q - f.sigma_c(p_cols) * wr0).norm();

    mnp::Matrix sb0 = mnp::Matrix::Zero(m_rows, n);
    sb0.leftCols(f.k) = f.sigma_b(m_rows);
    mnp::Matrix sc0 = mnp::Matrix::Zero(p_cols, n);
    sc0.leftCols(f.k) = f.sigma_c(p_cols);
    const double basis_scale = 1.0 + (b->m.norm() + c->m.norm()) * f.m.norm();
    const double res_mb = (f.u.transpose() * b->m * f.m - sb0).norm();
    const double res_mc = (f.v.transpose() * c->m.transpose() * f.m - sc0).norm();

    double dev = 0.0;
    for (mnp::Index i = 0; i < f.s_size; ++i)
      dev = std::max(dev, std::abs(f.beta(i) * f.beta(i) + f.gamma(i) * f.gamma(i) - 1.0));

    if (residual_factored != nullptr) *residual_factored = (res_b + res_c) / scale;
    if (residual_basis != nullptr) *residual_basis = (res_mb + res_mc) / basis_scale;
    if (beta_gamma_dev != nullptr) *beta_gamma_dev = dev;
    if (r != nullptr) *r = f.r_size;
    if (s != nullptr) *s = f.s_size;
    if (k != nullptr) *k = f.k;
  });
}

}  // extern "C"
