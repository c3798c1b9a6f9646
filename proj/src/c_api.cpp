#include "slepian/slepian.h"

#include <limits>
#include <sstream>
#include <string>

#include "slepian/eigensolve.hpp"
#include "slepian/experiment.hpp"
#include "slepian/oracles.hpp"

struct sk_config {
  slepian::experiment_config cfg;
};

struct sk_problem {
  slepian::concentration_problem problem;
  slepian::experiment_config cfg;
};

namespace {

thread_local std::string last_error;

sk_status fail(sk_status s, const std::string& message) {
  last_error = message;
  return s;
}

// Maps the core's exceptions onto status codes.
template <class F>
sk_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const slepian::config_error& e) {
    return fail(SK_CONFIG_ERROR, e.what());
  } catch (const slepian::resource_error& e) {
    return fail(SK_RESOURCE_ERROR, e.what());
  } catch (const slepian::io_error& e) {
    return fail(SK_IO_ERROR, e.what());
  } catch (const slepian::convergence_error& e) {
    return fail(SK_CONVERGENCE_ERROR, e.what());
  } catch (const slepian::domain_error& e) {
    return fail(SK_DOMAIN_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SK_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SK_ERROR, e.what());
  } catch (...) {
    return fail(SK_ERROR, "unknown error");
  }
}

}  // namespace

extern "C" {

const char* sk_last_error(void) { return last_error.c_str(); }

const char* sk_version(void) { return "1.0.0"; }

const char* sk_status_name(sk_status status) {
  switch (status) {
    case SK_OK: return "ok";
    case SK_ERROR: return "error";
    case SK_CONFIG_ERROR: return "config error";
    case SK_PARTIAL: return "partial";
    case SK_ORACLE_FAILURE: return "oracle failure";
    case SK_INVALID_ARGUMENT: return "invalid argument";
    case SK_DOMAIN_ERROR: return "domain error";
    case SK_IO_ERROR: return "i/o error";
    case SK_RESOURCE_ERROR: return "resource error";
    case SK_CONVERGENCE_ERROR: return "convergence error";
  }
  return "unknown";
}

sk_status sk_config_load(const char* path, sk_config** out) {
  if (!path || !out) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new sk_config{slepian::load_config(path)};
    return SK_OK;
  });
}

sk_status sk_config_parse(const char* text, sk_config** out) {
  if (!text || !out) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new sk_config{slepian::parse_config(text)};
    return SK_OK;
  });
}

sk_status sk_config_set(sk_config* cfg, const char* section, const char* key, const char* value) {
  if (!cfg || !section || !key || !value) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    slepian::set_config_value(cfg->cfg, section, key, value);
    return SK_OK;
  });
}

sk_status sk_config_validate(const sk_config* cfg) {
  if (!cfg) return fail(SK_INVALID_ARGUMENT, "null configuration");
  return guarded([&] {
    cfg->cfg.validate();
    return SK_OK;
  });
}

void sk_config_free(sk_config* cfg) { delete cfg; }

sk_status sk_run_command(const char* command, const sk_config* cfg, const sk_run_options* options, sk_log_fn log,
                         void* user) {
  if (!command || !cfg) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    slepian::command_options opt;
    if (options) {
      if (options->out_dir) opt.out_dir = options->out_dir;
      opt.timestamp = options->timestamp != 0;
      if (options->has_seed) opt.seed = options->seed;
    }
    // forward each line as soon as it is complete
    struct line_buf : std::stringbuf {
      sk_log_fn fn;
      void* user;
      int sync() override {
        if (fn && !str().empty()) fn(str().c_str(), user);
        str("");
        return 0;
      }
    } buf;
    buf.fn = log;
    buf.user = user;
    std::ostream stream(&buf);
    stream.setf(std::ios::unitbuf);
    int code;
    try {
      code = slepian::run_command(command, cfg->cfg, opt, stream);
    } catch (...) {
      stream.flush();
      throw;
    }
    stream.flush();
    if (code == slepian::exit_partial) return fail(SK_PARTIAL, "varying masks accepted fewer vectors than requested");
    if (code == slepian::exit_oracle) return fail(SK_ORACLE_FAILURE, "oracle checks failed");
    if (code != slepian::exit_ok) return fail(SK_ERROR, std::string(command) + " reported failed checks");
    return SK_OK;
  });
}

sk_status sk_problem_create(const sk_config* cfg, sk_problem** out) {
  if (!cfg || !out) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    cfg->cfg.validate();
    *out = new sk_problem{cfg->cfg.problem(), cfg->cfg};
    return SK_OK;
  });
}

void sk_problem_free(sk_problem* problem) { delete problem; }

sk_status sk_problem_size(const sk_problem* problem, int64_t* size) {
  if (!problem || !size) return fail(SK_INVALID_ARGUMENT, "null argument");
  *size = problem->problem.g.space_size();
  return SK_OK;
}

sk_status sk_problem_apply(const sk_problem* problem, double eps, const double* in, double* out) {
  if (!problem || !in || !out) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto n = problem->problem.g.space_size();
    const slepian::cvec v = Eigen::Map<const slepian::cvec>(reinterpret_cast<const slepian::cplx*>(in), n);
    const slepian::cvec r = problem->problem.fast(eps)(v);
    Eigen::Map<slepian::cvec>(reinterpret_cast<slepian::cplx*>(out), n) = r;
    return SK_OK;
  });
}

sk_status sk_problem_dense_eigenvalues(const sk_problem* problem, double eps, double* values, size_t count) {
  if (!problem || (!values && count)) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto n = static_cast<size_t>(problem->problem.g.space_size());
    if (count > n) return fail(SK_INVALID_ARGUMENT, "asked for more eigenvalues than grid nodes");
    const double mb = 3.0 * slepian::dense_bytes(problem->problem.g) / (1024.0 * 1024.0);
    if (mb > problem->cfg.memory_cap_mb) return fail(SK_RESOURCE_ERROR, "dense matrix exceeds the memory cap");
    const auto s = slepian::full_hermitian_eig(problem->problem.dense(eps).dense);
    for (size_t i = 0; i < count; ++i) values[i] = s.values(static_cast<Eigen::Index>(i));
    return SK_OK;
  });
}

sk_status sk_epsilon_schedule(double eps_min, double eps_max, int steps, double* out) {
  if (!out) return fail(SK_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto s = slepian::epsilon_schedule(eps_min, eps_max, steps);
    std::copy(s.begin(), s.end(), out);
    return SK_OK;
  });
}

double sk_mu(double eps) {
  try {
    return slepian::mu(eps);
  } catch (const std::exception& e) {
    last_error = e.what();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // extern "C"
