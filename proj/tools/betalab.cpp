// betalab: command-line laboratory for the Beta random walk in random
// environment, the equivalent Beta polymer, and Bernoulli-Exponential
// first-passage percolation.
//
// Every command writes one primary data file (CSV or JSON) plus a JSON
// sidecar <output>.meta.json recording the full parameter set, the seed, the
// software version, wall time, and a "conjectural" flag where the underlying
// limit theorem is only conjectural at the requested parameters.  Primary
// data files are deterministic: identical configurations produce
// byte-identical files regardless of thread count.
//
// Exit codes: 0 success, 2 invalid arguments or parameters, 3 numerical
// non-convergence, 4 I/O failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "betalab/airy.hpp"
#include "betalab/asymptotics.hpp"
#include "betalab/contours.hpp"
#include "betalab/errors.hpp"
#include "betalab/experiments.hpp"
#include "betalab/fgue_cdf.hpp"
#include "betalab/fpp.hpp"
#include "betalab/fredholm.hpp"
#include "betalab/io.hpp"
#include "betalab/mc.hpp"
#include "betalab/moments.hpp"
#include "betalab/overlap.hpp"
#include "betalab/polymer.hpp"
#include "betalab/rwre.hpp"
#include "betalab/stats.hpp"
#include "betalab/version.hpp"

namespace {

using nlohmann::json;
using namespace betalab;

struct common_opts {
  std::uint64_t seed = 1;
  std::string output;
  std::string format = "csv";
  int threads = 0;
};

void add_common(CLI::App* cmd, common_opts& c) {
  cmd->add_option("--seed", c.seed, "Seed for all randomness (recorded in outputs)")
      ->capture_default_str();
  cmd->add_option("--output", c.output,
                  "Primary data file (default: <command>.<format>)");
  cmd->add_option("--format", c.format, "Primary data file format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", c.threads,
                  "Worker threads (0: honor BETALAB_THREADS, else hardware)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
}

void apply_threads(int threads) {
  if (threads > 0) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#endif
  } else {
    apply_thread_env();
  }
}

std::string data_path(const std::string& command, const common_opts& c) {
  if (!c.output.empty()) return c.output;
  return command + "." + c.format;
}

/// Cell → JSON value: integers and decimals become numbers, the rest strings.
json cell_value(const std::string& cell) {
  if (!cell.empty()) {
    long long iv = 0;
    auto ires = std::from_chars(cell.data(), cell.data() + cell.size(), iv);
    if (ires.ec == std::errc() && ires.ptr == cell.data() + cell.size()) {
      return json(iv);
    }
    double dv = 0.0;
    auto dres = std::from_chars(cell.data(), cell.data() + cell.size(), dv);
    if (dres.ec == std::errc() && dres.ptr == cell.data() + cell.size()) {
      return json(dv);
    }
  }
  return json(cell);
}

json table_to_json(const csv_table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::array();
    for (const auto& cell : r) row.push_back(cell_value(cell));
    rows.push_back(std::move(row));
  }
  json out;
  out["schema"] = t.schema;
  out["version"] = t.version;
  if (!t.comments.empty()) out["comments"] = t.comments;
  out["columns"] = t.columns;
  out["rows"] = std::move(rows);
  return out;
}

void write_json_atomic(const std::string& path, const json& j) {
  write_text_atomic(path, j.dump(2) + "\n");
}

struct run_output {
  csv_table table;
  json params;             ///< command-specific parameters for the sidecar
  json diagnostics;        ///< optional extra sidecar entries
  int conjectural = -1;    ///< -1: not applicable, else 0/1
};

/// Writes the primary data file and the JSON sidecar, then prints a summary.
void emit(const std::string& command, const common_opts& c, run_output r,
          double wall_seconds) {
  const std::string path = data_path(command, c);
  if (c.format == "csv") {
    write_csv_atomic(path, r.table);
  } else {
    write_json_atomic(path, table_to_json(r.table));
  }

  json meta;
  meta["command"] = command;
  meta["version"] = version_string;
  meta["seed"] = c.seed;
  meta["format"] = c.format;
  meta["output"] = path;
  meta["schema"] = r.table.schema + "/" + std::to_string(r.table.version);
  meta["params"] = r.params;
  meta["threads_requested"] = c.threads;
  meta["wall_time_seconds"] = wall_seconds;
  if (r.conjectural >= 0) meta["conjectural"] = r.conjectural != 0;
  if (!r.diagnostics.is_null()) meta["diagnostics"] = r.diagnostics;
  write_json_atomic(path + ".meta.json", meta);

  if (r.table.rows.size() <= 12) {
    std::fputs(render_csv(r.table).c_str(), stdout);
  }
  std::printf("wrote %s (%zu rows) and %s.meta.json in %.2fs\n", path.c_str(),
              r.table.rows.size(), path.c_str(), wall_seconds);
}

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

struct constants_opts {
  std::string model = "rwre";
  double alpha = 1.0;
  double beta = 1.0;
  double theta = 0.5;
  double c_growth = 0.5;
};

run_output run_constants(const constants_opts& o) {
  run_output r;
  r.params = {{"model", o.model}, {"alpha", o.alpha}, {"beta", o.beta}};
  if (o.model == "rwre") {
    const theta_constants k = rwre_constants(o.theta, o.alpha, o.beta);
    r.params["theta"] = o.theta;
    r.table.schema = "constants_rwre";
    r.table.columns = {"model", "theta", "alpha", "beta",
                       "x",     "rate_I", "sigma", "conjectural"};
    r.table.add_row("rwre", o.theta, o.alpha, o.beta, k.x, k.rate_I, k.sigma,
                    k.conjectural);
    r.conjectural = k.conjectural ? 1 : 0;
  } else if (o.model == "fpp") {
    const theta_constants k = fpp_constants(o.theta, o.alpha, o.beta);
    r.params["theta"] = o.theta;
    r.table.schema = "constants_fpp";
    r.table.columns = {"model", "theta", "a",   "b",
                       "kappa", "tau",   "rho", "conjectural"};
    r.table.add_row("fpp", o.theta, o.alpha, o.beta, k.kappa, k.tau, k.rho,
                    k.conjectural);
    r.conjectural = k.conjectural ? 1 : 0;
  } else {
    const extreme_constants_t k = extreme_constants(o.c_growth, o.alpha, o.beta);
    r.params["c"] = o.c_growth;
    r.table.schema = "constants_extreme";
    r.table.columns = {"model", "c",  "alpha", "beta",       "theta0",
                       "x0",    "d",  "sigma0", "conjectural"};
    r.table.add_row("extreme", o.c_growth, o.alpha, o.beta, k.theta0, k.x0, k.d,
                    k.sigma0, k.conjectural);
    r.conjectural = k.conjectural ? 1 : 0;
  }
  return r;
}

// ---------------------------------------------------------------------------
// simulate-rwre
// ---------------------------------------------------------------------------

struct simulate_opts {
  double alpha = 1.0;
  double beta = 1.0;
  int t = 16;
  std::string emit_what = "law";
  int walkers = 5;
};

run_output run_simulate(const simulate_opts& o, const common_opts& c) {
  if (o.t < 0) throw validation_error("simulate-rwre: --t must be >= 0");
  const beta_environment env(o.alpha, o.beta, c.seed);
  run_output r;
  r.params = {{"alpha", o.alpha},
              {"beta", o.beta},
              {"t", o.t},
              {"emit", o.emit_what}};
  if (o.emit_what == "law") {
    const std::vector<double> law = quenched_law(env, o.t);
    r.table.schema = "rwre_law";
    r.table.columns = {"x", "probability"};
    for (int i = 0; i < static_cast<int>(law.size()); ++i) {
      r.table.add_row(std::int64_t(2 * i - o.t), law[i]);
    }
  } else if (o.emit_what == "environment") {
    r.table.schema = "rwre_env";
    r.table.comments = {"alpha=" + format_double(o.alpha) +
                        " beta=" + format_double(o.beta) +
                        " seed=" + std::to_string(c.seed)};
    r.table.columns = {"x", "t", "value"};
    for (int s = 0; s < o.t; ++s) {
      for (int x = -s; x <= s; x += 2) {
        r.table.add_row(std::int64_t(x), std::int64_t(s), env.b(x, s));
      }
    }
  } else {
    if (o.walkers < 1) throw validation_error("simulate-rwre: --walkers must be >= 1");
    r.params["walkers"] = o.walkers;
    r.table.schema = "rwre_paths";
    r.table.columns = {"walker", "s", "x"};
    const std::uint64_t walk_seed = derive_seed(c.seed, 1);
    for (int w = 0; w < o.walkers; ++w) {
      const std::vector<std::int64_t> path = sample_path(env, o.t, walk_seed, w);
      for (int s = 0; s <= o.t; ++s) {
        r.table.add_row(std::int64_t(w), std::int64_t(s), path[s]);
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// polymer
// ---------------------------------------------------------------------------

struct polymer_opts {
  double mu = 1.0;
  double nu = 3.0;
  int t = 12;
};

run_output run_polymer(const polymer_opts& o, const common_opts& c) {
  if (o.t < 0) throw validation_error("polymer: --t must be >= 0");
  const polymer_environment env(o.mu, o.nu, c.seed);
  const std::vector<double> z = partition_function(env, o.t);
  run_output r;
  r.params = {{"mu", o.mu}, {"nu", o.nu}, {"t", o.t}};
  r.table.schema = "polymer_z";
  r.table.columns = {"t", "n", "value", "log_value"};
  for (int n = 1; n <= o.t + 1; ++n) {
    r.table.add_row(o.t, n, z[n - 1], std::log(z[n - 1]));
  }
  return r;
}

// ---------------------------------------------------------------------------
// fpp
// ---------------------------------------------------------------------------

struct fpp_opts {
  double a = 1.0;
  double b = 1.0;
  int imax = 40;
  int jmax = 40;
  std::vector<double> thresholds;
};

run_output run_fpp(const fpp_opts& o, const common_opts& c) {
  if (o.imax < 0 || o.jmax < 0) {
    throw validation_error("fpp: --imax and --jmax must be >= 0");
  }
  const fpp_lattice lat(o.a, o.b, c.seed);
  const std::vector<std::vector<double>> t =
      passage_time_table(lat, o.imax, o.jmax);
  run_output r;
  r.params = {{"a", o.a}, {"b", o.b}, {"imax", o.imax}, {"jmax", o.jmax}};
  if (o.thresholds.empty()) {
    r.table.schema = "fpp_times";
    r.table.columns = {"i", "j", "t_pp"};
    for (int i = 0; i <= o.imax; ++i) {
      for (int j = 0; j <= o.jmax; ++j) {
        r.table.add_row(std::int64_t(i), std::int64_t(j), t[i][j]);
      }
    }
  } else {
    std::vector<double> rs = o.thresholds;
    std::sort(rs.begin(), rs.end());
    r.params["thresholds"] = rs;
    r.table.schema = "fpp_cluster";
    r.table.columns = {"r", "i", "j", "t_pp", "inside"};
    for (double rr : rs) {
      if (!(rr >= 0.0)) throw validation_error("fpp: thresholds must be >= 0");
      for (int i = 0; i <= o.imax; ++i) {
        for (int j = 0; j <= o.jmax; ++j) {
          r.table.add_row(rr, std::int64_t(i), std::int64_t(j), t[i][j],
                          t[i][j] <= rr);
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// moments
// ---------------------------------------------------------------------------

struct moments_opts {
  double mu = 1.0;
  double nu = 3.0;
  int t = 4;
  std::vector<int> n = {2, 1};
};

run_output run_moments(const moments_opts& o) {
  if (o.n.empty()) throw validation_error("moments: --n must be nonempty");
  std::vector<int> n = o.n;
  std::sort(n.rbegin(), n.rend());
  std::string nkey;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) nkey += ';';
    nkey += std::to_string(n[i]);
  }
  const int k = static_cast<int>(n.size());
  const bool equal_entries =
      std::all_of(n.begin(), n.end(), [&](int v) { return v == n[0]; });

  run_output r;
  r.params = {{"mu", o.mu}, {"nu", o.nu}, {"t", o.t}, {"n", n}};
  r.table.schema = "moments";
  r.table.columns = {"t", "n", "k", "method", "value"};
  r.table.add_row(o.t, nkey, k, "exact", exact_moments(o.t, n, o.mu, o.nu));
  if (k <= 3) {
    r.table.add_row(o.t, nkey, k, "nested_contour",
                    nested_contour_moment(o.t, n, o.mu, o.nu));
  }
  if (equal_entries && k <= 5) {
    r.table.add_row(o.t, nkey, k, "single_contour",
                    single_contour_moment(o.t, n[0], k, o.mu, o.nu));
  }
  return r;
}

// ---------------------------------------------------------------------------
// fredholm
// ---------------------------------------------------------------------------

struct fredholm_opts {
  std::string model = "fgue";
  // fgue grid
  double y_min = -5.0;
  double y_max = 3.0;
  double y_step = 0.25;
  // bp (Laplace transform of the polymer partition function)
  int t = 4;
  int n = 2;
  double mu = 1.0;
  double nu = 3.0;
  std::vector<double> u = {-2.0, -1.0, -0.5};
  // fpp (passage-time tail)
  int fn = 2;
  int fm = 2;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> rlist = {0.2, 0.5, 1.2};
};

run_output run_fredholm(const fredholm_opts& o) {
  run_output r;
  if (o.model == "fgue") {
    if (!(o.y_step > 0.0) || !(o.y_min <= o.y_max)) {
      throw validation_error("fredholm: need --y-step > 0 and --y-min <= --y-max");
    }
    const airy_options aopt;
    r.params = {{"model", "fgue"},
                {"y_min", o.y_min},
                {"y_max", o.y_max},
                {"y_step", o.y_step}};
    r.diagnostics = {{"method", "airy_kernel_nystrom"},
                     {"tolerance", aopt.tolerance},
                     {"max_panels", aopt.max_panels}};
    r.table.schema = "fgue";
    r.table.columns = {"y", "fgue"};
    const int count =
        static_cast<int>(std::floor((o.y_max - o.y_min) / o.y_step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) {
      const double y = o.y_min + o.y_step * i;
      r.table.add_row(y, fgue(y, aopt));
    }
  } else if (o.model == "bp") {
    const fredholm_options fopt;
    r.params = {{"model", "bp"}, {"t", o.t}, {"n", o.n},
                {"mu", o.mu},    {"nu", o.nu}, {"u", o.u}};
    r.diagnostics = {{"tolerance", fopt.tolerance},
                     {"max_nodes", fopt.max_nodes}};
    r.table.schema = "bp_laplace";
    r.table.columns = {"t", "n",   "mu",     "nu",
                       "u", "det", "series", "series_remainder"};
    moment_calculator mc(o.mu, o.nu);
    for (double u : o.u) {
      if (!(u < 0.0)) throw validation_error("fredholm: --u values must be < 0");
      const double det = bp_laplace_det(o.t, o.n, o.mu, o.nu, std::log(-u));
      const int order = laplace_truncation_order(std::abs(u), 1e-10);
      const laplace_series series =
          laplace_from_moments(mc, o.t, o.n, u, order);
      r.table.add_row(o.t, o.n, o.mu, o.nu, u, det, series.value.real(),
                      series.remainder_bound);
    }
  } else {
    const fredholm_options fopt;
    r.params = {{"model", "fpp"}, {"n", o.fn}, {"m", o.fm},
                {"a", o.a},       {"b", o.b},  {"r", o.rlist}};
    r.diagnostics = {{"tolerance", fopt.tolerance},
                     {"order", fopt.fpp_order}};
    r.table.schema = "fpp_tail";
    r.table.columns = {"n", "m", "a", "b", "r", "tail"};
    for (double rr : o.rlist) {
      r.table.add_row(o.fn, o.fm, o.a, o.b, rr,
                      fpp_tail_det(o.fn, o.fm, o.a, o.b, rr));
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// tw-rwre / tw-fpp (Tracy-Widom trend experiments with per-size checkpoints)
// ---------------------------------------------------------------------------

struct tw_opts {
  double theta = 0.45;
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<int> sizes;
  int samples = 2000;
  bool no_checkpoint = false;
};

std::string checkpoint_stamp(const std::string& command, const tw_opts& o,
                             std::uint64_t seed, int size) {
  return "command=" + command + " theta=" + format_double(o.theta) +
         " alpha=" + format_double(o.alpha) + " beta=" + format_double(o.beta) +
         " size=" + std::to_string(size) +
         " samples=" + std::to_string(o.samples) +
         " seed=" + std::to_string(seed);
}

bool load_checkpoint(const std::string& path, const std::string& stamp,
                     int samples, std::vector<double>& stats) {
  csv_table t;
  try {
    t = read_csv(path);
  } catch (const io_error&) {
    return false;
  }
  if (t.schema != "tw_checkpoint" || t.comments.size() != 1 ||
      t.comments[0] != stamp || static_cast<int>(t.rows.size()) != samples) {
    return false;
  }
  stats.clear();
  stats.reserve(t.rows.size());
  try {
    for (const auto& row : t.rows) stats.push_back(cell_to_double(row.at(1)));
  } catch (const io_error&) {
    return false;
  }
  return true;
}

void write_checkpoint(const std::string& path, const std::string& stamp,
                      const std::vector<double>& stats) {
  csv_table t;
  t.schema = "tw_checkpoint";
  t.comments = {stamp};
  t.columns = {"index", "statistic"};
  for (std::size_t i = 0; i < stats.size(); ++i) {
    t.add_row(std::int64_t(i), stats[i]);
  }
  write_csv_atomic(path, t);
}

run_output run_tw(const std::string& command, const tw_opts& o,
                  const common_opts& c) {
  const bool is_rwre = command == "tw-rwre";
  const theta_constants k = is_rwre
                                ? rwre_constants(o.theta, o.alpha, o.beta)
                                : fpp_constants(o.theta, o.alpha, o.beta);
  if (o.sizes.empty()) throw validation_error(command + ": size list is empty");
  if (o.samples < 1) throw validation_error(command + ": --samples must be >= 1");

  run_output r;
  r.params = {{"theta", o.theta},
              {is_rwre ? "alpha" : "a", o.alpha},
              {is_rwre ? "beta" : "b", o.beta},
              {is_rwre ? "t" : "n", o.sizes},
              {"samples", o.samples}};
  r.conjectural = k.conjectural ? 1 : 0;
  r.table.schema = "tw_trend";
  r.table.columns = {"size", "y", "empirical_cdf", "fgue", "ks"};
  json points = json::array();

  const std::string base = data_path(command, c);
  for (int size : o.sizes) {
    const std::string part = base + (is_rwre ? ".t" : ".n") +
                             std::to_string(size) + ".part.csv";
    const std::string stamp = checkpoint_stamp(command, o, c.seed, size);
    std::vector<double> stats;
    bool resumed = false;
    if (!o.no_checkpoint && load_checkpoint(part, stamp, o.samples, stats)) {
      resumed = true;
    } else {
      const auto res = is_rwre
                           ? tw_experiment_rwre(o.theta, o.alpha, o.beta,
                                                {size}, o.samples, c.seed)
                           : tw_experiment_fpp(o.theta, o.alpha, o.beta,
                                               {size}, o.samples, c.seed);
      stats = res.points[0].statistic;
      if (!o.no_checkpoint) write_checkpoint(part, stamp, stats);
    }

    const double n = static_cast<double>(stats.size());
    double mean = 0.0;
    for (double v : stats) mean += v;
    mean /= n;
    const double ks =
        ks_statistic_vs_cdf(stats, [](double y) { return fgue_cdf(y); });
    const std::int64_t location =
        is_rwre ? lattice_round(k.x * size, size)
                : static_cast<std::int64_t>(std::llround(k.kappa * size));
    for (std::size_t i = 0; i < stats.size(); ++i) {
      r.table.add_row(std::int64_t(size), stats[i], double(i + 1) / n,
                      fgue_cdf(stats[i]), ks);
    }
    points.push_back({{"size", size},
                      {"location", location},
                      {"ks_to_fgue", ks},
                      {"mean", mean},
                      {"resumed_from_checkpoint", resumed}});
    std::printf("size=%6d  location=%lld  ks=%.4f  mean=%.4f%s\n", size,
                static_cast<long long>(location), ks, mean,
                resumed ? "  (checkpoint)" : "");
    std::fflush(stdout);
  }
  r.diagnostics = {{"points", points},
                   {"constants",
                    {{"x", k.x},
                     {"rate_I", k.rate_I},
                     {"sigma", k.sigma},
                     {"kappa", k.kappa},
                     {"tau", k.tau},
                     {"rho", k.rho}}}};
  return r;
}

// ---------------------------------------------------------------------------
// extreme
// ---------------------------------------------------------------------------

struct extreme_opts {
  double c_growth = 0.5;
  double alpha = 1.0;
  double beta = 1.0;
  int t = 200;
  int samples = 2000;
};

run_output run_extreme(const extreme_opts& o, const common_opts& c) {
  const extreme_result res = extreme_experiment(o.c_growth, o.alpha, o.beta,
                                                o.t, o.samples, c.seed);
  run_output r;
  r.params = {{"c", o.c_growth},
              {"alpha", o.alpha},
              {"beta", o.beta},
              {"t", o.t},
              {"samples", o.samples}};
  r.conjectural = res.conjectural ? 1 : 0;
  r.table.schema = "extreme";
  r.table.columns = {"t", "y", "empirical_cdf", "fgue", "gumbel"};
  for (std::size_t i = 0; i < res.y.size(); ++i) {
    r.table.add_row(std::int64_t(o.t), res.y[i], res.empirical[i], res.fgue[i],
                    res.gumbel[i]);
  }
  r.diagnostics = {{"ks_to_fgue", res.ks_to_fgue},
                   {"limit_curve_distance", res.limit_curve_distance},
                   {"constants",
                    {{"theta0", res.constants.theta0},
                     {"x0", res.constants.x0},
                     {"d", res.constants.d},
                     {"sigma0", res.constants.sigma0}}}};
  std::printf("t=%6d  ks_to_fgue=%.4f  limit_curve_distance=%.4f\n", o.t,
              res.ks_to_fgue, res.limit_curve_distance);
  return r;
}

// ---------------------------------------------------------------------------
// overlap
// ---------------------------------------------------------------------------

struct overlap_opts {
  double alpha = 1.0;
  int t_max = 1000;
};

run_output run_overlap(const overlap_opts& o) {
  const overlap_series s = collision_series(o.alpha, o.t_max);
  const double asym = collision_asymptote(o.alpha);
  run_output r;
  r.params = {{"alpha", o.alpha}, {"t_max", o.t_max}};
  r.table.schema = "overlap";
  r.table.columns = {"t", "P_t", "sqrt_t_Pt", "asymptote"};
  for (int t = 0; t <= o.t_max; ++t) {
    r.table.add_row(std::int64_t(t), s.P[t], std::sqrt(double(t)) * s.P[t],
                    asym);
  }
  r.diagnostics = {{"r", s.r}};
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "betalab: numerical laboratory for a nearest-neighbour random walk in "
      "a Beta-distributed random environment, the equivalent directed "
      "polymer, and Bernoulli-Exponential first-passage percolation"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  common_opts c_constants, c_simulate, c_polymer, c_fpp, c_moments,
      c_fredholm, c_tw_rwre, c_tw_fpp, c_extreme, c_overlap;

  // constants
  constants_opts k_opts;
  CLI::App* constants =
      app.add_subcommand("constants",
                         "Limit-theorem constants (velocity, rate, scales) at "
                         "a critical point");
  constants->add_option("--model", k_opts.model, "Which family of constants")
      ->check(CLI::IsMember({"rwre", "fpp", "extreme"}))
      ->capture_default_str();
  constants->add_option("--alpha,--a", k_opts.alpha, "Shape alpha / rate a")
      ->capture_default_str();
  constants->add_option("--beta,--b", k_opts.beta, "Shape beta / rate b")
      ->capture_default_str();
  constants->add_option("--theta", k_opts.theta, "Critical point (rwre, fpp)")
      ->capture_default_str();
  constants->add_option("--c", k_opts.c_growth, "Walker growth rate (extreme)")
      ->capture_default_str();
  add_common(constants, c_constants);

  // simulate-rwre
  simulate_opts sim_opts;
  CLI::App* simulate = app.add_subcommand(
      "simulate-rwre",
      "Sample one environment: quenched law, environment table, or paths");
  simulate->add_option("--alpha", sim_opts.alpha, "Beta shape alpha")
      ->capture_default_str();
  simulate->add_option("--beta", sim_opts.beta, "Beta shape beta")
      ->capture_default_str();
  simulate->add_option("--t", sim_opts.t, "Time horizon")->capture_default_str();
  simulate->add_option("--emit", sim_opts.emit_what, "What to write")
      ->check(CLI::IsMember({"law", "environment", "paths"}))
      ->capture_default_str();
  simulate->add_option("--walkers", sim_opts.walkers,
                       "Trajectories to sample (emit=paths)")
      ->capture_default_str();
  add_common(simulate, c_simulate);

  // polymer
  polymer_opts poly_opts;
  CLI::App* polymer = app.add_subcommand(
      "polymer", "Point-to-point polymer partition function slice Z(t, n)");
  polymer->add_option("--mu", poly_opts.mu, "Shape mu (0 < mu < nu)")
      ->capture_default_str();
  polymer->add_option("--nu", poly_opts.nu, "Shape nu")->capture_default_str();
  polymer->add_option("--t", poly_opts.t, "Time slice")->capture_default_str();
  add_common(polymer, c_polymer);

  // fpp
  fpp_opts f_opts;
  CLI::App* fpp = app.add_subcommand(
      "fpp", "First-passage percolation: point-to-point times or cluster "
             "snapshots at time thresholds");
  fpp->add_option("--a", f_opts.a, "Exponential rate a (vertical edges)")
      ->capture_default_str();
  fpp->add_option("--b", f_opts.b, "Exponential rate b (horizontal edges)")
      ->capture_default_str();
  fpp->add_option("--imax", f_opts.imax, "Bounding box extent in i")
      ->capture_default_str();
  fpp->add_option("--jmax", f_opts.jmax, "Bounding box extent in j")
      ->capture_default_str();
  fpp->add_option("--thresholds", f_opts.thresholds,
                  "Time thresholds; emits per-threshold cluster membership")
      ->delimiter(',');
  add_common(fpp, c_fpp);

  // moments
  moments_opts m_opts;
  CLI::App* moments = app.add_subcommand(
      "moments", "Mixed moments of the polymer partition function, one row "
                 "per evaluation method");
  moments->add_option("--mu", m_opts.mu, "Shape mu (0 < mu < nu)")
      ->capture_default_str();
  moments->add_option("--nu", m_opts.nu, "Shape nu")->capture_default_str();
  moments->add_option("--t", m_opts.t, "Time")->capture_default_str();
  moments->add_option("--n", m_opts.n, "Coordinates n1,n2,... (k = count)")
      ->delimiter(',')
      ->capture_default_str();
  add_common(moments, c_moments);

  // fredholm
  fredholm_opts fr_opts;
  CLI::App* fredholm = app.add_subcommand(
      "fredholm", "Fredholm determinants: GUE Tracy-Widom CDF, polymer "
                  "Laplace transform, or passage-time tail");
  fredholm->add_option("--model", fr_opts.model, "Which determinant")
      ->check(CLI::IsMember({"fgue", "bp", "fpp"}))
      ->capture_default_str();
  fredholm->add_option("--y-min", fr_opts.y_min, "Grid start (fgue)")
      ->capture_default_str();
  fredholm->add_option("--y-max", fr_opts.y_max, "Grid end (fgue)")
      ->capture_default_str();
  fredholm->add_option("--y-step", fr_opts.y_step, "Grid step (fgue)")
      ->capture_default_str();
  fredholm->add_option("--t", fr_opts.t, "Time (bp)")->capture_default_str();
  fredholm->add_option("--n", fr_opts.fn, "Coordinate n (bp: endpoint, fpp)")
      ->capture_default_str();
  fredholm->add_option("--mu", fr_opts.mu, "Shape mu (bp)")->capture_default_str();
  fredholm->add_option("--nu", fr_opts.nu, "Shape nu (bp)")->capture_default_str();
  fredholm->add_option("--u", fr_opts.u, "Laplace arguments u < 0 (bp)")
      ->delimiter(',')
      ->capture_default_str();
  fredholm->add_option("--m", fr_opts.fm, "Coordinate m (fpp)")
      ->capture_default_str();
  fredholm->add_option("--a", fr_opts.a, "Rate a (fpp)")->capture_default_str();
  fredholm->add_option("--b", fr_opts.b, "Rate b (fpp)")->capture_default_str();
  fredholm->add_option("--r", fr_opts.rlist, "Tail thresholds (fpp)")
      ->delimiter(',')
      ->capture_default_str();
  add_common(fredholm, c_fredholm);

  // tw-rwre
  tw_opts twr_opts;
  twr_opts.sizes = {100, 400, 1600};
  CLI::App* tw_rwre = app.add_subcommand(
      "tw-rwre", "Tracy-Widom fluctuation trend for the walker's quenched "
                 "tail along the critical ray");
  tw_rwre->add_option("--theta", twr_opts.theta, "Critical point")
      ->capture_default_str();
  tw_rwre->add_option("--alpha", twr_opts.alpha, "Beta shape alpha")
      ->capture_default_str();
  tw_rwre->add_option("--beta", twr_opts.beta, "Beta shape beta")
      ->capture_default_str();
  tw_rwre->add_option("--t", twr_opts.sizes, "Time horizons t1,t2,...")
      ->delimiter(',')
      ->capture_default_str();
  tw_rwre->add_option("--samples", twr_opts.samples, "Environments per horizon")
      ->capture_default_str();
  tw_rwre->add_flag("--no-checkpoint", twr_opts.no_checkpoint,
                    "Disable per-horizon checkpoint files");
  add_common(tw_rwre, c_tw_rwre);

  // tw-fpp
  tw_opts twf_opts;
  twf_opts.theta = 1.0;
  twf_opts.sizes = {50, 200, 800};
  CLI::App* tw_fpp = app.add_subcommand(
      "tw-fpp", "Tracy-Widom fluctuation trend for first-passage times along "
                "the characteristic direction");
  tw_fpp->add_option("--theta", twf_opts.theta, "Critical point")
      ->capture_default_str();
  tw_fpp->add_option("--a,--alpha", twf_opts.alpha, "Exponential rate a")
      ->capture_default_str();
  tw_fpp->add_option("--b,--beta", twf_opts.beta, "Exponential rate b")
      ->capture_default_str();
  tw_fpp->add_option("--n", twf_opts.sizes, "Endpoint scales n1,n2,...")
      ->delimiter(',')
      ->capture_default_str();
  tw_fpp->add_option("--samples", twf_opts.samples, "Lattices per scale")
      ->capture_default_str();
  tw_fpp->add_flag("--no-checkpoint", twf_opts.no_checkpoint,
                   "Disable per-scale checkpoint files");
  add_common(tw_fpp, c_tw_fpp);

  // extreme
  extreme_opts ex_opts;
  CLI::App* extreme = app.add_subcommand(
      "extreme", "Extreme-value experiment: maximum of many walkers in one "
                 "environment vs. the GUE Tracy-Widom and Gumbel curves");
  extreme->add_option("--c", ex_opts.c_growth, "Walker count growth rate")
      ->capture_default_str();
  extreme->add_option("--alpha", ex_opts.alpha, "Beta shape alpha")
      ->capture_default_str();
  extreme->add_option("--beta", ex_opts.beta, "Beta shape beta")
      ->capture_default_str();
  extreme->add_option("--t", ex_opts.t, "Time horizon")->capture_default_str();
  extreme->add_option("--samples", ex_opts.samples, "Environments")
      ->capture_default_str();
  add_common(extreme, c_extreme);

  // overlap
  overlap_opts ov_opts;
  CLI::App* overlap = app.add_subcommand(
      "overlap", "Exact two-walker collision-probability series and its "
                 "asymptote");
  overlap->add_option("--alpha", ov_opts.alpha, "Beta shape (driftless model)")
      ->capture_default_str();
  overlap->add_option("--t-max", ov_opts.t_max, "Series length")
      ->capture_default_str();
  add_common(overlap, c_overlap);

  const auto timed = [](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    run_output r = fn();
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return std::pair<run_output, double>(std::move(r), wall);
  };

  constants->callback([&] {
    apply_threads(c_constants.threads);
    auto [r, wall] = timed([&] { return run_constants(k_opts); });
    emit("constants", c_constants, std::move(r), wall);
  });
  simulate->callback([&] {
    apply_threads(c_simulate.threads);
    auto [r, wall] = timed([&] { return run_simulate(sim_opts, c_simulate); });
    emit("simulate-rwre", c_simulate, std::move(r), wall);
  });
  polymer->callback([&] {
    apply_threads(c_polymer.threads);
    auto [r, wall] = timed([&] { return run_polymer(poly_opts, c_polymer); });
    emit("polymer", c_polymer, std::move(r), wall);
  });
  fpp->callback([&] {
    apply_threads(c_fpp.threads);
    auto [r, wall] = timed([&] { return run_fpp(f_opts, c_fpp); });
    emit("fpp", c_fpp, std::move(r), wall);
  });
  moments->callback([&] {
    apply_threads(c_moments.threads);
    auto [r, wall] = timed([&] { return run_moments(m_opts); });
    emit("moments", c_moments, std::move(r), wall);
  });
  fredholm->callback([&] {
    apply_threads(c_fredholm.threads);
    auto [r, wall] = timed([&] { return run_fredholm(fr_opts); });
    emit("fredholm", c_fredholm, std::move(r), wall);
  });
  tw_rwre->callback([&] {
    apply_threads(c_tw_rwre.threads);
    auto [r, wall] =
        timed([&] { return run_tw("tw-rwre", twr_opts, c_tw_rwre); });
    emit("tw-rwre", c_tw_rwre, std::move(r), wall);
  });
  tw_fpp->callback([&] {
    apply_threads(c_tw_fpp.threads);
    auto [r, wall] = timed([&] { return run_tw("tw-fpp", twf_opts, c_tw_fpp); });
    emit("tw-fpp", c_tw_fpp, std::move(r), wall);
  });
  extreme->callback([&] {
    apply_threads(c_extreme.threads);
    auto [r, wall] = timed([&] { return run_extreme(ex_opts, c_extreme); });
    emit("extreme", c_extreme, std::move(r), wall);
  });
  overlap->callback([&] {
    apply_threads(c_overlap.threads);
    auto [r, wall] = timed([&] { return run_overlap(ov_opts); });
    emit("overlap", c_overlap, std::move(r), wall);
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n\n%s", e.what(), app.help().c_str());
    return 2;
  } catch (const validation_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const convergence_error& e) {
    std::fprintf(stderr, "convergence error: %s\n", e.what());
    return 3;
  } catch (const io_error& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
