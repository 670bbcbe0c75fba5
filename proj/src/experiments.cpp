// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#include "scatterlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "scatterlab/detail/parallel.hpp"

namespace scatterlab {

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "na";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_hash(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// experiment,seed,config_hash prefix carried by every row.
std::string row_prefix(const ExperimentConfig& cfg) {
  return experiment_name(cfg.kind) + "," + std::to_string(cfg.seed) + "," +
         fmt_hash(config_hash(cfg)) + ",";
}

// z-score with a zero-variance guard (estimators can be exactly constant).
double component_z(double deviation, double se) {
  if (se > 0.0) return std::abs(deviation) / se;
  return std::abs(deviation) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
  if (cfg.n_samples < 1) throw ConfigError("samples", "samples must be >= 1");
  if (cfg.threads < 1) throw ConfigError("threads", "threads must be >= 1");
  if (cfg.dim_cap < 2) throw ConfigError("dim-cap", "dimension cap must be >= 2");

  if (cfg.kind == ExperimentKind::kMoments) {
    if (cfg.moment_dims.empty()) throw ConfigError("dims", "moment dims must not be empty");
    for (long d : cfg.moment_dims)
      if (d < 2 || d > cfg.dim_cap)
        throw ConfigError("dims", "moment dims must lie in [2, dim cap]");
    if (cfg.n_samples < 2) throw ConfigError("samples", "moments needs samples >= 2");
    return;
  }

  if (cfg.n_inner < 0 || cfg.n_inner > 22) throw ConfigError("ni", "ni must be in [0, 22]");
  if (cfg.n_boundary < 0 || cfg.n_boundary > 12)
    throw ConfigError("nb", "nb must be in [0, 12]");
  if (cfg.n_env < 0) throw ConfigError("ne", "ne must be >= 0");
  if (cfg.n_env > 11) throw ConfigError("ne", "ne is capped at 11 for simulation experiments");
  if (cfg.n_boundary + cfg.n_env < 1)
    throw ConfigError("nb", "need at least one boundary or environment qubit");
  try {
    TripartiteDims::qubits(cfg.n_inner, cfg.n_boundary, cfg.n_env, cfg.dim_cap);
  } catch (const std::exception& e) {
    throw ConfigError("dims", e.what());
  }

  const bool ghz_or_w =
      cfg.family == StateFamily::kGhz || cfg.family == StateFamily::kW;
  if (cfg.fiducial && !ghz_or_w)
    throw ConfigError("fiducial", "fiducial extension only applies to ghz/w");
  if (ghz_or_w) {
    if (cfg.n_inner < 1) throw ConfigError("ni", "ghz/w need at least one inner qubit");
    if (cfg.n_boundary < 1) throw ConfigError("nb", "ghz/w need at least one boundary qubit");
    if (cfg.fiducial && cfg.n_inner + cfg.n_boundary != 3)
      throw ConfigError("fiducial", "fiducial extension requires a 3-qubit system (ni+nb=3)");
  }
  if (cfg.family == StateFamily::kMaxEntangledIb && cfg.n_boundary > cfg.n_inner)
    throw ConfigError("nb", "max-entangled requires d_B <= d_I");
  if (cfg.family == StateFamily::kCustom && cfg.state_file.empty())
    throw ConfigError("state-file", "custom family needs --state-file");

  if (cfg.kind == ExperimentKind::kConcentration) {
    if (cfg.epsilon_grid.empty()) throw ConfigError("epsilon", "epsilon grid must not be empty");
    for (double e : cfg.epsilon_grid)
      if (!(e > 0.0)) throw ConfigError("epsilon", "epsilon values must be > 0");
    if (cfg.n_samples < 2) throw ConfigError("samples", "concentration needs samples >= 2");
  }
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os << "experiment=" << experiment_name(cfg.kind) << ";ni=" << cfg.n_inner
     << ";nb=" << cfg.n_boundary << ";ne=" << cfg.n_env
     << ";family=" << family_name(cfg.family) << ";fiducial=" << (cfg.fiducial ? 1 : 0)
     << ";samples=" << cfg.n_samples << ";seed=" << cfg.seed << ";epsilon=";
  for (std::size_t i = 0; i < cfg.epsilon_grid.size(); ++i)
    os << (i ? "," : "") << fmt(cfg.epsilon_grid[i]);
  os << ";dims=";
  for (std::size_t i = 0; i < cfg.moment_dims.size(); ++i)
    os << (i ? "," : "") << cfg.moment_dims[i];
  // threads and dim_cap are execution details, not result-determining, and
  // must not perturb the hash: equal-seed runs emit byte-identical CSV.
  os << ";state_file=" << cfg.state_file;
  return os.str();
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 14695981039346656037ULL;  // FNV-1a
  for (unsigned char c : serialize_config(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kDecoupling: return "decoupling";
    case ExperimentKind::kPurityScan: return "purity-scan";
    case ExperimentKind::kConcentration: return "concentration";
    case ExperimentKind::kMoments: return "moments";
  }
  throw std::logic_error("experiment_name: unreachable");
}

ExperimentKind parse_experiment(const std::string& name) {
  if (name == "decoupling") return ExperimentKind::kDecoupling;
  if (name == "purity-scan") return ExperimentKind::kPurityScan;
  if (name == "concentration") return ExperimentKind::kConcentration;
  if (name == "moments") return ExperimentKind::kMoments;
  throw ConfigError("experiment", "unknown experiment: " + name);
}

std::string family_name(StateFamily family) {
  switch (family) {
    case StateFamily::kGhz: return "ghz";
    case StateFamily::kW: return "w";
    case StateFamily::kProduct: return "product";
    case StateFamily::kMaxEntangledIb: return "max-entangled";
    case StateFamily::kRandomPure: return "random";
    case StateFamily::kCustom: return "custom";
  }
  throw std::logic_error("family_name: unreachable");
}

StateFamily parse_family(const std::string& name) {
  if (name == "ghz") return StateFamily::kGhz;
  if (name == "w") return StateFamily::kW;
  if (name == "product") return StateFamily::kProduct;
  if (name == "max-entangled") return StateFamily::kMaxEntangledIb;
  if (name == "random") return StateFamily::kRandomPure;
  if (name == "custom") return StateFamily::kCustom;
  throw ConfigError("family", "unknown family: " + name);
}

std::string csv_header(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kPurityScan:
      return "experiment,seed,config_hash,row_type,sample_index,purity,analytic,mc_mean,"
             "mc_se,z,n_samples";
    case ExperimentKind::kDecoupling:
      return "experiment,seed,config_hash,row_type,checkpoint,trace_distance,slope,"
             "final_distance,inner_marginal_distance,n_samples";
    case ExperimentKind::kConcentration:
      return "experiment,seed,config_hash,row_type,epsilon,offset,bound,empirical_tail,"
             "mean_distance,mean_distance_bound,family,n_env,purity_sd,n_samples";
    case ExperimentKind::kMoments:
      return "experiment,seed,config_hash,row_type,d,case,analytic,estimate_re,"
             "estimate_im,se_re,se_im,z,n_samples";
  }
  throw std::logic_error("csv_header: unreachable");
}

StateVector build_family_state(const ExperimentConfig& cfg, TripartiteDims* dims_out) {
  const TripartiteDims dims =
      TripartiteDims::qubits(cfg.n_inner, cfg.n_boundary, cfg.n_env, cfg.dim_cap);
  if (dims_out) *dims_out = dims;
  RngStream state_rng(cfg.seed, 1);  // separate from the MC sample streams
  switch (cfg.family) {
    case StateFamily::kGhz:
      return cfg.fiducial ? fiducial_extend(ghz(cfg.n_inner + cfg.n_boundary), cfg.n_env)
                          : ghz(cfg.n_inner + cfg.n_boundary + cfg.n_env);
    case StateFamily::kW:
      return cfg.fiducial ? fiducial_extend(w(cfg.n_inner + cfg.n_boundary), cfg.n_env)
                          : w(cfg.n_inner + cfg.n_boundary + cfg.n_env);
    case StateFamily::kProduct: {
      const Vector inner = random_pure_state(dims.d_inner, state_rng).amplitudes();
      const Vector boundary = random_pure_state(dims.d_boundary, state_rng).amplitudes();
      const Vector env = random_pure_state(dims.d_env, state_rng).amplitudes();
      return StateVector(kron(kron(inner, boundary), env));
    }
    case StateFamily::kMaxEntangledIb:
      return StateVector(kron(max_entangled_ib(dims.d_inner, dims.d_boundary).amplitudes(),
                              basis_state(dims.d_env, 0).amplitudes()));
    case StateFamily::kRandomPure:
      return random_pure_state(dims.total(), state_rng);
    case StateFamily::kCustom: {
      StateVector psi = load_amplitude_file(cfg.state_file);
      if (psi.dim() != dims.total())
        throw ConfigError("state-file", "amplitude count does not match 2^(ni+nb+ne)");
      return psi;
    }
  }
  throw std::logic_error("build_family_state: unreachable");
}

double analytic_mean_purity(const ExperimentConfig& cfg, const StateVector& psi,
                            const TripartiteDims& dims) {
  const double d_env = static_cast<double>(dims.d_env);
  switch (cfg.family) {
    case StateFamily::kGhz:
      return cfg.fiducial
                 ? mean_purity_fiducial(StateFamily::kGhz, cfg.n_boundary, cfg.n_env)
                 : mean_purity_ghz(cfg.n_inner + cfg.n_boundary + cfg.n_env, cfg.n_inner,
                                   cfg.n_boundary);
    case StateFamily::kW:
      return cfg.fiducial
                 ? mean_purity_fiducial(StateFamily::kW, cfg.n_boundary, cfg.n_env)
                 : mean_purity_w(cfg.n_inner + cfg.n_boundary + cfg.n_env, cfg.n_inner,
                                 cfg.n_boundary);
    case StateFamily::kProduct:
      return mean_purity_product(dims.d_boundary, d_env);
    case StateFamily::kMaxEntangledIb:
      return mean_purity_max_entangled(dims.d_boundary, d_env);
    default:
      return mean_purity_pure(psi, dims);  // Eq. 10 for arbitrary pure input
  }
}

std::vector<long> decade_checkpoints(long n) {
  std::vector<long> cps;
  for (long c = 100; c < n; c *= 10) cps.push_back(c);
  cps.push_back(n);
  return cps;
}

std::vector<long> quarter_decade_checkpoints(long n) {
  static constexpr double kMults[4] = {1.0, 1.778, 3.162, 5.623};
  std::vector<long> cps;
  for (long base = 100; base < n; base *= 10)
    for (double m : kMults) {
      const long c = std::lround(static_cast<double>(base) * m);
      if (c < n) cps.push_back(c);
    }
  cps.push_back(n);
  return cps;
}

double fit_loglog_slope(const std::vector<long>& ns, const std::vector<double>& ds) {
  if (ns.size() != ds.size() || ns.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need >= 2 points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double x = std::log(static_cast<double>(ns[i]));
    const double y = std::log(std::max(ds[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

DecouplingResult decoupling_run(const StateVector& psi, const TripartiteDims& dims,
                                const std::vector<long>& checkpoints, const RngStream& rng,
                                int threads) {
  if (checkpoints.empty()) throw std::invalid_argument("decoupling_run: no checkpoints");
  for (std::size_t i = 0; i < checkpoints.size(); ++i)
    if (checkpoints[i] < 1 || (i > 0 && checkpoints[i] <= checkpoints[i - 1]))
      throw std::invalid_argument("decoupling_run: checkpoints must be ascending and >= 1");
  const PureScatterPlan plan(psi, dims);
  const Matrix uncond = unconditional_state(psi, dims).matrix();
  const long d_ib = dims.inner_boundary();

  DecouplingResult res;
  res.checkpoints = checkpoints;
  Matrix total = Matrix::Zero(d_ib, d_ib);
  long done = 0;
  for (long ck : checkpoints) {
    // Segment [done, ck) accumulated in fixed chunk order, so the running
    // prefix mean is identical for any thread count.
    const auto chunks = detail::make_chunks(done, ck);
    std::vector<Matrix> parts(chunks.size());
    detail::for_each_chunk(done, ck, threads, [&](const detail::SampleChunk& c) {
      Matrix sum = Matrix::Zero(d_ib, d_ib);
      for (long s = c.begin; s < c.end; ++s) {
        RngStream stream = rng.substream(static_cast<std::uint64_t>(s));
        sum += plan.sample_conditional_raw(stream);
      }
      parts[c.index] = std::move(sum);
    });
    for (const auto& p : parts) total += p;
    done = ck;
    res.distances.push_back(trace_norm(total / static_cast<double>(done) - uncond));
  }
  res.final_distance = res.distances.back();
  res.slope = checkpoints.size() >= 2 ? fit_loglog_slope(res.checkpoints, res.distances)
                                      : std::numeric_limits<double>::quiet_NaN();
  const Matrix mean = total / static_cast<double>(done);
  const TripartiteDims ib(dims.d_inner, dims.d_boundary, 1);
  res.inner_marginal_distance = trace_norm(partial_trace_raw(mean, ib, kInner) -
                                           reduced_pure_raw(psi.amplitudes(), dims, kInner));
  return res;
}

ExperimentReport run_purity_scan(const ExperimentConfig& cfg, std::ostream& out) {
  validate(cfg);
  TripartiteDims dims(1, 1, 1);
  const StateVector psi = build_family_state(cfg, &dims);
  const double analytic = analytic_mean_purity(cfg, psi, dims);
  const RngStream root(cfg.seed);
  const auto purities =
      sample_conditional_purities(psi, dims, cfg.n_samples, root, cfg.threads);

  const std::string prefix = row_prefix(cfg);
  out << csv_header(cfg.kind) << "\n";
  for (std::size_t i = 0; i < purities.size(); ++i)
    out << prefix << "sample," << i << "," << fmt(purities[i]) << ",,,,,\n";

  RunningStats stats;
  for (double p : purities) stats.add(p);
  ExperimentReport report;
  std::string se_str = "na", z_str = "na";
  if (cfg.n_samples >= 2) {
    const double se = stats.standard_error();
    const double z = component_z(stats.mean() - analytic, se);
    se_str = fmt(se);
    z_str = fmt(z);
    report.passed = z <= 4.0;
  }
  out << prefix << "summary,,," << fmt(analytic) << "," << fmt(stats.mean()) << "," << se_str
      << "," << z_str << "," << cfg.n_samples << "\n";
  std::ostringstream summary;
  summary << "purity-scan: analytic=" << fmt(analytic) << " mc=" << fmt(stats.mean())
          << " se=" << se_str << " z=" << z_str << (report.passed ? " [pass]" : " [FAIL]");
  report.summary = summary.str();
  return report;
}

ExperimentReport run_decoupling(const ExperimentConfig& cfg, std::ostream& out) {
  validate(cfg);
  TripartiteDims dims(1, 1, 1);
  const StateVector psi = build_family_state(cfg, &dims);
  const RngStream root(cfg.seed);
  const DecouplingResult res =
      decoupling_run(psi, dims, decade_checkpoints(cfg.n_samples), root, cfg.threads);

  const std::string prefix = row_prefix(cfg);
  out << csv_header(cfg.kind) << "\n";
  for (std::size_t i = 0; i < res.checkpoints.size(); ++i)
    out << prefix << "checkpoint," << res.checkpoints[i] << "," << fmt(res.distances[i])
        << ",,,,\n";
  out << prefix << "summary,,," << fmt(res.slope) << "," << fmt(res.final_distance) << ","
      << fmt(res.inner_marginal_distance) << "," << cfg.n_samples << "\n";

  ExperimentReport report;
  const bool slope_ok = std::isnan(res.slope) || std::abs(res.slope + 0.5) <= 0.15;
  report.passed = res.final_distance < 0.05 && slope_ok;
  std::ostringstream summary;
  summary << "decoupling: final_distance=" << fmt(res.final_distance)
          << " slope=" << fmt(res.slope)
          << " inner_marginal=" << fmt(res.inner_marginal_distance)
          << (report.passed ? " [pass]" : " [FAIL]");
  report.summary = summary.str();
  return report;
}

ExperimentReport run_concentration(const ExperimentConfig& cfg, std::ostream& out) {
  validate(cfg);
  const TripartiteDims dims =
      TripartiteDims::qubits(cfg.n_inner, cfg.n_boundary, cfg.n_env, cfg.dim_cap);
  const DensityMatrix rho_inner(
      Matrix::Identity(dims.d_inner, dims.d_inner) / static_cast<double>(dims.d_inner));
  const RngStream tail_root(cfg.seed, 101);
  const RngStream fluct_root(cfg.seed, 202);
  const long n = cfg.n_samples;

  const std::string prefix = row_prefix(cfg);
  out << csv_header(cfg.kind) << "\n";
  ExperimentReport report;

  for (double eps : cfg.epsilon_grid) {
    const LevyBoundReport rep =
        empirical_tail(rho_inner, dims, eps, n, tail_root, cfg.threads);
    const double tail = *rep.empirical_tail;
    const double se = std::sqrt(tail * (1.0 - tail) / static_cast<double>(n));
    if (tail > rep.bound + 3.0 * se) report.passed = false;
    out << prefix << "tail," << fmt(eps) << "," << fmt(rep.offset) << "," << fmt(rep.bound)
        << "," << fmt(tail) << ",,,,,," << n << "\n";
  }

  const MonteCarloEstimate mean_dist = empirical_mean_distance(dims, n, tail_root, cfg.threads);
  const double dist_bound = mean_distance_upper_bound(dims.d_boundary, dims.d_env);
  if (mean_dist.mean > dist_bound + 3.0 * mean_dist.standard_error) report.passed = false;
  out << prefix << "mean_distance,,,,," << fmt(mean_dist.mean) << "," << fmt(dist_bound)
      << ",,,," << n << "\n";

  std::ostringstream summary;
  summary << "concentration: mean_distance=" << fmt(mean_dist.mean) << " bound="
          << fmt(dist_bound);

  if (cfg.family == StateFamily::kGhz || cfg.family == StateFamily::kW) {
    // Fluctuation sweep over the reference environment sizes on the 3-qubit
    // system; the split is (n_I, 3 - n_I) with n_I clamped to {1, 2}.
    const int si = std::clamp(cfg.n_inner, 1, 2);
    const int sb = 3 - si;
    std::vector<int> sweep;
    for (int ne : {1, 2, 6, 10})
      if (ne <= 11 && (1L << (sb + ne)) <= cfg.dim_cap) sweep.push_back(ne);
    const auto points =
        purity_fluctuation_sweep(cfg.family, si, sb, sweep, n, fluct_root, cfg.threads);
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& pt : points) {
      if (!(pt.purity_sd < prev)) report.passed = false;
      prev = pt.purity_sd;
      out << prefix << "fluctuation,,,,,,," << family_name(cfg.family) << "," << pt.n_env
          << "," << fmt(pt.purity_sd) << "," << pt.n_samples << "\n";
    }
    summary << " fluctuation_points=" << points.size();
  }

  summary << (report.passed ? " [pass]" : " [FAIL]");
  report.summary = summary.str();
  return report;
}

namespace {

struct MomentPattern {
  const char* label;
  bool is_p2;
  long a[8];  // p1 uses (i,j,k,l) in a[0..3]
};

std::vector<MomentPattern> moment_patterns(long d) {
  std::vector<MomentPattern> pats = {
      {"p1_diag", false, {0, 0, 0, 0, 0, 0, 0, 0}},
      {"p1_zero", false, {0, 0, 0, 1, 0, 0, 0, 0}},
      {"p2_distinct_direct", true, {0, 0, 1, 1, 0, 0, 1, 1}},
      {"p2_distinct_swapped", true, {0, 0, 1, 1, 0, 1, 1, 0}},
      {"p2_row_coincide", true, {0, 0, 0, 1, 0, 0, 0, 1}},
      {"p2_col_coincide", true, {0, 0, 1, 0, 0, 0, 1, 0}},
      {"p2_all_coincide", true, {0, 0, 0, 0, 0, 0, 0, 0}},
      {"p2_zero_rows", true, {0, 0, 1, 1, 0, 0, 0, 1}},
      {"p2_zero_cols", true, {0, 0, 1, 1, 0, 0, 1, 0}},
  };
  if (d >= 3) pats.push_back({"p2_zero_cols_wide", true, {0, 0, 1, 1, 0, 0, 1, 2}});
  return pats;
}

double pattern_analytic(const MomentPattern& p, long d) {
  if (!p.is_p2)
    return p1_monomial_nonzero(p.a[0], p.a[1], p.a[2], p.a[3]) ? haar_moment_p1(d) : 0.0;
  const auto c = classify_p2_monomial(p.a[0], p.a[1], p.a[2], p.a[3], p.a[4], p.a[5], p.a[6],
                                      p.a[7]);
  return c ? haar_moment_p2(*c, d) : 0.0;
}

Complex pattern_value(const MomentPattern& p, const Matrix& u) {
  if (!p.is_p2) return std::conj(u(p.a[0], p.a[1])) * u(p.a[2], p.a[3]);
  // Pairing each conjugated factor with its direct partner keeps the product
  // exactly real for the modulus-only patterns.
  return (std::conj(u(p.a[0], p.a[1])) * u(p.a[4], p.a[5])) *
         (std::conj(u(p.a[2], p.a[3])) * u(p.a[6], p.a[7]));
}

struct ComponentStats {
  RunningStats re, im;
};

}  // namespace

ExperimentReport run_moments(const ExperimentConfig& cfg, std::ostream& out) {
  validate(cfg);
  const std::string prefix = row_prefix(cfg);
  out << csv_header(cfg.kind) << "\n";
  ExperimentReport report;
  double worst_z = 0.0;

  for (long d : cfg.moment_dims) {
    const auto pats = moment_patterns(d);
    const RngStream root(cfg.seed);
    const auto chunks = detail::make_chunks(0, cfg.n_samples);
    std::vector<std::vector<ComponentStats>> parts(chunks.size());
    detail::for_each_chunk(0, cfg.n_samples, cfg.threads, [&](const detail::SampleChunk& c) {
      std::vector<ComponentStats> local(pats.size());
      for (long s = c.begin; s < c.end; ++s) {
        RngStream stream = root.substream(static_cast<std::uint64_t>(s));
        const Matrix u = sample_haar_unitary(d, stream);
        for (std::size_t p = 0; p < pats.size(); ++p) {
          const Complex v = pattern_value(pats[p], u);
          local[p].re.add(v.real());
          local[p].im.add(v.imag());
        }
      }
      parts[c.index] = std::move(local);
    });
    std::vector<ComponentStats> total(pats.size());
    for (const auto& part : parts)
      for (std::size_t p = 0; p < pats.size(); ++p) {
        total[p].re.merge(part[p].re);
        total[p].im.merge(part[p].im);
      }

    for (std::size_t p = 0; p < pats.size(); ++p) {
      const double analytic = pattern_analytic(pats[p], d);
      const double se_re = total[p].re.standard_error();
      const double se_im = total[p].im.standard_error();
      const double z = std::max(component_z(total[p].re.mean() - analytic, se_re),
                                component_z(total[p].im.mean(), se_im));
      worst_z = std::max(worst_z, z);
      if (z > 4.0) report.passed = false;
      out << prefix << "moment," << d << "," << pats[p].label << "," << fmt(analytic) << ","
          << fmt(total[p].re.mean()) << "," << fmt(total[p].im.mean()) << "," << fmt(se_re)
          << "," << fmt(se_im) << "," << fmt(z) << "," << cfg.n_samples << "\n";
    }
  }

  std::ostringstream summary;
  summary << "moments: worst |z|=" << fmt(worst_z) << (report.passed ? " [pass]" : " [FAIL]");
  report.summary = summary.str();
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, std::ostream& out) {
  switch (cfg.kind) {
    case ExperimentKind::kDecoupling: return run_decoupling(cfg, out);
    case ExperimentKind::kPurityScan: return run_purity_scan(cfg, out);
    case ExperimentKind::kConcentration: return run_concentration(cfg, out);
    case ExperimentKind::kMoments: return run_moments(cfg, out);
  }
  throw std::logic_error("run_experiment: unreachable");
}

}  // namespace scatterlab
