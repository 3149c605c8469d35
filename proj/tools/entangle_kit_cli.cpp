/*
 * Copyright 2026 The entangle-kit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entangle_kit/bipartite.hpp"
#include "entangle_kit/dynamics.hpp"
#include "entangle_kit/errors.hpp"
#include "entangle_kit/fermionic.hpp"
#include "entangle_kit/free_fermion.hpp"
#include "entangle_kit/io.hpp"
#include "entangle_kit/itinerant.hpp"
#include "entangle_kit/multipartite.hpp"
#include "entangle_kit/parallel.hpp"
#include "entangle_kit/spin_models.hpp"

using nlohmann::json;
using namespace ekit;

namespace {

struct Common {
  int threads = 0;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string format = "csv";
};

struct ModelFlags {
  std::string model = "ising";
  std::optional<double> gamma, delta, h;
  double J = 1.0;
  int N = 10;
  std::string lambda;
  std::string boundary = "periodic";

  ModelParams params() const {
    ModelParams p = ModelParams::named(model, N);
    if (gamma) p.gamma = *gamma;
    if (delta) p.delta = *delta;
    p.J = J;
    if (h) p.h = *h;
    if (boundary == "open") {
      p.boundary = Boundary::Open;
    } else if (boundary != "periodic") {
      throw ArgumentError("boundary must be periodic or open");
    }
    p.validate();
    return p;
  }

  // Lambda grid from --lambda, or the single point J/(2h) from --h.
  std::vector<double> lambdas() const {
    if (!lambda.empty() && h) throw ArgumentError("--h and --lambda are mutually exclusive");
    if (!lambda.empty()) return parse_range(lambda);
    if (h) {
      if (*h <= 0) throw ArgumentError("--h must be positive for a lambda profile");
      return {J / (2.0 * *h)};
    }
    throw ArgumentError("one of --h or --lambda is required");
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "worker threads (default: ENTANGLE_KIT_THREADS or logical cores)");
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--format", c.format, "table format")->check(CLI::IsMember({"csv", "json"}));
}

void add_model(CLI::App* app, ModelFlags& m) {
  app->add_option("--model", m.model, "xx, xy, ising, xxz or xxx")->check(CLI::IsMember({"xx", "xy", "ising", "xxz", "xxx"}));
  app->add_option("--gamma", m.gamma, "anisotropy");
  app->add_option("--delta", m.delta, "zz coupling");
  app->add_option("--J", m.J, "exchange coupling");
  app->add_option("--h", m.h, "transverse field");
  app->add_option("--lambda", m.lambda, "lambda = J/(2h) as start:stop:step");
  app->add_option("--N", m.N, "number of sites");
  app->add_option("--boundary", m.boundary, "periodic or open");
}

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;
};

std::string out_path(const Common& c, const std::string& file) {
  std::filesystem::create_directories(c.out);
  return (std::filesystem::path(c.out) / file).string();
}

void emit(const Common& c, const Table& t) {
  if (c.format == "json") {
    json j{{"version", kVersion}, {"columns", t.columns}, {"rows", t.rows}, {"notes", t.notes}};
    std::ofstream(out_path(c, t.name + ".json")) << j.dump(2) << '\n';
  } else {
    CsvWriter w(out_path(c, t.name + ".csv"), t.columns, t.notes);
    for (const auto& r : t.rows) w.row(r);
  }
  std::cerr << "wrote " << t.name << " (" << t.rows.size() << " rows)\n";
}

void emit_json(const Common& c, const std::string& name, json j) {
  j["version"] = kVersion;
  std::ofstream(out_path(c, name + ".json")) << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
}

// ---- measure

json measure_pure(const PureState& psi, bool all, const Common& c) {
  const int n = psi.n_qubits();
  json j{{"n", n}, {"kind", "pure"}};
  json tau1 = json::array();
  for (int i = 0; i < n; ++i) tau1.push_back(one_tangle(partial_trace(psi, {i})));
  j["tau1"] = tau1;
  json cuts = json::array();
  if (n >= 2) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n) - 1; ++mask) {
      Subsystem part;
      for (int q = 0; q < n; ++q) {
        if (mask >> (n - 1 - q) & 1u) part.push_back(q);
      }
      if (part.front() != 0) continue;  // each cut once
      cuts.push_back({{"part", part}, {"entropy", entanglement_entropy(psi, part)}});
    }
  }
  j["entropy"] = cuts;
  json conc = json::array();
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) conc.push_back({{"pair", {a, b}}, {"C", pairwise_concurrence(psi, a, b)}});
  }
  j["pairwise_concurrence"] = conc;
  if (n == 2) j["concurrence"] = concurrence_pure(psi);
  if (n == 3) j["tau3"] = three_tangle(psi);
  if (n % 2 == 0) j["tau" + std::to_string(n)] = n_tangle(psi);
  if (n == 4) {
    const auto m = filters_F4(psi).moduli();
    j["filters"] = {m[0], m[1], m[2]};
  }
  if (all) {
    j["geometric_measure"] = geometric_measure(psi, 8, c.seed);
    if (n <= 14) {
      const auto pd = purity_distribution(psi);
      j["purity"] = {{"mean", pd.mean}, {"variance", pd.variance}, {"Q", pd.q_measure}};
    }
  }
  return j;
}

json measure_mixed(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  json j{{"n", n}, {"kind", "mixed"}};
  json tau1 = json::array();
  for (int i = 0; i < n; ++i) tau1.push_back(one_tangle(partial_trace(rho, {i})));
  j["tau1"] = tau1;
  json neg = json::array();
  for (int i = 0; i < n; ++i) {
    const auto r = negativity_suite(rho, {i});
    neg.push_back({{"part", {i}}, {"ppt", r.ppt}, {"negativity", r.N}, {"log_negativity", r.EN}});
  }
  j["negativity"] = neg;
  if (n == 2) {
    const auto r = concurrence_mixed(rho);
    j["concurrence"] = r.C;
    j["entanglement_of_formation"] = r.EoF;
  }
  return j;
}

// ---- groundstate

std::vector<ProfileRow> ed_profile_with_delta(const ModelParams& base, const std::vector<double>& grid, int threads) {
  auto c_at = [&](double lam, int r) {
    ModelParams p = ModelParams::from_lambda(base.gamma, lam, base.N, base.J, base.delta, base.boundary);
    return pairwise_concurrence(ground_state(p).lowest(), 0, r);
  };
  const double step = 1e-3;
  return parallel_map<ProfileRow>(
      grid.size(),
      [&](std::size_t k) {
        const double lam = grid[k];
        ModelParams p = ModelParams::from_lambda(base.gamma, lam, base.N, base.J, base.delta, base.boundary);
        const PureState gs = ground_state(p).lowest();
        ProfileRow row;
        row.lambda = lam;
        row.C1 = pairwise_concurrence(gs, 0, 1);
        row.C2 = base.N > 2 ? pairwise_concurrence(gs, 0, 2) : 0.0;
        for (int r = 1; r <= base.N / 2; ++r) {
          if (pairwise_concurrence(gs, 0, r) > 1e-8) row.R = r;
        }
        row.dC1 = (c_at(lam + step, 1) - c_at(lam - step, 1)) / (2.0 * step);
        row.Mz = 0.5 * pauli_expectation(gs, [&] {
                         PauliWord w(base.N, 0);
                         w[0] = 3;
                         return w;
                       }()).real();
        return row;
      },
      threads);
}

int run_groundstate(const Common& c, const ModelFlags& mf, const std::string& engine_name, bool range,
                    bool factorize, const std::string& field_window) {
  const ModelParams base = mf.params();
  if (factorize) {
    const auto w = parse_range(field_window);
    if (w.size() < 2) throw ArgumentError("--field-window needs lo:hi:step");
    const auto s = find_factorizing_field(base, w.front(), w.back());
    emit_json(c, "fig_factorizing",
              {{"N", base.N},
               {"gamma", base.gamma},
               {"delta", base.delta},
               {"h_star", s.h_star},
               {"c_max_at_h_star", s.c_max_at_h_star},
               {"c_max_gs_plus", s.c_plus_at_h_star},
               {"h_product_state", s.h_exact},
               {"h_printed_formula", s.h_formula}});
    return 0;
  }
  const auto grid = mf.lambdas();
  Engine engine = base.N <= 14 ? Engine::ED : Engine::FreeFermion;
  if (engine_name == "ed") engine = Engine::ED;
  if (engine_name == "ff") engine = Engine::FreeFermion;
  const int threads = resolve_threads(c.threads);
  std::vector<ProfileRow> rows;
  if (base.delta != 0.0) {
    if (engine == Engine::FreeFermion) throw UnsupportedModelError("free-fermion engine requires Delta = 0");
    rows = ed_profile_with_delta(base, grid, threads);
  } else {
    ProfileOptions opt;
    opt.J = base.J;
    opt.boundary = base.boundary;
    opt.threads = threads;
    rows = concurrence_profile(base.gamma, grid, base.N, engine, opt);
  }
  Table t{"fig1_derivative", {"N", "gamma", "lambda", "C1", "C2", "dC1", "R", "Mz"}, {}, {}};
  t.notes.push_back("engine " + std::string(engine == Engine::ED ? "ed" : "ff") + ", delta " + format_double(base.delta));
  for (const auto& r : rows) {
    t.rows.push_back({double(base.N), base.gamma, r.lambda, r.C1, r.C2, r.dC1, double(r.R), r.Mz});
  }
  emit(c, t);
  if (range) {
    Table tr{"fig_treconc", {"lambda", "r", "C"}, {}, {}};
    for (double lam : grid) {
      for (int r = 1; r <= base.N / 2; ++r) {
        ProfileOptions opt;
        opt.J = base.J;
        opt.boundary = base.boundary;
        tr.rows.push_back({lam, double(r), concurrence_at(base.gamma, lam, base.N, r, engine, opt)});
      }
    }
    emit(c, tr);
  }
  return 0;
}

// ---- scaling

int run_scaling(const Common& c, const ModelFlags& mf, const std::string& sizes) {
  const ModelParams base = mf.params();
  if (base.delta != 0.0) throw UnsupportedModelError("scaling requires Delta = 0");
  const auto ns = parse_int_list(sizes);
  const auto pts = parallel_map<ScalingPoint>(
      ns.size(), [&](std::size_t k) { return locate_derivative_minimum(base.gamma, ns[k]); }, resolve_threads(c.threads));
  Table t{"fig1_scaling", {"N", "lambda_m", "depth"}, {}, {}};
  for (const auto& p : pts) t.rows.push_back({double(p.N), p.lambda_m, p.depth});
  emit(c, t);
  if (pts.size() >= 5) {
    const auto f = scaling_fit(pts);
    emit_json(c, "scaling_fit",
              {{"gamma", base.gamma},
               {"theta", f.theta},
               {"drift_amplitude", f.drift_amplitude},
               {"depth_slope", f.prefactor},
               {"depth_intercept", f.depth_intercept},
               {"log_divergence_reference", -kLogDivergencePrefactor},
               {"nu", f.nu},
               {"drift_residuals", f.drift_residuals},
               {"depth_residuals", f.depth_residuals}});
  } else {
    std::cerr << "fewer than five sizes: fit skipped\n";
  }
  return 0;
}

// ---- dynamics

int run_dynamics(const Common& c, const ModelFlags& mf, const std::string& engine, int i, int j, int sign,
                 const std::string& times, bool bessel, const std::string& initial) {
  const auto ts = parse_range(times);
  if (engine == "magnon") {
    const int N = mf.N;
    Table t{"fig_entro", {"t", "x", "partner", "C", "S2"}, {}, {"t in units of 1/J; Bessel argument 4Jt"}};
    for (double tt : ts) {
      const auto amps = magnon_amplitudes(N, i, j, sign, tt, bessel ? MagnonMode::Bessel : MagnonMode::Finite, mf.J);
      if (amps.fell_back) std::cerr << "t=" << tt << ": " << amps.warning << '\n';
      for (int x = 0; x < N; ++x) {
        const int partner = ((i + j - x) % N + N) % N;
        if (partner == x) continue;
        const auto pd = pair_dynamics(amps, x, partner);
        t.rows.push_back({tt, double(x), double(partner), pd.C, pd.S2});
      }
    }
    emit(c, t);
    return 0;
  }
  if (engine != "ed") throw ArgumentError("--engine must be magnon or ed");
  ModelParams p = mf.params();
  if (!mf.lambda.empty()) {
    const auto l = parse_range(mf.lambda);
    p = ModelParams::from_lambda(p.gamma, l.front(), p.N, p.J, p.delta, p.boundary);
  }
  PureState start;
  if (initial == "vacuum") {
    start = vacuum_state(p.N);
  } else if (initial == "pair") {
    start = magnon_pair_state(p.N, i, j, sign);
  } else {
    throw ArgumentError("--initial must be vacuum or pair");
  }
  const auto frames = ed_evolution(start, p, ts, resolve_threads(c.threads));
  Table ckw{"fig_ckw_dyn", {"t", "sum_C2", "sum_residual", "mean_tau1", "norm_drift"}, {}, {"t in units of 1/J"}};
  Table wave{"fig_ed_wave", {"t", "x", "C"}, {}, {"C between sites x and x+1"}};
  for (const auto& f : frames) {
    double c2 = 0, res = 0, t1 = 0;
    for (int a = 0; a < p.N; ++a) {
      for (int b = a + 1; b < p.N; ++b) c2 += f.concurrence(a, b) * f.concurrence(a, b);
      res += f.residual[a];
      t1 += f.tau1[a] / p.N;
      wave.rows.push_back({f.t, double(a), f.concurrence(a, (a + 1) % p.N)});
    }
    ckw.rows.push_back({f.t, c2, res, t1, f.norm_drift});
  }
  emit(c, ckw);
  emit(c, wave);
  return 0;
}

// ---- roof

int run_roof(const Common& c, const std::string& state, const std::string& measure, std::vector<int> pair, int K,
             int restarts, bool maximize, bool ghzw, const std::string& p_range) {
  if (ghzw) {
    const auto grid = parse_range(p_range);
    const auto rows = ghz_w_scan(grid, K > 0 ? K : 4, restarts, c.seed, resolve_threads(c.threads));
    Table t{"fig_ghzw", {"p", "tau1", "C_roof", "tau3_roof", "C_reduced"}, {}, {"rho = p GHZ + (1 - p) W"}};
    for (const auto& r : rows) t.rows.push_back({r.p, r.tau1, r.c_roof, r.tau3_roof, r.c_reduced});
    emit(c, t);
    return 0;
  }
  if (state.empty()) throw ArgumentError("--state is required unless --ghzw is given");
  const auto loaded = load_state_file(state);
  const DensityMatrix rho = std::holds_alternative<DensityMatrix>(loaded)
                                ? std::get<DensityMatrix>(loaded)
                                : DensityMatrix::from_pure(std::get<PureState>(loaded));
  PureMeasure m;
  if (measure == "concurrence") {
    if (pair.empty()) pair = {0, 1};
    if (pair.size() != 2) throw ArgumentError("--pair takes two site indices");
    m = [pair](const PureState& psi) { return pairwise_concurrence(psi, pair[0], pair[1]); };
  } else if (measure == "tau3") {
    m = three_tangle;
  } else if (measure == "ntangle") {
    m = n_tangle;
  } else {
    throw ArgumentError("--measure must be concurrence, tau3 or ntangle");
  }
  RoofOptions opt;
  opt.K = K;
  opt.restarts = restarts;
  opt.seed = c.seed;
  opt.threads = resolve_threads(c.threads);
  opt.mode = maximize ? RoofMode::Maximize : RoofMode::Minimize;
  const auto est = convex_roof_estimate(rho, m, opt);
  json terms = json::array();
  for (const auto& t : est.decomposition) terms.push_back({{"p", t.p}, {"state", state_to_json(t.psi)}});
  emit_json(c, "roof",
            {{"measure", measure},
             {"mode", maximize ? "maximize" : "minimize"},
             {"value", est.value},
             {"restarts", est.restarts},
             {"sweeps", est.iterations},
             {"decomposition", terms}});
  return 0;
}

// ---- fermigas, hubbard, fermion

int run_fermigas(const Common& c, std::vector<int> dims, const std::string& r_range) {
  const auto grid = parse_range(r_range);
  Table t{"fig_fermigas", {"d", "r_kf_over_pi", "f2", "entangled", "ppt"}, {}, {}};
  json d0;
  for (int d : dims) {
    for (double x : grid) {
      const auto r = fermi_gas_two_spin_rdm(x * M_PI, 1.0, d);
      t.rows.push_back({double(d), x, r.f * r.f, r.entangled ? 1.0 : 0.0, r.ppt ? 1.0 : 0.0});
    }
    d0["d" + std::to_string(d)] = fermi_gas_entanglement_range(d);
  }
  emit(c, t);
  emit_json(c, "fermigas_range", {{"d0_kf_over_pi", d0}});
  return 0;
}

int run_hubbard(const Common& c, int L, const std::string& u_range, const std::string& v_range, double hop,
                int eta_max, int filling_N) {
  if (eta_max > 0) {
    Table t{"fig_eta", {"L", "N", "O_eta", "C_R", "C_R_times_L"}, {}, {}};
    for (int l = 2; l <= eta_max; ++l) {
      for (int n = 1; n < l; ++n) {
        const auto e = eta_pairing(l, n);
        t.rows.push_back({double(l), double(n), e.O_eta, e.C_rescaled, e.C_rescaled * l});
      }
    }
    emit(c, t);
    return 0;
  }
  if (filling_N > 0) {
    std::vector<double> fill;
    for (int m = 0; m <= filling_N; ++m) fill.push_back(double(m) / filling_N);
    const auto rows = tight_binding_halffilling_check(filling_N, fill);
    Table t{"fig_filling", {"n", "particles", "h", "C1"}, {}, {}};
    for (const auto& r : rows) t.rows.push_back({r.n, double(r.particles), r.h, r.C1});
    emit(c, t);
    return 0;
  }
  const auto us = parse_range(u_range);
  const auto vs = parse_range(v_range);
  const auto pts = extended_hubbard_scan(us, vs, L, hop, resolve_threads(c.threads));
  Table t{"fig_hubbard", {"U", "V", "S", "z", "u_plus", "u_minus", "w", "energy", "degeneracy"}, {}, {}};
  for (const auto& p : pts) {
    t.rows.push_back({p.U, p.V, p.S, p.weights.z, p.weights.u_plus, p.weights.u_minus, p.weights.w, p.energy,
                      double(p.degeneracy)});
  }
  emit(c, t);
  return 0;
}

json complex_json(cplx z) { return {z.real(), z.imag()}; }

int run_fermion(const Common& c, const std::string& omega_file, const std::string& boson_file,
                const std::string& rho_file) {
  json j;
  if (!omega_file.empty()) {
    const CMat w = load_two_fermion_amplitude(omega_file);
    j["modes"] = w.rows();
    j["pfaffian"] = complex_json(pfaffian(w));
    const auto nf = slater_normal_form(w);
    json z = json::array();
    for (auto v : nf.z) z.push_back(complex_json(v));
    j["normal_form"] = {{"z", z}, {"slater_rank", nf.rank}};
    if (w.rows() == 4) {
      j["concurrence"] = fermionic_concurrence(w);
      j["concurrence_dual"] = fermionic_concurrence_dual(w);
    }
  }
  if (!boson_file.empty()) {
    std::ifstream in(boson_file);
    if (!in) throw ArgumentError("cannot open " + boson_file);
    json raw;
    try {
      raw = json::parse(in);
    } catch (const json::exception& e) {
      throw ArgumentError(std::string("invalid JSON: ") + e.what());
    }
    const auto b = boson_schmidt(complex_matrix_from_json(raw.is_object() ? raw.at("omega") : raw));
    j["boson"] = {{"coefficients", b.coefficients},
                  {"multiplicities", b.multiplicities},
                  {"reduced_rank", b.reduced_rank},
                  {"entangled", b.entangled}};
  }
  if (!rho_file.empty()) {
    std::ifstream in(rho_file);
    if (!in) throw ArgumentError("cannot open " + rho_file);
    json raw;
    try {
      raw = json::parse(in);
    } catch (const json::exception& e) {
      throw ArgumentError(std::string("invalid JSON: ") + e.what());
    }
    j["concurrence_mixed"] = fermionic_concurrence_mixed(complex_matrix_from_json(raw.is_object() ? raw.at("rho") : raw));
  }
  if (j.empty()) throw ArgumentError("fermion needs --omega, --boson or --rho");
  emit_json(c, "fermion", j);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangle-kit: entanglement measures and solvable spin and fermion models"};
  app.set_help_flag("--help", "print this help message and exit");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Common common;

  auto* measure = app.add_subcommand("measure", "entanglement measures of a state file");
  std::string state_file;
  bool all = false;
  measure->add_option("--state", state_file, "state JSON file")->required();
  measure->add_flag("--all", all, "include geometric measure and purity statistics");
  add_common(measure, common);

  ModelFlags mf;
  auto* gs = app.add_subcommand("groundstate", "concurrence profile of the spin-chain ground state");
  std::string engine = "auto", field_window = "0.05:1.5:0.01";
  bool range = false, factorize = false;
  add_model(gs, mf);
  gs->add_option("--engine", engine, "ed, ff or auto")->check(CLI::IsMember({"ed", "ff", "auto"}));
  gs->add_flag("--range", range, "also write C(r) for every grid point");
  gs->add_flag("--factorize", factorize, "locate the factorizing field instead of a profile");
  gs->add_option("--field-window", field_window, "field search window lo:hi:step for --factorize");
  add_common(gs, common);

  auto* sc = app.add_subcommand("scaling", "finite-size scaling of the nearest-neighbour concurrence derivative");
  std::string sizes = "50,100,150,200,250,300,400";
  add_model(sc, mf);
  sc->add_option("--sizes", sizes, "comma-separated chain lengths");
  add_common(sc, common);

  auto* dyn = app.add_subcommand("dynamics", "magnon entanglement waves and exact time evolution");
  std::string dyn_engine = "magnon", times = "0:10:0.1", initial = "vacuum";
  int src_i = -1, src_j = -1, sign = 1;
  bool bessel = false;
  add_model(dyn, mf);
  dyn->add_option("--engine", dyn_engine, "magnon or ed")->check(CLI::IsMember({"magnon", "ed"}));
  dyn->add_option("--i", src_i, "first source site");
  dyn->add_option("--j", src_j, "second source site");
  dyn->add_option("--sign", sign, "relative sign of the magnon pair")->check(CLI::IsMember({-1, 1}));
  dyn->add_option("--t", times, "time grid start:stop:step");
  dyn->add_flag("--bessel", bessel, "infinite-chain Bessel amplitudes");
  dyn->add_option("--initial", initial, "vacuum or pair (ed engine)");
  add_common(dyn, common);

  auto* roof = app.add_subcommand("roof", "convex-roof estimates");
  std::string roof_state, roof_measure = "concurrence", p_range = "0:1:0.05";
  std::vector<int> pair;
  int K = 0, restarts = 8;
  bool maximize = false, ghzw = false;
  roof->add_option("--state", roof_state, "state JSON file");
  roof->add_option("--measure", roof_measure, "concurrence, tau3 or ntangle");
  roof->add_option("--pair", pair, "qubit pair for the concurrence measure")->delimiter(',');
  roof->add_option("--K", K, "decomposition size (0: twice the rank)");
  roof->add_option("--restarts", restarts, "random restarts");
  roof->add_flag("--maximize", maximize, "maximize instead of minimize");
  roof->add_flag("--ghzw", ghzw, "scan the GHZ/W mixture");
  roof->add_option("--p", p_range, "GHZ weight grid for --ghzw");
  add_common(roof, common);

  auto* fg = app.add_subcommand("fermigas", "two-spin entanglement in the free Fermi gas");
  std::vector<int> dims{2, 3};
  std::string r_range = "0:1.5:0.01";
  fg->add_option("--d", dims, "dimensions")->delimiter(',');
  fg->add_option("--r", r_range, "distance grid in units of pi/kf");
  add_common(fg, common);

  auto* hub = app.add_subcommand("hubbard", "local entropy of the extended Hubbard chain and eta pairing");
  int L = 6, eta_max = 0, filling_N = 0;
  std::string u_range = "-8:8:0.5", v_range = "-4:4:0.5";
  double hop = 1.0;
  hub->add_option("--L", L, "sites (2, 4 or 6)");
  hub->add_option("--U", u_range, "on-site interaction grid");
  hub->add_option("--V", v_range, "nearest-neighbour interaction grid");
  hub->add_option("--t", hop, "hopping");
  hub->add_option("--eta", eta_max, "tabulate eta-pairing concurrence up to this L");
  hub->add_option("--filling", filling_N, "XX-chain filling check on this many sites");
  add_common(hub, common);

  auto* fer = app.add_subcommand("fermion", "Pfaffian, Slater and boson Schmidt tools");
  std::string omega_file, boson_file, rho_file;
  fer->add_option("--omega", omega_file, "antisymmetric amplitude matrix (JSON)");
  fer->add_option("--boson", boson_file, "symmetric amplitude matrix (JSON)");
  fer->add_option("--rho", rho_file, "6x6 two-fermion density matrix in four modes (JSON)");
  add_common(fer, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*measure) {
      const auto loaded = load_state_file(state_file);
      const json j = std::holds_alternative<PureState>(loaded) ? measure_pure(std::get<PureState>(loaded), all, common)
                                                               : measure_mixed(std::get<DensityMatrix>(loaded));
      emit_json(common, "measure", j);
      return 0;
    }
    if (*gs) return run_groundstate(common, mf, engine, range, factorize, field_window);
    if (*sc) return run_scaling(common, mf, sizes);
    if (*dyn) {
      const int i = src_i >= 0 ? src_i : mf.N / 2 - 1;
      const int j = src_j >= 0 ? src_j : i + 1;
      return run_dynamics(common, mf, dyn_engine, i, j, sign, times, bessel, initial);
    }
    if (*roof) return run_roof(common, roof_state, roof_measure, pair, K, restarts, maximize, ghzw, p_range);
    if (*fg) return run_fermigas(common, dims, r_range);
    if (*hub) return run_hubbard(common, L, u_range, v_range, hop, eta_max, filling_N);
    if (*fer) return run_fermion(common, omega_file, boson_file, rho_file);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "file error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
