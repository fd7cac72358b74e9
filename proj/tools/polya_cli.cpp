// polya: decreasing-rearrangement toolkit command line.
//
// Subcommands: generate, rearrange, eigen, verify-pz, stability, constants,
// neumann-bound, faber-krahn, profile. Every run is seedless-deterministic:
// identical configuration and inputs produce byte-identical JSON reports.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "polya/discrete_space.hpp"
#include "polya/eigen1d.hpp"
#include "polya/errors.hpp"
#include "polya/inequalities.hpp"
#include "polya/rearrange.hpp"
#include "polya/weights.hpp"

namespace {

using nlohmann::json;
constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;
constexpr double kPi = 3.14159265358979323846;

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json envelope(const std::string& command, json inputs, json results) {
  return json{{"schema_version", kSchemaVersion},
              {"library_version", kVersion},
              {"command", command},
              {"inputs", std::move(inputs)},
              {"results", std::move(results)}};
}

// temp file + rename so concurrent readers never see a partial report
void write_atomic(const std::string& path, const std::string& payload) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw polya::config_error("cannot open output file: " + tmp);
    out << payload;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw polya::config_error("cannot rename report into place: " + path);
}

void emit_csv_row(const json& report, const std::string& out_path);

void emit(const json& report, const std::string& out_path, const std::string& format = "json") {
  if (format == "csv") {
    emit_csv_row(report, out_path);
    return;
  }
  const std::string payload = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << payload;
  else
    write_atomic(out_path, payload);
}

// one-row CSV rendering of a report's scalar results, 17 significant digits
void emit_csv_row(const json& report, const std::string& out_path) {
  std::ostringstream header, row;
  row.precision(17);
  bool first = true;
  std::set<std::string> seen;
  auto add = [&](const std::string& key, const json& v) {
    if (!(v.is_number() || v.is_boolean() || v.is_string())) return;
    if (!seen.insert(key).second) return;  // inputs win over same-named results
    if (!first) { header << ","; row << ","; }
    first = false;
    header << key;
    if (v.is_number_float()) row << v.get<double>();
    else if (v.is_number_integer()) row << v.get<long long>();
    else if (v.is_boolean()) row << (v.get<bool>() ? 1 : 0);
    else row << v.get<std::string>();
  };
  for (const auto& [k, v] : report.at("inputs").items()) add(k, v);
  for (const auto& [k, v] : report.at("results").items()) add(k, v);
  const std::string payload = header.str() + "\n" + row.str() + "\n";
  if (out_path.empty()) std::cout << payload;
  else write_atomic(out_path, payload);
}

void append_csv(const std::string& path, const std::string& header, const std::string& row) {
  const bool fresh = !std::ifstream(path).good();
  std::ofstream out(path, std::ios::app);
  if (!out) throw polya::config_error("cannot open csv file: " + path);
  if (fresh) out << header << "\n";
  out << row << "\n";
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw polya::config_error("cannot read input file: " + path);
  json j;
  in >> j;
  return j;
}

struct WeightFlags {
  std::string family;
  double N = 2.0, h = 1.0, Q = 2.0, r = 1.0, avr = 1.0, a = 0.0, b = 1.0;
  int d = 2;
  std::vector<double> f_coeffs{0.0};

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--family", family,
                                "weight family: sphere|euclidean|cone|gaussian|exponential|"
                                "double_cone|log_convex|interval");
    if (required) opt->required();
    cmd->add_option("-N,--dimension", N, "dimension parameter N (> 1)");
    cmd->add_option("--h-entropy", h, "exponential volume-entropy parameter h (> 0)");
    cmd->add_option("-Q,--cone-dim", Q, "double-cone dimension parameter Q (> 1)");
    cmd->add_option("-r,--cone-radius", r, "double-cone half length r (> 0)");
    cmd->add_option("--avr", avr, "asymptotic volume ratio for cone weights");
    cmd->add_option("-a,--left", a, "left endpoint (interval weight)");
    cmd->add_option("-b,--right", b, "right endpoint (interval weight)");
    cmd->add_option("-d,--ambient-dim", d, "ambient dimension (log-convex weight)");
    cmd->add_option("--f-coeffs", f_coeffs,
                    "polynomial coefficients c0 c1 c2 ... of the convex exponent f(t)");
  }

  polya::WeightedInterval build() const {
    if (family == "sphere") return polya::WeightedInterval::sphere(N);
    if (family == "euclidean") return polya::WeightedInterval::euclidean(N);
    if (family == "cone") return polya::WeightedInterval::cone(N, avr);
    if (family == "gaussian") return polya::WeightedInterval::gaussian();
    if (family == "exponential") return polya::WeightedInterval::exponential(h);
    if (family == "double_cone") return polya::WeightedInterval::double_cone(Q, r);
    if (family == "log_convex") return polya::WeightedInterval::log_convex(f_coeffs, d);
    if (family == "interval") return polya::WeightedInterval::interval(a, b);
    throw polya::config_error("unknown weight family: " + family);
  }
};

// named vertex functions for chain spaces
std::vector<double> named_function(const polya::DiscreteSpace& s, const std::string& name) {
  if (!s.is_chain())
    throw polya::config_error("named functions need a chain space; supply a values file");
  std::vector<double> u(s.vertex_count());
  const auto& x = s.chain_positions();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (name == "cos")
      u[i] = std::cos(x[i]);
    else if (name == "identity")
      u[i] = x[i];
    else if (name == "exp_decay")
      u[i] = std::exp(-x[i]);
    else if (name == "bump")
      u[i] = 1.0 / (1.0 + x[i] * x[i]);
    else
      throw polya::config_error("unknown function '" + name +
                                "' (use cos|identity|exp_decay|bump or a JSON file)");
  }
  return u;
}

std::vector<double> load_function(const polya::DiscreteSpace& s, const std::string& spec) {
  if (spec == "cos" || spec == "identity" || spec == "exp_decay" || spec == "bump")
    return named_function(s, spec);
  const json j = load_json(spec);
  if (j.contains("values")) {
    auto u = j.at("values").get<std::vector<double>>();
    if (u.size() != s.vertex_count())
      throw polya::config_error("values file does not match the space vertex count");
    return u;
  }
  throw polya::config_error("function file needs a top-level 'values' array");
}

// default rearrangement target for a generated model
polya::WeightedInterval default_target(const polya::DiscreteSpace& s) {
  const auto& md = s.metadata();
  if (md.model == "sphere") return polya::WeightedInterval::sphere(md.N);
  if (md.model == "euclidean" || md.model == "sector")
    return polya::WeightedInterval::euclidean(md.N);
  if (md.model == "gaussian") return polya::WeightedInterval::gaussian();
  if (md.model == "exponential") return polya::WeightedInterval::exponential(md.entropy);
  if (md.model == "interval") {
    const double a = md.params.value("a", 0.0);
    const double b = md.params.value("b", 1.0);
    return polya::WeightedInterval::interval(a, b);
  }
  throw polya::config_error("no default rearrangement target for model '" + md.model + "'");
}

std::string space_hash(const json& space_json) { return hex64(fnv1a(space_json.dump())); }

json eigen_result_json(const polya::EigenResult& r, bool include_function) {
  json j{{"lambda", r.lambda},
         {"rayleigh", r.rayleigh},
         {"ode_residual", r.ode_residual},
         {"grid", r.x.size() - 1},
         {"iterations", r.iterations},
         {"p", r.p},
         {"boundary", r.boundary == polya::BoundaryType::neumann ? "neumann" : "dirichlet"}};
  if (include_function) {
    j["x"] = r.x;
    j["f"] = r.f;
  }
  return j;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"decreasing rearrangements, weighted 1D eigenvalues, and sharp-inequality "
               "deficit reports"};
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "write the report here (atomic); default stdout");
  std::string format = "json";
  app.add_option("--format", format, "json (full report) or csv (one sweep row)")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- generate ----------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "discretize a model geometry into a chain space");
  polya::ModelDescriptor desc;
  std::string gen_out_space;
  gen->add_option("--model", desc.model,
                  "sphere|euclidean|gaussian|exponential|sector|interval")->required();
  gen->add_option("-N,--dimension", desc.N);
  gen->add_option("--h-entropy", desc.h);
  gen->add_option("--aperture", desc.aperture);
  gen->add_option("--radius", desc.radius);
  gen->add_option("--truncation", desc.truncation);
  gen->add_option("-a,--left", desc.a);
  gen->add_option("-b,--right", desc.b);
  gen->add_option("--grid", desc.resolution);
  gen->add_option("--space-out", gen_out_space, "write the space JSON here")->required();

  // ---- rearrange ---------------------------------------------------------
  auto* rea = app.add_subcommand("rearrange", "decreasing rearrangement of an atomic function");
  std::string rea_function, rea_csv;
  std::size_t rea_csv_grid = 0;
  WeightFlags rea_w;
  rea->add_option("--function", rea_function,
                  "atoms JSON file ({\"atoms\":[[value,mass],...]}) or '-' for stdin")
      ->required();
  rea_w.attach(rea, true);
  rea->add_option("--csv", rea_csv, "also export (x, u*(x)) samples to this CSV file");
  rea->add_option("--csv-grid", rea_csv_grid, "number of CSV sample points");

  // ---- eigen -------------------------------------------------------------
  auto* eig = app.add_subcommand("eigen", "first weighted p-Laplacian eigenvalue");
  WeightFlags eig_w;
  eig_w.attach(eig, true);
  double eig_p = 2.0, eig_rho = 1.0, eig_tol = 1e-8, eig_trunc = 10.0;
  std::size_t eig_grid = 2000;
  bool eig_neumann = false, eig_dirichlet = false, eig_function = false;
  eig->add_option("-p,--exponent", eig_p);
  eig->add_option("--rho", eig_rho, "right endpoint for the Dirichlet problem");
  eig->add_option("--grid", eig_grid);
  eig->add_option("--tol", eig_tol);
  eig->add_option("--truncation", eig_trunc);
  eig->add_flag("--neumann", eig_neumann);
  eig->add_flag("--dirichlet", eig_dirichlet);
  eig->add_flag("--emit-function", eig_function, "include the eigenfunction samples");

  // ---- verify-pz ---------------------------------------------------------
  auto* vpz = app.add_subcommand("verify-pz", "Polya-Szego deficit of a function on a space");
  std::string vpz_space, vpz_function, vpz_csv;
  double vpz_p = 2.0;
  double vpz_C = -1.0;
  bool vpz_bv = false;
  vpz->add_option("--space", vpz_space, "space JSON produced by generate")->required();
  vpz->add_option("--function", vpz_function, "cos|identity|exp_decay|bump or a values file")
      ->required();
  vpz->add_option("-p,--exponent", vpz_p);
  vpz->add_option("-C,--constant", vpz_C, "isoperimetric constant; default from metadata");
  vpz->add_flag("--bv", vpz_bv, "total-variation version");
  vpz->add_option("--csv", vpz_csv, "append a sweep row (params, lhs, rhs, deficit, runtime_ms)");

  // ---- stability ---------------------------------------------------------
  auto* sta = app.add_subcommand("stability", "diameter stability deficits (Lichnerowicz, "
                                              "Sobolev, log-Sobolev)");
  std::string sta_kind, sta_space, sta_function;
  double sta_q = 4.0, sta_p = 2.0;
  sta->add_option("--kind", sta_kind, "lichnerowicz|sobolev|logsobolev")->required();
  sta->add_option("--space", sta_space)->required();
  sta->add_option("--function", sta_function)->required();
  sta->add_option("-q,--sobolev-q", sta_q);
  sta->add_option("-p,--exponent", sta_p);

  // ---- constants ---------------------------------------------------------
  auto* con = app.add_subcommand("constants", "sharp constants and the BBG factor");
  bool con_sobolev = false, con_logsobolev = false, con_bbg = false, con_outside = false;
  double con_p = 2.0, con_N = 3.0, con_diam = kPi;
  int con_d = 3;
  con->add_flag("--sobolev", con_sobolev);
  con->add_flag("--logsobolev", con_logsobolev);
  con->add_flag("--bbg", con_bbg);
  con->add_flag("--outside-convex", con_outside);
  con->add_option("-p,--exponent", con_p);
  con->add_option("-N,--dimension", con_N);
  con->add_option("--diam", con_diam);
  con->add_option("-d,--ambient-dim", con_d);

  // ---- neumann-bound -----------------------------------------------------
  auto* nb = app.add_subcommand("neumann-bound",
                                "relative-isoperimetry lower bound for Neumann eigenvalues");
  double nb_Q = 2.0, nb_C = 1.0, nb_p = 2.0, nb_mass = kPi;
  std::size_t nb_grid = 2000;
  nb->add_option("-Q,--cone-dim", nb_Q);
  nb->add_option("-C,--constant", nb_C);
  nb->add_option("-p,--exponent", nb_p);
  nb->add_option("--mass", nb_mass);
  nb->add_option("--grid", nb_grid);

  // ---- faber-krahn -------------------------------------------------------
  auto* fk = app.add_subcommand("faber-krahn",
                                "Dirichlet eigenvalue of the volume-matched ball under a "
                                "radial log-convex density");
  std::vector<double> fk_coeffs{0.0};
  int fk_d = 2;
  double fk_p = 2.0, fk_volume = kPi;
  std::size_t fk_grid = 2000;
  fk->add_option("--f-coeffs", fk_coeffs);
  fk->add_option("-d,--ambient-dim", fk_d);
  fk->add_option("-p,--exponent", fk_p);
  fk->add_option("--volume", fk_volume);
  fk->add_option("--grid", fk_grid);

  // ---- profile -----------------------------------------------------------
  auto* pro = app.add_subcommand("profile", "isoperimetric profile evaluations");
  WeightFlags pro_w;
  pro_w.attach(pro, false);
  double pro_v = 0.5, pro_D = 0.0;
  bool pro_gauss_diam = false;
  pro->add_option("-v,--mass", pro_v);
  pro->add_flag("--gaussian-diameter", pro_gauss_diam,
                "diameter-restricted Gaussian profile instead of a family profile");
  pro->add_option("-D,--diameter", pro_D);

  // let the global --out appear after the subcommand as well
  for (CLI::App* sub : {gen, rea, eig, vpz, sta, con, nb, fk, pro}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    const auto s = polya::generate(desc);
    const json sj = s.to_json();
    write_atomic(gen_out_space, sj.dump(2) + "\n");
    json inputs{{"model", desc.model}, {"resolution", desc.resolution}};
    json results{{"space_file", gen_out_space},
                 {"vertices", s.vertex_count()},
                 {"edges", s.edges().size()},
                 {"total_mass", s.total_mass()},
                 {"metadata", sj.at("metadata")},
                 {"metadata_hash", space_hash(sj)}};
    emit(envelope("generate", inputs, results), out_path);
    return 0;
  }

  if (rea->parsed()) {
    json atoms_json;
    if (rea_function == "-")
      std::cin >> atoms_json;
    else
      atoms_json = load_json(rea_function);
    const auto u = polya::SampledFunction::from_json(atoms_json);
    const auto w = rea_w.build();
    const auto star = polya::rearrange(u, w);
    if (!rea_csv.empty()) {
      const std::size_t k = rea_csv_grid ? rea_csv_grid : 256;
      std::ostringstream rows;
      const double lo = std::isfinite(star.l_star()) ? star.l_star()
                                                     : w.inv_cdf(1e-6 * star.total_mass());
      const double hi = std::isfinite(star.r_star())
                            ? star.r_star()
                            : w.inv_cdf((1.0 - 1e-6) * star.total_mass());
      std::ofstream csv(rea_csv, std::ios::trunc);
      csv << "x,u_star\n";
      for (std::size_t i = 0; i <= k; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k);
        csv << x << "," << star(x) << "\n";
      }
    }
    json inputs{{"function", rea_function}, {"weight", w.to_json()}};
    emit(envelope("rearrange", inputs, {{"profile", star.to_json()}}), out_path);
    return 0;
  }

  if (eig->parsed()) {
    const auto w = eig_w.build();
    polya::EigenOptions opt{.grid = eig_grid, .tol = eig_tol, .truncation = eig_trunc};
    if (eig_neumann == eig_dirichlet)
      throw polya::config_error("eigen: choose exactly one of --neumann / --dirichlet");
    const auto res = eig_neumann ? polya::neumann_eigenvalue(w, eig_p, opt)
                                 : polya::dirichlet_eigenvalue(w, eig_rho, eig_p, opt);
    json inputs{{"weight", w.to_json()}, {"p", eig_p}, {"grid", eig_grid}, {"tol", eig_tol}};
    if (!eig_neumann) inputs["rho"] = eig_rho;
    emit(envelope("eigen", inputs, eigen_result_json(res, eig_function)), out_path, format);
    return 0;
  }

  if (vpz->parsed()) {
    const auto t0 = std::chrono::steady_clock::now();
    const json sj = load_json(vpz_space);
    const auto s = polya::DiscreteSpace::from_json(sj);
    const auto u = load_function(s, vpz_function);
    const auto target = default_target(s);
    std::optional<double> C;
    if (vpz_C > 0.0) C = vpz_C;
    const polya::PZReport r = vpz_bv ? polya::pz_bv_deficit(s, u, target, C)
                                     : polya::pz_deficit(s, u, target, C, vpz_p);
    const auto t1 = std::chrono::steady_clock::now();
    json inputs{{"space", vpz_space},
                {"function", vpz_function},
                {"p", vpz_p},
                {"bv", vpz_bv},
                {"metadata_hash", space_hash(sj)}};
    json results{{"lhs", r.lhs},
                 {"rhs_integral", r.rhs_integral},
                 {"constant", r.constant},
                 {"deficit", r.deficit},
                 {"rhs_jump", r.rhs_jump},
                 {"rhs_ac", r.rhs_ac},
                 {"provenance", r.metadata}};
    if (!vpz_csv.empty()) {
      const double ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      std::ostringstream row;
      row.precision(17);
      row << s.metadata().model << "," << vpz_function << "," << vpz_p << "," << r.constant
          << "," << r.lhs << "," << r.rhs_integral << "," << r.deficit << "," << ms;
      append_csv(vpz_csv, "model,function,p,constant,lhs,rhs,deficit,runtime_ms", row.str());
    }
    emit(envelope("verify-pz", inputs, results), out_path, format);
    return 0;
  }

  if (sta->parsed()) {
    const auto s = polya::DiscreteSpace::from_json(load_json(sta_space));
    const auto u = load_function(s, sta_function);
    const double diam = s.metadata().diameter;
    if (!std::isfinite(diam))
      throw polya::config_error("stability: space metadata carries no finite diameter");
    polya::StabilityReport r;
    if (sta_kind == "lichnerowicz") {
      double l2p = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i)
        l2p += std::pow(std::fabs(u[i]), sta_p) * s.vertex_mass()[i];
      const double rq = polya::dirichlet_energy(s, u, sta_p) / l2p;
      r = polya::lichnerowicz_deficit(s.metadata().N, sta_p, diam, rq);
    } else if (sta_kind == "sobolev") {
      r = polya::sobolev_deficit_compact(s.metadata().N, sta_q, diam,
                                         polya::sobolev_norms(s, u, sta_q));
    } else if (sta_kind == "logsobolev") {
      r = polya::logsobolev_deficit_compact(s, u, s.metadata().N, diam);
    } else {
      throw polya::config_error("stability: unknown kind '" + sta_kind + "'");
    }
    json inputs{{"kind", sta_kind}, {"space", sta_space}, {"function", sta_function},
                {"p", sta_p},       {"q", sta_q}};
    json results{{"geometric_side", r.geometric_side},
                 {"analytic_deficit", r.analytic_deficit},
                 {"empirical_ratio", r.empirical_ratio},
                 {"provenance", r.metadata}};
    emit(envelope("stability", inputs, results), out_path, format);
    return 0;
  }

  if (con->parsed()) {
    json results;
    if (con_sobolev) results["sobolev_constant"] = polya::sobolev_constant(con_p, con_N);
    if (con_logsobolev)
      results["logsobolev_constant"] = polya::logsobolev_constant(con_p, con_N);
    if (con_bbg) results["bbg_factor"] = polya::bbg_factor(con_N, con_diam);
    if (con_outside) {
      const auto oc = polya::outside_convex_constant(con_p, con_d);
      results["outside_convex"] = {{"sharp_constant", oc.sharp_constant},
                                   {"printed_factor", oc.printed_factor},
                                   {"verified_factor", oc.verified_factor},
                                   {"printed_consistent", oc.printed_consistent},
                                   {"note", oc.printed_consistent
                                                ? ""
                                                : "printed factor disagrees with the "
                                                  "half-space restriction oracle"}};
    }
    if (results.empty())
      throw polya::config_error(
          "constants: pick at least one of --sobolev/--logsobolev/--bbg/--outside-convex");
    json inputs{{"p", con_p}, {"N", con_N}, {"diam", con_diam}, {"d", con_d}};
    emit(envelope("constants", inputs, results), out_path, format);
    return 0;
  }

  if (nb->parsed()) {
    const double bound =
        polya::neumann_lower_bound(nb_Q, nb_C, nb_p, nb_mass, {.grid = nb_grid});
    json inputs{{"Q", nb_Q}, {"C", nb_C}, {"p", nb_p}, {"mass", nb_mass}, {"grid", nb_grid}};
    emit(envelope("neumann-bound", inputs, {{"lower_bound", bound}}), out_path, format);
    return 0;
  }

  if (fk->parsed()) {
    const auto res =
        polya::log_convex_faber_krahn(fk_coeffs, fk_d, fk_p, fk_volume, {.grid = fk_grid});
    json inputs{{"f_coeffs", fk_coeffs}, {"d", fk_d}, {"p", fk_p}, {"volume", fk_volume}};
    emit(envelope("faber-krahn", inputs, eigen_result_json(res, false)), out_path, format);
    return 0;
  }

  if (pro->parsed()) {
    json inputs, results;
    if (pro_gauss_diam) {
      if (!(pro_D > 0.0)) throw polya::config_error("profile: need -D > 0");
      const auto pt = polya::gaussian_diameter_profile(pro_D, pro_v);
      inputs = {{"D", pro_D}, {"v", pro_v}};
      results = {{"restricted_profile", pt.value},
                 {"minimizer", pt.minimizer},
                 {"bracket", {pt.bracket_lo, pt.bracket_hi}},
                 {"minimizer_on_bracket_boundary", pt.on_boundary},
                 {"unrestricted_profile", polya::gaussian_profile(pro_v)}};
    } else {
      const auto w = pro_w.build();
      inputs = {{"weight", w.to_json()}, {"v", pro_v}};
      results = {{"profile", w.profile(pro_v)}};
    }
    emit(envelope("profile", inputs, results), out_path, format);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const polya::solver_error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const polya::config_error& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const polya::precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  }
}
