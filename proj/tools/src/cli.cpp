#include "bosent_cli/cli.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bosent/blocks.hpp"
#include "bosent/entanglement.hpp"
#include "bosent/errors.hpp"
#include "bosent/geometry.hpp"
#include "bosent/io.hpp"
#include "bosent/modes.hpp"
#include "bosent/robustness.hpp"
#include "selfcheck.hpp"

namespace bosent::cli {

namespace {

struct Globals {
  double tol = kBlockDiagonalTol;
  std::size_t cap = kDefaultDimensionCap;
  std::uint64_t seed = 0;
  std::string format;  // empty: per-command default
  bool emit_witness = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string resolved_format(const Globals& g, const std::string& fallback) {
  return g.format.empty() ? fallback : g.format;
}

void require_json(const Globals& g, const std::string& command) {
  if (resolved_format(g, "json") != "json") throw UsageError(command + " supports --format json only");
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

nlohmann::json verdict_json(const SeparabilityVerdict& v) {
  nlohmann::json reasons = nlohmann::json::array();
  for (auto r : v.reasons) reasons.push_back(to_string(r));
  return {{"status", to_string(v.status)}, {"exact", v.exact}, {"reasons", reasons}};
}

nlohmann::json analyze_density(const DensityMatrix& rho, const Globals& g) {
  const auto& b = rho.basis();
  const auto first = reduced_state(rho, Side::first);
  const auto second = reduced_state(rho, Side::second);
  return {{"N", b.particles()},
          {"M", b.modes()},
          {"m", b.first_modes()},
          {"D", b.dim()},
          {"negativity", negativity(rho)},
          {"verdict", verdict_json(is_separable(rho, g.tol))},
          {"block_diagonal", is_block_diagonal(rho, g.tol)},
          {"entropy_first", first.entropy},
          {"purity_first", first.purity},
          {"entropy_second", second.entropy},
          {"purity_second", second.purity},
          {"blocks", to_json(block_decompose(rho), b)}};
}

nlohmann::json analyze_state(const LoadedState& s, const Globals& g) {
  if (const auto* mix = std::get_if<SectoredState>(&s)) {
    nlohmann::json sectors = nlohmann::json::array();
    double neg = 0.0;
    for (const auto& c : mix->components()) {
      auto a = analyze_density(c.state, g);
      neg += c.weight * a["negativity"].get<double>();
      sectors.push_back({{"N", c.state.basis().particles()}, {"weight", c.weight}, {"analysis", std::move(a)}});
    }
    return {{"negativity", neg}, {"sectors", std::move(sectors)}};
  }
  auto j = analyze_density(as_density(s), g);
  if (const auto* psi = std::get_if<PureState>(&s)) {
    const auto sp = schmidt(*psi);
    j["schmidt"] = sp.blocks;
    j["schmidt_negativity"] = pure_negativity_from_schmidt(sp);
  }
  return j;
}

void print_csv_pairs(std::ostream& out, const nlohmann::json& j, const std::string& prefix = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      print_csv_pairs(out, *it, key);
    } else if (it->is_number_float()) {
      out << key << "," << num(it->get<double>()) << "\n";
    } else if (it->is_string()) {
      out << key << "," << it->get<std::string>() << "\n";
    } else if (it->is_primitive()) {
      out << key << "," << it->dump() << "\n";
    } else {
      std::string v;
      for (char c : it->dump()) v += c == '"' ? std::string("\"\"") : std::string(1, c);
      out << key << ",\"" << v << "\"\n";
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of fixed-number boson states under mode bipartitions", "bosent"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Block-diagonality and PPT threshold (relative)")->check(CLI::NonNegativeNumber);
  app.add_option("--cap", g.cap, "Dimension cap for bases and embeddings")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for sampled mode unitaries");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--emit-witness", g.emit_witness, "Include mixing matrices in robustness reports");

  int n = 2, modes = 2, m = 1;
  auto add_shape = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Particle number N")->required();
    sub->add_option("--modes", modes, "Number of modes M");
    sub->add_option("--bipartition", m, "Modes in the first partition, m");
  };

  auto* basis_cmd = app.add_subcommand("basis", "Enumerate the Fock basis and its sector structure");
  add_shape(basis_cmd);

  std::string preset;
  std::vector<double> phases;
  double p = 0.5;
  auto* state_cmd = app.add_subcommand("state", "Write a preset state as JSON");
  state_cmd->add_option("preset", preset, "Preset name")
      ->required()
      ->check(CLI::IsMember({"totally-mixed", "phase", "negative-coherence", "max-ent", "werner"}));
  add_shape(state_cmd);
  state_cmd->add_option("--phases", phases, "Phases phi_0..phi_N of the phase state")->delimiter(',');
  state_cmd->add_option("--p", p, "Werner weight")->check(CLI::Range(0.0, 1.0));

  std::string state_path;
  auto* analyze_cmd = app.add_subcommand("analyze", "Negativity, separability verdict and reduced states");
  analyze_cmd->add_option("state", state_path, "State JSON file")->required();

  bool generalized = false, bounds = false;
  auto* rob_cmd = app.add_subcommand("robustness", "Robustness of entanglement");
  rob_cmd->add_option("state", state_path, "State JSON file")->required();
  rob_cmd->add_flag("--generalized", generalized, "Generalized instead of standard robustness");
  rob_cmd->add_flag("--bounds", bounds, "Include the generalized-robustness upper bounds");

  bool beamsplitter = false;
  std::string unitary_path;
  std::vector<int> between;
  auto* transform_cmd = app.add_subcommand("transform", "Apply a passive mode transformation to a state");
  transform_cmd->add_option("state", state_path, "State JSON file")->required();
  auto* bs_flag = transform_cmd->add_flag("--beamsplitter", beamsplitter, "Balanced beamsplitter");
  auto* u_opt = transform_cmd->add_option("--unitary", unitary_path, "Mode unitary JSON file");
  transform_cmd->add_option("--between", between, "Modes i,j mixed by the beamsplitter (default 0,m)")
      ->delimiter(',')
      ->expected(2);
  bs_flag->excludes(u_opt);
  u_opt->excludes(bs_flag);

  int steps = 10;
  auto* scan_cmd = app.add_subcommand("scan", "Parameter scans");
  scan_cmd->require_subcommand(1);
  auto* werner_cmd = scan_cmd->add_subcommand("werner", "Negativity along the two-mode Werner family");
  werner_cmd->add_option("--n", n, "Particle number N")->required();
  werner_cmd->add_option("--steps", steps, "Grid steps on [0, 1]")->check(CLI::PositiveNumber);

  std::string ent_path;
  std::vector<double> eps;
  auto* probe_cmd = app.add_subcommand("probe", "Probes of the separable set");
  probe_cmd->require_subcommand(1);
  auto* border_cmd = probe_cmd->add_subcommand("border", "Verdicts along (sep + eps ent) / (1 + eps)");
  border_cmd->add_option("separable", state_path, "Separable anchor state")->required();
  border_cmd->add_option("entangled", ent_path, "Non-block-diagonal perturbation")->required();
  border_cmd->add_option("--eps", eps, "Epsilon grid (default 1e-1..1e-8)")->delimiter(',');

  int samples = 100;
  auto* sweep_cmd = app.add_subcommand("sweep", "Separability under sampled mode transformations");
  sweep_cmd->add_option("state", state_path, "State JSON file")->required();
  sweep_cmd->add_option("--samples", samples, "Number of transformations")->check(CLI::PositiveNumber);

  auto* selfcheck_cmd = app.add_subcommand("selfcheck", "Golden checks against known values");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();
  for (auto* sub : {werner_cmd, border_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    if (e.get_exit_code() == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }
  if (basis_cmd->parsed() || state_cmd->parsed()) {
    const bool modes_given = (basis_cmd->parsed() ? basis_cmd : state_cmd)->count("--modes") > 0;
    const bool m_given = (basis_cmd->parsed() ? basis_cmd : state_cmd)->count("--bipartition") > 0;
    if (!modes_given) modes = 2;
    if (!m_given) m = std::max(1, modes / 2);
  }

  try {
    if (basis_cmd->parsed()) {
      const auto b = make_basis(n, modes, m, g.cap);
      if (resolved_format(g, "json") == "json") {
        out << to_json(*b).dump(2) << "\n";
      } else {
        out << "flat,k,sigma,sigma_prime,a,b,occupation\n";
        for (std::size_t f = 0; f < b->dim(); ++f) {
          const auto l = b->label(f);
          const auto e = b->embed_index(f);
          std::string occ;
          for (int x : b->occupation(f)) occ += (occ.empty() ? "" : " ") + std::to_string(x);
          out << f << "," << l.k << "," << l.sigma << "," << l.sigma_prime << "," << e.a << "," << e.b << "," << occ << "\n";
        }
      }
      return kExitOk;
    }

    if (state_cmd->parsed()) {
      require_json(g, "state");
      const auto b = make_basis(n, modes, m, g.cap);
      nlohmann::json j;
      if (preset == "totally-mixed") {
        j = to_json(totally_mixed(b));
      } else if (preset == "phase") {
        if (phases.empty()) phases.assign(static_cast<std::size_t>(n + 1), 0.0);
        j = to_json(phase_state(b, phases));
      } else if (preset == "negative-coherence") {
        j = to_json(negative_coherence_state(b));
      } else if (preset == "max-ent") {
        j = to_json(maximally_entangled(b));
      } else {
        j = to_json(werner_like(p, maximally_entangled(b)));
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (analyze_cmd->parsed()) {
      const auto j = analyze_state(parse_state_file(state_path, g.cap), g);
      const auto fmt = resolved_format(g, "json");
      if (fmt == "json") {
        out << j.dump(2) << "\n";
      } else {
        out << "key,value\n";
        print_csv_pairs(out, j);
      }
      return kExitOk;
    }

    if (rob_cmd->parsed()) {
      require_json(g, "robustness");
      RobustnessOptions opts;
      opts.block_tol = g.tol;
      opts.keep_witness = g.emit_witness;
      const auto kind = generalized ? RobustnessKind::generalized : RobustnessKind::standard;
      const auto s = parse_state_file(state_path, g.cap);
      RobustnessReport report;
      if (const auto* mix = std::get_if<SectoredState>(&s)) {
        report = robustness_superselection(*mix, kind, opts);
      } else {
        const auto rho = as_density(s);
        report = robustness(rho, kind, opts);
        if (bounds && !report.bounds) report.bounds = rg_bounds(rho, opts);
      }
      auto j = to_json(report, g.emit_witness);
      if (!bounds) {
        j.erase("bounds");
        if (j.contains("sectors"))
          for (auto& sec : j["sectors"]) sec["report"].erase("bounds");
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (transform_cmd->parsed()) {
      require_json(g, "transform");
      if (!beamsplitter && unitary_path.empty()) throw UsageError("transform needs --beamsplitter or --unitary");
      const auto s = parse_state_file(state_path, g.cap);
      auto apply = [&](const auto& state) {
        const auto& b = state.basis();
        if (beamsplitter) {
          const int i = between.empty() ? 0 : between[0];
          const int j = between.empty() ? b.first_modes() : between[1];
          if (i < 0 || j < 0 || i >= b.modes() || j >= b.modes() || i == j)
            throw ValidationError("beamsplitter modes must be two distinct indices below M=" + std::to_string(b.modes()));
          return transform_state(state, embedded_beamsplitter(b.modes(), i, j));
        }
        return transform_state(state, parse_unitary_file(unitary_path));
      };
      nlohmann::json j;
      if (const auto* psi = std::get_if<PureState>(&s)) {
        j = to_json(apply(*psi));
      } else if (const auto* rho = std::get_if<DensityMatrix>(&s)) {
        j = to_json(apply(*rho));
      } else {
        std::vector<SectoredState::Component> comps;
        for (const auto& c : std::get<SectoredState>(s).components()) comps.push_back({c.weight, apply(c.state)});
        j = to_json(SectoredState::make(std::move(comps)));
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (werner_cmd->parsed()) {
      const auto pts = werner_scan(make_basis(n, 2, 1, g.cap), uniform_grid(steps));
      if (resolved_format(g, "csv") == "csv") {
        out << "p,negativity,verdict\n";
        for (const auto& pt : pts) out << num(pt.p) << "," << num(pt.negativity) << "," << to_string(pt.verdict.status) << "\n";
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& pt : pts)
          rows.push_back({{"p", pt.p}, {"negativity", pt.negativity}, {"verdict", verdict_json(pt.verdict)}});
        out << rows.dump(2) << "\n";
      }
      return kExitOk;
    }

    if (border_cmd->parsed()) {
      const auto anchor = as_density(parse_state_file(state_path, g.cap));
      const auto pert = as_density(parse_state_file(ent_path, g.cap));
      if (eps.empty()) eps = default_epsilon_grid();
      const auto pts = border_probe(anchor, pert, eps, g.tol);
      if (resolved_format(g, "csv") == "csv") {
        out << "epsilon,verdict,non_block_linf\n";
        for (const auto& pt : pts)
          out << num(pt.epsilon) << "," << to_string(pt.verdict.status) << "," << num(pt.non_block_linf) << "\n";
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& pt : pts)
          rows.push_back({{"epsilon", pt.epsilon}, {"verdict", verdict_json(pt.verdict)}, {"non_block_linf", pt.non_block_linf}});
        out << rows.dump(2) << "\n";
      }
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const auto rho = as_density(parse_state_file(state_path, g.cap));
      const auto r = bipartition_sweep(rho, samples, g.seed, g.tol);
      if (resolved_format(g, "csv") == "csv") {
        out << "sample,beamsplitter,verdict,non_block_linf\n";
        for (const auto& s : r.samples)
          out << s.index << "," << (s.beamsplitter ? 1 : 0) << "," << to_string(s.verdict.status) << ","
              << num(s.non_block_linf) << "\n";
        err << "fraction_separable " << num(r.fraction_separable) << "\n";
      } else {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& s : r.samples)
          rows.push_back({{"sample", s.index},
                          {"beamsplitter", s.beamsplitter},
                          {"verdict", verdict_json(s.verdict)},
                          {"non_block_linf", s.non_block_linf}});
        out << nlohmann::json{{"fraction_separable", r.fraction_separable}, {"samples", rows}}.dump(2) << "\n";
      }
      return kExitOk;
    }

    if (selfcheck_cmd->parsed()) {
      const auto items = run_selfcheck();
      bool all = true;
      if (resolved_format(g, "text") == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& it : items) {
          all = all && it.pass;
          rows.push_back({{"name", it.name}, {"pass", it.pass}, {"expected", it.expected}, {"measured", it.measured}});
        }
        out << rows.dump(2) << "\n";
      } else {
        for (const auto& it : items) {
          all = all && it.pass;
          out << (it.pass ? "PASS " : "FAIL ") << it.name << " (expected " << it.expected << ", got " << it.measured << ")\n";
        }
      }
      return all ? kExitOk : kExitCheckFailed;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "validation error:\n" << e.what() << "\n";
    return kExitValidation;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace bosent::cli
