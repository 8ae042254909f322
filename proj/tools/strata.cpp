// Command-line front end: validate covers, stratify, compute DH densities,
// render planar stratifications and cross-check volumes by Monte Carlo.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "strata/cli_io.hpp"
#include "strata/error.hpp"

using namespace strata;

namespace {

struct Options {
  std::string input;
  std::string out;
  std::uint64_t seed = 1;
  std::size_t samples = 3;
  std::size_t trials = 100000;
  bool check_delzant = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + o.out);
  out << text;
}

struct Loaded {
  std::string bytes;
  InputSpec spec;
  std::optional<ToricAction> action;
  PiecewiseAffineCover cover;
  bool formal = false;
};

Loaded load(const Options& o) {
  Loaded l;
  l.bytes = read_file(o.input);
  l.spec = parse_input(l.bytes);
  if (const auto* t = std::get_if<ToricSpec>(&l.spec)) {
    l.action = ToricAction::make(t->polytope, t->B);
    l.cover = momentum_cover(*l.action);
    if (o.check_delzant && !is_delzant(l.action->polytope)) {
      std::cerr << "warning: polytope is not Delzant; the stratification is formal\n";
      l.formal = true;
    }
  } else {
    l.cover = std::get<CoverSpec>(l.spec).cover;
  }
  return l;
}

ToricAction& require_toric(Loaded& l, const char* command) {
  if (!l.action) throw Error(ErrorKind::ParseError, std::string(command) + " needs a toric input");
  return *l.action;
}

// Frontier, tangent and (for toric inputs) isotropy checks; exit 4 on failure.
void check_soundness(const Loaded& l, const Stratification& s, const Options& o) {
  const auto frontier = verify_frontier(s);
  if (!frontier.empty()) {
    throw Error(ErrorKind::NonIntegrable, "frontier condition fails between strata " + std::to_string(frontier.front().lower) + " and " +
                                              std::to_string(frontier.front().upper) + ": " + frontier.front().reason);
  }
  const auto tangent = verify_tangent_condition(s, l.cover, o.samples, o.seed);
  if (!tangent.violations.empty()) {
    throw Error(ErrorKind::NonIntegrable, "stratum " + std::to_string(tangent.violations.front().stratum) +
                                              " is not tangent to the direction field at " + to_string(tangent.violations.front().point));
  }
  if (!l.action) return;
  std::mt19937_64 rng(o.seed);
  for (const auto& st : s.strata) {
    for (const auto& x : sample_stratum(st, o.samples, rng)) {
      std::vector<RatMat> dirs;
      for (const auto& d : isotropy_at(*l.action, x)) dirs.push_back(d.annihilator);
      if (!(direction_intersect(dirs) == st.direction)) {
        throw Error(ErrorKind::NonIntegrable, "isotropy annihilators disagree with stratum " + std::to_string(st.id) + " at " + to_string(x));
      }
    }
  }
}

StratificationFile stratify_file(Loaded& l, const Options& o, const std::string& command) {
  StratificationFile file;
  file.stratification = stratify(l.cover);
  check_soundness(l, file.stratification, o);
  file.provenance.input_sha256 = sha256_hex(l.bytes);
  file.provenance.command = command;
  file.provenance.seed = o.seed;
  file.provenance.samples = o.samples;
  file.provenance.formal = l.formal;
  return file;
}

void attach_densities(Loaded& l, StratificationFile& file, const Options& o) {
  auto& a = require_toric(l, "dh");
  for (const auto& st : file.stratification.strata) {
    if (st.dim == a.k()) file.densities.emplace(st.id, density_polynomial(a, file.stratification, st.id, o.seed));
  }
}

int run_validate(const Options& o) {
  auto l = load(o);
  const auto report = validate(l.cover);
  emit(o, serialize_report(report, l.cover));
  if (!report.valid) {
    std::cerr << report.describe();
    return exit_code(ErrorKind::InvalidCover);
  }
  return 0;
}

int run_stratify(const Options& o) {
  auto l = load(o);
  emit(o, serialize(stratify_file(l, o, "stratify")));
  return 0;
}

int run_dh(const Options& o) {
  auto l = load(o);
  require_toric(l, "dh");
  auto file = stratify_file(l, o, "dh");
  attach_densities(l, file, o);
  emit(o, serialize(file));
  return 0;
}

int run_render(const Options& o) {
  const auto bytes = read_file(o.input);
  if (is_stratification_file(bytes)) {
    emit(o, render_svg(parse_stratification(bytes)));
    return 0;
  }
  auto l = load(o);
  auto file = stratify_file(l, o, "render");
  if (l.action) attach_densities(l, file, o);
  emit(o, render_svg(file));
  return 0;
}

int run_oracle(const Options& o) {
  auto l = load(o);
  auto& a = require_toric(l, "oracle");
  const auto s = stratify(l.cover);
  std::mt19937_64 rng(o.seed);
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  std::size_t total = 0;
  std::size_t agree = 0;
  for (const auto& st : s.strata) {
    if (st.dim != a.k()) continue;
    for (std::size_t i = 0; i < o.samples; ++i) {
      const auto& cell = st.cells[i % st.cells.size()];
      if (cell.dim() != a.k()) continue;
      const auto x = random_relint_point(cell, rng, 1000);
      const Rat exact = fiber_volume(a, x).volume;
      const auto mc = mc_fiber_volume(a, x, o.trials, o.seed + total);
      const double err = std::abs(mc.estimate - to_double(exact));
      const bool ok = err <= 4 * mc.standard_error + 1e-12;
      ++total;
      agree += ok;
      points.push_back({{"stratum", st.id},
                        {"point", [&] {
                           nlohmann::ordered_json p = nlohmann::ordered_json::array();
                           for (const auto& c : x) p.push_back(to_string(c));
                           return p;
                         }()},
                        {"exact", to_string(exact)},
                        {"estimate", mc.estimate},
                        {"standard_error", mc.standard_error},
                        {"within_4_sigma", ok}});
    }
  }
  const bool pass = total == 0 || static_cast<double>(agree) >= 0.99 * static_cast<double>(total);
  nlohmann::ordered_json j;
  j["trials"] = o.trials;
  j["seed"] = o.seed;
  j["points"] = points;
  j["agreeing"] = agree;
  j["total"] = total;
  j["pass"] = pass;
  emit(o, j.dump(2) + "\n");
  return pass ? 0 : exit_code(ErrorKind::DegenerateFiber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact affine stratifications of momentum images and Duistermaat-Heckman densities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;
  if (const char* env = std::getenv("STRATA_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: STRATA_SEED must be a nonnegative integer\n";
      return 2;
    }
  }

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("input", o.input, "Toric spec, cover or stratification JSON file")->required();
    cmd->add_option("--out,-o", o.out, "Output file (default: standard output)");
    cmd->add_option("--seed", o.seed, "Random seed (default: $STRATA_SEED or 1)");
    cmd->add_option("--samples", o.samples, "Sample points per stratum for checks and the oracle")->check(CLI::PositiveNumber);
    cmd->add_flag("--check-delzant", o.check_delzant, "Warn and mark the output formal when the polytope is not Delzant");
  };
  auto* validate_cmd = app.add_subcommand("validate-cover", "Check the piecewise-affine cover conditions");
  auto* stratify_cmd = app.add_subcommand("stratify", "Compute the stratification");
  auto* dh_cmd = app.add_subcommand("dh", "Stratify and attach density polynomials to top strata");
  auto* render_cmd = app.add_subcommand("render", "Draw a stratification of R^1 or R^2 as SVG");
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare exact fiber volumes with Monte Carlo estimates");
  for (auto* cmd : {validate_cmd, stratify_cmd, dh_cmd, render_cmd, oracle_cmd}) add_common(cmd);
  oracle_cmd->add_option("--trials", o.trials, "Monte Carlo trials per point")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate_cmd) return run_validate(o);
    if (*stratify_cmd) return run_stratify(o);
    if (*dh_cmd) return run_dh(o);
    if (*render_cmd) return run_render(o);
    if (*oracle_cmd) return run_oracle(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
