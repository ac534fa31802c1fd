// Copyright 2026 The conehyperlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "conehyperlab/errors.hpp"
#include "conehyperlab/hopoly.hpp"
#include "conehyperlab/verify.hpp"
#include "conehyperlab/version.hpp"

namespace conehyperlab::cli {

namespace {

using nlohmann::json;

BallScheme parse_scheme(const std::string& s) {
  if (s == "rejection") {
    return BallScheme::rejection;
  }
  if (s == "svd-param") {
    return BallScheme::svd_param;
  }
  throw InvalidParam("scheme must be rejection or svd-param, got '" + s + "'");
}

std::string join(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? ";" : "") << v[i];
  }
  return os.str();
}

json header(const RunConfig& cfg, const std::string& command) {
  return {{"version", version()}, {"command", command}, {"config", cfg.to_json()}, {"seed", cfg.seed}};
}

std::string csv_preamble(const RunConfig& cfg, const std::string& command) {
  std::ostringstream os;
  os << "# version: " << version() << '\n'
     << "# command: " << command << '\n'
     << "# config: " << cfg.to_json().dump() << '\n'
     << "# seed: " << cfg.seed << '\n';
  return os.str();
}

std::filesystem::path write_output(const RunConfig& cfg, const std::string& stem, const std::string& ext,
                                   const std::string& body) {
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / (stem + "." + ext);
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw InvalidParam("cannot write " + path.string());
  }
  f << body;
  return path;
}

hypergroup::ConvConfig conv_config(const RunConfig& cfg) {
  hypergroup::ConvConfig c;
  c.mc.n_samples = cfg.samples();
  c.mc.seed = cfg.seed;
  c.mc.threads = cfg.threads;
  c.scheme = parse_scheme(cfg.scheme);
  return c;
}

// (t, t2) pairs scanned per rank; the last q = 1 pair sits where sin t sin t2 > cos t cos t2.
std::vector<std::pair<RealVec, RealVec>> scan_pairs(int q) {
  switch (q) {
    case 1:
      return {{{0.3}, {0.9}}, {{0.7}, {0.6}}, {{1.0}, {1.2}}};
    case 2:
      return {{{0.6, 0.3}, {0.5, 0.2}}, {{1.2, 0.9}, {1.1, 0.7}}};
    default:
      return {{{0.6, 0.3, 0.2}, {0.5, 0.2, 0.15}}, {{1.2, 0.9, 0.5}, {1.1, 0.7, 0.4}}};
  }
}

}  // namespace

std::uint64_t RunConfig::samples() const {
  if (n_samples != 0) {
    return n_samples;
  }
  return q == 1 ? 200000 : 2000000;
}

json RunConfig::to_json() const {
  return {{"q", q},
          {"p", p},
          {"l", l},
          {"max_deg", max_deg},
          {"quad_order", quad_order},
          {"n_samples", samples()},
          {"seed", seed},
          {"scheme", scheme},
          {"format", format},
          {"resolution", resolution}};
}

void RunConfig::validate() const {
  if (q < 1 || q > 3) {
    throw InvalidParam("q must be 1, 2 or 3");
  }
  if (!(p > 2.0 * q - 1.0)) {
    std::ostringstream os;
    os << "p must satisfy p > 2q - 1 = " << 2 * q - 1 << " (got p = " << p << ")";
    throw InvalidParam(os.str());
  }
  if (max_deg < 0 || max_deg % 2 != 0) {
    throw InvalidParam("max_deg must be a nonnegative even integer");
  }
  if (quad_order < 0) {
    throw InvalidParam("quad_order must be nonnegative");
  }
  if (samples() < 1000) {
    throw InvalidParam("n_samples must be at least 1000");
  }
  parse_scheme(scheme);
  if (format != "json" && format != "csv") {
    throw InvalidParam("format must be json or csv");
  }
  if (resolution < 1) {
    throw InvalidParam("resolution must be positive");
  }
}

void apply_json(RunConfig& cfg, const json& doc) {
  if (!doc.is_object()) {
    throw InvalidParam("config file must hold a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "q") {
        cfg.q = value.get<int>();
      } else if (key == "p") {
        cfg.p = value.get<double>();
      } else if (key == "l") {
        cfg.l = value.get<double>();
      } else if (key == "max_deg") {
        cfg.max_deg = value.get<int>();
      } else if (key == "quad_order") {
        cfg.quad_order = value.get<int>();
      } else if (key == "n_samples") {
        cfg.n_samples = value.get<std::uint64_t>();
      } else if (key == "seed") {
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "scheme") {
        cfg.scheme = value.get<std::string>();
      } else if (key == "out_dir") {
        cfg.out_dir = value.get<std::string>();
      } else if (key == "format") {
        cfg.format = value.get<std::string>();
      } else if (key == "threads") {
        cfg.threads = value.get<unsigned>();
      } else if (key == "resolution") {
        cfg.resolution = value.get<int>();
      } else {
        throw InvalidParam("unknown config key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw InvalidParam("bad value for config key '" + key + "': " + e.what());
    }
  }
}

std::uint64_t env_seed() {
  const char* s = std::getenv("CONEHYPERLAB_SEED");
  if (s == nullptr || *s == '\0') {
    return 0;
  }
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || *s == '-') {
    throw InvalidParam(std::string("CONEHYPERLAB_SEED is not an unsigned integer: ") + s);
  }
  return v;
}

int exit_code(const std::vector<verify::CheckReport>& reports) {
  return verify::all_passed(reports) ? kOk : kCheckFailed;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const auto k = hopoly::Multiplicity::from_params(cfg.p, cfg.q, cfg.l);
  const auto table = hopoly::build_basis(k, cfg.max_deg, cfg.quad_order);
  const RealVec r = hopoly::rho(cfg.p, cfg.q, cfg.l);

  json rows = json::array();
  std::ostringstream csv;
  csv.precision(17);
  csv << csv_preamble(cfg, "build") << "lambda,leading_coefficient,c_function,rel_residual\n";
  out << "weights: " << table.weights().size() << '\n';
  for (const auto& lam : table.weights()) {
    RealVec shifted;
    for (int i = 0; i < cfg.q; ++i) {
      shifted.push_back(lam[i] + r[i]);
    }
    const double lead = table.leading_coefficient(lam);
    json row{{"lambda", lam.str()}, {"leading_coefficient", lead}};
    std::ostringstream line;
    line.precision(10);
    line << "  " << lam.str() << "  lead " << lead;
    try {
      const double c = hopoly::c_function(view(shifted), k);
      const double res = std::abs(lead - c) / std::abs(c);
      row["c_function"] = c;
      row["rel_residual"] = res;
      line << "  c " << c << "  residual " << res;
      csv << lam.str() << ',' << lead << ',' << c << ',' << res << '\n';
    } catch (const PoleError&) {
      row["c_function"] = nullptr;
      row["rel_residual"] = nullptr;
      line << "  c at a pole";
      csv << lam.str() << ',' << lead << ",,\n";
    }
    out << line.str() << '\n';
    rows.push_back(std::move(row));
  }

  std::filesystem::path path;
  if (cfg.format == "json") {
    json doc = header(cfg, "build");
    doc["weights"] = std::move(rows);
    doc["table"] = table.to_json();
    path = write_output(cfg, "table", "json", doc.dump(2) + "\n");
  } else {
    path = write_output(cfg, "table", "csv", csv.str());
  }
  out << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, std::ostream& out) {
  const auto& names = verify::suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) {
    throw InvalidParam("unknown suite '" + suite + "'");
  }
  cfg.validate();
  verify::SuiteOptions opt;
  opt.q = cfg.q;
  opt.p = cfg.p;
  opt.l = cfg.l;
  opt.max_deg = cfg.max_deg;
  opt.quad_order = cfg.quad_order;
  opt.conv = conv_config(cfg);
  opt.haar.mc = opt.conv.mc;
  const auto reports = verify::run_suite(suite, opt);

  std::map<std::string, std::pair<int, int>> tally;
  for (const auto& r : reports) {
    auto& [pass, total] = tally[r.name];
    pass += r.passed ? 1 : 0;
    ++total;
    if (!r.passed) {
      out << "FAIL " << r.name << ' ' << r.params.dump() << " err=" << r.abs_err << " tol=" << r.tolerance << '\n';
    }
  }
  for (const auto& [name, counts] : tally) {
    out << name << ": " << counts.first << "/" << counts.second << " passed\n";
  }
  std::filesystem::path path;
  if (cfg.format == "json") {
    json doc = header(cfg, "verify " + suite);
    doc["reports"] = verify::reports_to_json(reports);
    path = write_output(cfg, "verify_" + suite, "json", doc.dump(2) + "\n");
  } else {
    path = write_output(cfg, "verify_" + suite, "csv",
                        csv_preamble(cfg, "verify " + suite) + verify::reports_to_csv(reports));
  }
  out << "wrote " << path.string() << '\n';
  return exit_code(reports);
}

int cmd_scan_positivity(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  if (cfg.l < 0.0) {
    throw InvalidParam("positivity scan needs l >= 0");
  }
  std::vector<double> ls{0.0, 0.5, 1.0, 1.5, 2.0};
  if (std::find(ls.begin(), ls.end(), cfg.l) == ls.end()) {
    ls.push_back(cfg.l);
    std::sort(ls.begin(), ls.end());
  }
  const auto pairs = scan_pairs(cfg.q);
  auto conv = conv_config(cfg);

  json rows = json::array();
  std::ostringstream csv;
  std::ostringstream cells;
  csv.precision(17);
  cells.precision(17);
  csv << csv_preamble(cfg, "scan-positivity")
      << "p,l,t,t2,min_kernel,neg_mass_fraction,noise_floor,cone_neg_mass_fraction,n_samples,seed\n";
  cells << csv_preamble(cfg, "scan-positivity") << "# columns: row l pair";
  for (int j = 1; j <= cfg.q; ++j) {
    cells << " t" << j;
  }
  cells << " signed_mass\n";

  std::uint64_t row = 0;
  for (double l : ls) {
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
      conv.mc.stream = row;
      const auto& [t, t2] = pairs[pi];
      const auto rep = verify::positivity_scan(cfg.p, cfg.q, l, view(t), view(t2), cfg.resolution, conv);
      csv << cfg.p << ',' << l << ',' << join(view(rep.t)) << ',' << join(view(rep.t2)) << ',' << rep.min_kernel
          << ',' << rep.neg_mass_fraction << ',' << rep.noise_floor << ',' << rep.cone_neg_mass_fraction << ','
          << rep.n_samples << ',' << rep.seed << '\n';
      for (std::size_t c = 0; c < rep.cells.size(); ++c) {
        cells << row << ' ' << l << ' ' << pi;
        std::size_t rest = c;
        std::vector<double> centers(static_cast<std::size_t>(cfg.q));
        for (int j = cfg.q - 1; j >= 0; --j) {
          const std::size_t bin = rest % static_cast<std::size_t>(cfg.resolution);
          rest /= static_cast<std::size_t>(cfg.resolution);
          centers[static_cast<std::size_t>(j)] = (static_cast<double>(bin) + 0.5) / cfg.resolution * (M_PI / 2);
        }
        for (double x : centers) {
          cells << ' ' << x;
        }
        cells << ' ' << rep.cells[c] << '\n';
      }
      std::ostringstream line;
      line.precision(6);
      line << "l=" << l << " t=" << join(view(rep.t)) << " t2=" << join(view(rep.t2)) << "  min " << rep.min_kernel
           << "  neg fraction " << rep.neg_mass_fraction << "  noise floor " << rep.noise_floor;
      out << line.str() << '\n';
      rows.push_back(rep.to_json());
      ++row;
    }
  }
  std::filesystem::path path;
  if (cfg.format == "json") {
    json doc = header(cfg, "scan-positivity");
    doc["rows"] = std::move(rows);
    path = write_output(cfg, "positivity", "json", doc.dump(2) + "\n");
  } else {
    path = write_output(cfg, "positivity", "csv", csv.str());
  }
  const auto dat = write_output(cfg, "positivity_cells", "dat", cells.str());
  out << "wrote " << path.string() << " and " << dat.string() << '\n';
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of product formulas on the matrix cone hypergroups", "conehyperlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  RunConfig flags;
  std::string config_path;
  std::string suite = "all";
  std::map<std::string, CLI::Option*> given;

  auto add_common = [&](CLI::App* sub) {
    given["q"] = sub->add_option("--q", flags.q, "rank q");
    given["p"] = sub->add_option("--p", flags.p, "parameter p > 2q - 1");
    given["l"] = sub->add_option("--l", flags.l, "character index l");
    given["max_deg"] = sub->add_option("--max-deg", flags.max_deg, "largest lambda_1 in the table");
    given["quad_order"] = sub->add_option("--quad-order", flags.quad_order, "Gauss-Legendre order per dimension");
    given["n_samples"] = sub->add_option("--samples", flags.n_samples, "Monte Carlo sample count");
    given["seed"] = sub->add_option("--seed", flags.seed, "64-bit seed");
    given["scheme"] = sub->add_option("--scheme", flags.scheme, "ball sampler: rejection or svd-param");
    given["out_dir"] = sub->add_option("--out", flags.out_dir, "output directory");
    given["format"] = sub->add_option("--format", flags.format, "json or csv");
    given["threads"] = sub->add_option("--threads", flags.threads, "worker threads, 0 for all cores");
    given["resolution"] = sub->add_option("--resolution", flags.resolution, "cells per alcove axis");
    sub->add_option("--config", config_path, "JSON config file; flags take precedence");
  };
  auto* build = app.add_subcommand("build", "build and serialize the polynomial table");
  auto* ver = app.add_subcommand("verify", "run a checker suite");
  auto* scan = app.add_subcommand("scan-positivity", "signed kernel mass over alcove cells");
  // Each subcommand gets its own option objects; remember the active ones.
  std::map<CLI::App*, std::map<std::string, CLI::Option*>> per_sub;
  for (auto* sub : {build, ver, scan}) {
    given.clear();
    add_common(sub);
    per_sub[sub] = given;
  }
  ver->add_option("suite", suite, "cone|jacobi|rank1|disk|koornwinder|kernel|ortho|axioms|all");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) {
      args.emplace_back(argv[i]);
    }
    app.parse(args);
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::Success&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kConfigError;
  }

  CLI::App* active = app.get_subcommands().front();
  try {
    RunConfig cfg;
    bool seed_set = false;
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) {
        throw InvalidParam("cannot read config file " + config_path);
      }
      json doc;
      try {
        doc = json::parse(f);
      } catch (const json::exception& e) {
        throw InvalidParam("config file is not valid JSON: " + std::string(e.what()));
      }
      apply_json(cfg, doc);
      seed_set = doc.contains("seed");
    }
    const auto& opts = per_sub.at(active);
    auto set = [&](const char* key, auto RunConfig::*field) {
      if (opts.at(key)->count() > 0) {
        cfg.*field = flags.*field;
      }
    };
    set("q", &RunConfig::q);
    set("p", &RunConfig::p);
    set("l", &RunConfig::l);
    set("max_deg", &RunConfig::max_deg);
    set("quad_order", &RunConfig::quad_order);
    set("n_samples", &RunConfig::n_samples);
    set("seed", &RunConfig::seed);
    set("scheme", &RunConfig::scheme);
    set("out_dir", &RunConfig::out_dir);
    set("format", &RunConfig::format);
    set("threads", &RunConfig::threads);
    set("resolution", &RunConfig::resolution);
    if (opts.at("seed")->count() == 0 && !seed_set) {
      cfg.seed = env_seed();
    }

    if (active == build) {
      return cmd_build(cfg, out);
    }
    if (active == ver) {
      const auto& names = verify::suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        err << "error: unknown suite '" << suite << "'\n" << ver->help();
        return kConfigError;
      }
      return cmd_verify(cfg, suite, out);
    }
    return cmd_scan_positivity(cfg, out);
  } catch (const IllConditioned& e) {
    err << "ill-conditioned: " << e.what() << '\n';
    return kIllConditioned;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace conehyperlab::cli
