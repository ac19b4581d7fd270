#include "run_config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

namespace invscheme::cli {

using nlohmann::json;

namespace {

const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"solve", Command::solve},
      {"exact", Command::exact},
      {"verify-integrals", Command::verify_integrals},
      {"symmetry-table", Command::symmetry_table},
      {"backlund-check", Command::backlund_check},
      {"convergence", Command::convergence},
      {"singular", Command::singular}};
  return names;
}

double number(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    try {
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("'" + key + "' must be a number");
}

long integer(const json& v, const std::string& key) {
  const double d = number(v, key);
  if (d != std::floor(d) || std::abs(d) > 1e15) throw ConfigError("'" + key + "' must be an integer");
  return static_cast<long>(d);
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [name, cmd] : command_names()) {
    if (cmd == c) return name;
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  const auto it = command_names().find(name);
  if (it == command_names().end()) throw ConfigError("unknown command '" + name + "'");
  return it->second;
}

ThetaSpec parse_theta(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "exact") return {ThetaMode::exact, 0.0};
    if (s == "one" || s == "unit") return {ThetaMode::unit, -1.0};
  }
  const double d = number(v, "theta");
  if (d == 0.0 || !std::isfinite(d)) throw ConfigError("theta must be finite and nonzero");
  return {ThetaMode::value, d};
}

std::pair<long, long> parse_range(const std::string& t) {
  const auto dots = t.find("..");
  if (dots == std::string::npos) throw ConfigError("range must look like <start>..<end>");
  const long lo = integer(json(t.substr(0, dots)), "n");
  const long hi = integer(json(t.substr(dots + 2)), "n");
  if (hi < lo) throw ConfigError("range end before start");
  return {lo, hi};
}

void apply_layer(const json& layer, RunConfig& cfg) {
  if (!layer.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, v] : layer.items()) {
    if (key == "command") cfg.command = parse_command(text(v, key));
    else if (key == "scheme") {
      cfg.scheme = text(v, key);
      if (cfg.scheme != "ode2" && cfg.scheme != "winternitz") {
        throw ConfigError("scheme must be ode2 or winternitz");
      }
    }
    else if (key == "c") cfg.c = number(v, key);
    else if (key == "eps") cfg.eps = number(v, key);
    else if (key == "theta") cfg.theta = parse_theta(v);
    else if (key == "k") cfg.k = number(v, key);
    else if (key == "a" || key == "A") cfg.a = number(v, key);
    else if (key == "b" || key == "B") cfg.b = number(v, key);
    else if (key == "rho") cfg.rho = number(v, key);
    else if (key == "c1") cfg.w.c1 = number(v, key);
    else if (key == "c2") cfg.w.c2 = number(v, key);
    else if (key == "c3") cfg.w.c3 = number(v, key);
    else if (key == "c4") cfg.w.c4 = number(v, key);
    else if (key == "c5") cfg.w.c5 = number(v, key);
    else if (key == "c6") cfg.w.c6 = number(v, key);
    else if (key == "n") {
      std::pair<long, long> r;
      if (v.is_string()) {
        r = parse_range(v.get<std::string>());
      } else if (v.is_object() && v.contains("start") && v.contains("end")) {
        r = {integer(v["start"], "n.start"), integer(v["end"], "n.end")};
      } else {
        throw ConfigError("'n' must be \"start..end\" or {start, end}");
      }
      cfg.n_start = r.first;
      cfg.n_end = r.second;
    }
    else if (key == "tol") cfg.tol = number(v, key);
    else if (key == "out") cfg.out = text(v, key);
    else if (key == "in") cfg.in = text(v, key);
    else if (key == "seed") {
      const long s = integer(v, key);
      if (s < 0) throw ConfigError("seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    }
    else if (key == "s") cfg.s = number(v, key);
    else if (key == "trials") cfg.trials = static_cast<int>(integer(v, key));
    else if (key == "eps_list") {
      cfg.eps_list.clear();
      if (v.is_array()) {
        for (const json& e : v) cfg.eps_list.push_back(number(e, key));
      } else {
        std::stringstream ss(text(v, key));
        std::string item;
        while (std::getline(ss, item, ',')) cfg.eps_list.push_back(number(json(item), key));
      }
    }
    else if (key == "x_start") cfg.x_start = number(v, key);
    else if (key == "x_end") cfg.x_end = number(v, key);
    else if (key == "min_order") cfg.min_order = number(v, key);
    else if (key == "x0") cfg.x0 = number(v, key);
    else if (key == "config") continue;
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

namespace {

void validate(const RunConfig& cfg) {
  if (!(cfg.eps > 0.0) || !std::isfinite(cfg.eps)) throw ConfigError("eps must be positive");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (cfg.n_start && *cfg.n_end - *cfg.n_start + 1 < 4) {
    throw ConfigError("index range must hold at least 4 nodes");
  }
  if (cfg.trials < 0) throw ConfigError("trials must be non-negative");
  for (double e : cfg.eps_list) {
    if (!(e > 0.0)) throw ConfigError("eps_list entries must be positive");
  }
  if (cfg.eps_list.size() < 2) throw ConfigError("eps_list needs at least two values");
}

}  // namespace

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Invariant difference schemes for the Schwarz equation and the "
               "second-order ODE from the Lie list"};
  std::string command;
  app.add_option("command", command,
                 "solve | exact | verify-integrals | symmetry-table | "
                 "backlund-check | convergence | singular")
      ->required();

  // flag -> config key; values are collected as text and typed by apply_layer
  struct Flag {
    const char* names;
    const char* key;
    const char* help;
  };
  static const Flag flags[] = {
      {"--config", "config", "JSON config file; flags override it"},
      {"--scheme", "scheme", "exact: ode2 or winternitz"},
      {"--c", "c", "scheme constant C (default 2)"},
      {"--eps", "eps", "mesh density (default 0.01)"},
      {"--theta", "theta", "exact | one | <value>"},
      {"--k", "k", "Winternitz constant (default from c and eps)"},
      {"--rho", "rho", "index shift of the exact solution"},
      {"--A,--a", "a", "constant A (slope a for singular)"},
      {"--B,--b", "b", "constant B (offset b for singular)"},
      {"--c1", "c1", "Winternitz y constant"},
      {"--c2", "c2", "Winternitz y constant"},
      {"--c3", "c3", "Winternitz y constant"},
      {"--c4", "c4", "Winternitz t constant"},
      {"--c5", "c5", "Winternitz t constant"},
      {"--c6", "c6", "Winternitz t constant"},
      {"--n", "n", "index range <start>..<end>"},
      {"--tol", "tol", "tolerance of the pass/fail checks"},
      {"--out", "out", "output directory"},
      {"--seed", "seed", "random seed"},
      {"--in", "in", "input CSV (verify-integrals)"},
      {"--s", "s", "group parameter (symmetry-table)"},
      {"--trials", "trials", "random group parameters (symmetry-table)"},
      {"--eps-list", "eps_list", "comma-separated eps values (convergence)"},
      {"--x-start", "x_start", "first abscissa (convergence)"},
      {"--x-end", "x_end", "last abscissa (convergence)"},
      {"--min-order", "min_order", "required observed order (convergence)"},
      {"--x0", "x0", "first abscissa (singular)"},
  };
  std::map<std::string, std::string> given;
  std::vector<std::pair<std::string, CLI::Option*>> opts;
  for (const Flag& f : flags) {
    opts.emplace_back(f.key, app.add_option(f.names, given[f.key], f.help));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig cfg;
  cfg.command = parse_command(command);
  if (opts.front().second->count() > 0) {
    std::ifstream is(given["config"]);
    if (!is) throw ConfigError("cannot read config file '" + given["config"] + "'");
    json file;
    try {
      file = json::parse(is);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config file: ") + e.what());
    }
    apply_layer(file, cfg);
    cfg.command = parse_command(command);
  }
  json layer = json::object();
  for (const auto& [key, opt] : opts) {
    if (key != "config" && opt->count() > 0) layer[key] = given[key];
  }
  apply_layer(layer, cfg);
  validate(cfg);
  return cfg;
}

}  // namespace invscheme::cli
