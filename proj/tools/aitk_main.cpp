#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "aitk/config.hpp"
#include "aitk/construct.hpp"
#include "aitk/kolmo.hpp"
#include "aitk/martingale.hpp"
#include "aitk/suite.hpp"

namespace fs = std::filesystem;
using namespace aitk;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCriterionFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInternal = 3;

BitString parse_bits(const std::string& text, const std::string& where) {
  for (size_t i = 0; i < text.size(); ++i)
    if (text[i] != '0' && text[i] != '1')
      throw ConfigError(where + ": invalid character '" +
                        std::string(1, text[i]) + "' at column " +
                        std::to_string(i + 1));
  return BitString::from_text(text);
}

std::vector<BitString> read_targets(const std::vector<std::string>& inline_t,
                                    const std::string& file) {
  std::vector<BitString> out;
  for (size_t i = 0; i < inline_t.size(); ++i)
    out.push_back(parse_bits(inline_t[i], "target " + std::to_string(i + 1)));
  if (!file.empty()) {
    std::ifstream f(file);
    if (!f) throw ConfigError("cannot read target file: " + file);
    std::string line;
    size_t ln = 0;
    while (std::getline(f, line)) {
      ++ln;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      out.push_back(parse_bits(line, file + ":" + std::to_string(ln)));
    }
  }
  if (out.empty()) throw ConfigError("no targets given");
  return out;
}

void write_file(const fs::path& dir, const std::string& name,
                const std::string& body) {
  fs::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + (dir / name).string());
  f << body;
}

std::string report_header(const ExperimentConfig& cfg) {
  return std::string("# tool_version=") + kToolVersion +
         " config_digest=" + cfg.digest() +
         " machine_digest=" + cfg.machine.digest() + "\n";
}

Martingale named_strategy(const std::string& name,
                          const ExperimentConfig& cfg) {
  if (name == "pool") {
    BettorPool pool = machine_bettor_pool(
        cfg.pool_cap, BitString{},
        ExecBudget{cfg.budget_bound, cfg.budget_constant}, cfg.machine);
    return pool.aggregate;
  }
  if (name.rfind("fair:", 0) == 0)
    return deterministic_fair_strategy(std::stoull(name.substr(5)), false);
  if (name.rfind("positive:", 0) == 0)
    return deterministic_fair_strategy(std::stoull(name.substr(9)), true);
  throw ConfigError("unknown strategy '" + name +
                    "' (try pool, fair:<seed>, positive:<seed>)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-bounded algorithmic randomness workbench"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool seedless = false;  // builders are deterministic; accepted for scripts
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--out", out_dir, "output directory for reports");
  app.add_flag("--seedless", seedless,
               "assert the run uses no randomness source (always true)");

  auto* c_cplx = app.add_subcommand("complexity",
                                    "shortest-code search for targets");
  std::vector<std::string> targets;
  std::string target_file, conditional_text, budget_name;
  uint64_t cap_override = 0;
  bool unbounded = false;
  c_cplx->add_option("targets", targets, "'0'/'1' target strings");
  c_cplx->add_option("--targets-file", target_file, "one target per line");
  c_cplx->add_option("--conditional", conditional_text, "conditional string");
  c_cplx->add_option("--budget", budget_name, "time bound name");
  c_cplx->add_option("--cap", cap_override, "search cap override");
  c_cplx->add_flag("--unbounded", unbounded, "no step budget (plain K)");

  auto* c_comp = app.add_subcommand("compress",
                                    "emit the witness code per target");
  c_comp->add_option("targets", targets, "'0'/'1' target strings");
  c_comp->add_option("--targets-file", target_file, "one target per line");
  c_comp->add_option("--conditional", conditional_text, "conditional string");
  c_comp->add_option("--budget", budget_name, "time bound name");
  c_comp->add_option("--cap", cap_override, "search cap override");
  c_comp->add_flag("--unbounded", unbounded, "no step budget (plain K)");

  auto* c_mart = app.add_subcommand("martingale-run",
                                    "value transcript of a strategy");
  std::string strategy = "pool", play_text;
  c_mart->add_option("--strategy", strategy,
                     "pool | fair:<seed> | positive:<seed>");
  c_mart->add_option("play", play_text, "'0'/'1' string to play")->required();

  auto* c_pair = app.add_subcommand("build-pair",
                                    "staged counterexample-pair builder");
  std::string kind = "incompressibility";
  bool no_replay = false;
  c_pair->add_option("--kind", kind,
                     "incompressibility | martingale | asymmetric");
  c_pair->add_flag("--no-replay", no_replay, "skip certificate replay");

  auto* c_suite = app.add_subcommand("suite", "run all acceptance criteria");

  // let --config/--out/--seedless appear after the subcommand too
  for (CLI::App* sub : {c_cplx, c_comp, c_mart, c_pair, c_suite})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfigError;
  }

  try {
    ExperimentConfig cfg = config_path.empty()
                               ? ExperimentConfig{}
                               : ExperimentConfig::load(config_path);
    cfg.validate();
    fs::path out(out_dir);

    if (*c_cplx || *c_comp) {
      std::vector<BitString> ts = read_targets(targets, target_file);
      BitString cond = conditional_text.empty()
                           ? BitString{}
                           : parse_bits(conditional_text, "--conditional");
      std::string bound = budget_name.empty() ? cfg.budget_bound : budget_name;
      {
        const auto known = time_bound_names();
        if (std::find(known.begin(), known.end(), bound) == known.end())
          throw ConfigError("unknown --budget '" + bound + "'");
      }
      std::optional<ExecBudget> budget;
      if (!unbounded) budget = ExecBudget{bound, cfg.budget_constant};
      size_t cap = cap_override ? cap_override : cfg.complexity_cap;
      if (cap > cfg.machine.enum_cap)
        throw ConfigError("--cap exceeds machine.enum_cap");
      std::ostringstream csv;
      csv << report_header(cfg);
      bool compress_mode = c_comp->parsed();
      csv << (compress_mode
                  ? "target,conditional,budget,cap,code,code_len\n"
                  : "target,conditional,budget,cap,value,witness,exhaustive,"
                    "scanned,halted\n");
      for (const auto& t : ts) {
        ComplexityQuery q;
        q.target = t;
        q.conditional = cond;
        q.budget = budget;
        q.code_cap = cap;
        ComplexityReport rep = complexity(q, cfg.machine);
        std::string bname = unbounded ? "unbounded" : bound;
        if (compress_mode)
          csv << t.to_text() << "," << cond.to_text() << "," << bname << ","
              << cap << ","
              << (rep.witness ? rep.witness->to_text() : std::string()) << ","
              << (rep.value ? std::to_string(*rep.value) : std::string())
              << "\n";
        else
          csv << t.to_text() << "," << cond.to_text() << "," << bname << ","
              << cap << ","
              << (rep.value ? std::to_string(*rep.value) : std::string())
              << ","
              << (rep.witness ? rep.witness->to_text() : std::string())
              << ",1," << rep.programs_scanned << "," << rep.halted_runs
              << "\n";
      }
      write_file(out, compress_mode ? "compress.csv" : "complexity.csv",
                 csv.str());
      return kExitPass;
    }

    if (*c_mart) {
      BitString play = parse_bits(play_text, "play");
      Martingale d = named_strategy(strategy, cfg);
      MartingaleTranscript t = run_martingale(d, play);
      write_file(out, "martingale_run.csv", report_header(cfg) + t.to_csv());
      return kExitPass;
    }

    if (*c_pair) {
      PairArtifact art;
      if (kind == "incompressibility") {
        IncompressibilityParams p;
        p.code_cap = cfg.incompressibility_cap;
        p.max_slack = cfg.max_slack;
        art = build_pair_incompressibility(
            StageSchedule::default_incompressibility(), p, cfg.machine);
      } else if (kind == "martingale") {
        MartingaleParams p;
        p.pool_cap = cfg.pool_cap;
        p.window_constant = cfg.window_constant;
        art = build_pair_martingale(StageSchedule::default_martingale(), p,
                                    cfg.machine);
      } else if (kind == "asymmetric") {
        AsymmetricParams p;
        p.pool_cap = cfg.pool_cap;
        art = build_pair_asymmetric(p, cfg.machine);
      } else {
        throw ConfigError("unknown --kind '" + kind + "'");
      }
      write_file(out, "pair_" + kind + ".txt",
                 report_header(cfg) + art.serialize());
      if (!no_replay) {
        std::vector<std::string> fails = replay_certificates(art, cfg.machine);
        for (const auto& f : fails) std::cerr << "replay failure: " << f
                                              << "\n";
        if (!fails.empty()) return kExitCriterionFailure;
      }
      return kExitPass;
    }

    if (*c_suite) {
      SuiteResult r = run_suite(cfg);
      for (const auto& [name, body] : r.reports)
        write_file(out, name, report_header(cfg) + body);
      write_file(out, "summary.json", r.summary_json());
      for (const auto& c : r.criteria)
        std::cout << "criterion " << c.id << " (" << c.name << "): "
                  << (c.passed ? "pass"
                               : (c.inconclusive ? "inconclusive" : "fail"))
                  << " -- " << c.detail << "\n";
      return r.all_passed() ? kExitPass : kExitCriterionFailure;
    }
    return kExitConfigError;  // unreachable: a subcommand is required
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const NoWitnessError& e) {
    std::cerr << "no witness: " << e.what() << "\n";
    return kExitCriterionFailure;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
