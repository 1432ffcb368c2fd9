// acs: build algebraic coherent states, scan parameters, write figure data,
// run the acceptance suite.
//
// Exit codes: 0 success, 1 internal error or failed check, 2 domain or
// normalizability error, 3 truncation not certified.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acs/checks.hpp"
#include "acs/errors.hpp"
#include "acs/io.hpp"
#include "acs/moments.hpp"
#include "acs/scan.hpp"
#include "acs/states.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitDomain = 2;
constexpr int kExitTruncation = 3;

// Flags shared by `state` and `scan`, each mapped onto a config key.
const std::vector<std::pair<std::string, std::string>> kParamFlags = {
    {"--k", "k"},       {"--flavor", "flavor"}, {"--z-re", "z_re"}, {"--z-im", "z_im"},
    {"--u-re", "u_re"}, {"--u-im", "u_im"},     {"--v-re", "v_re"}, {"--v-im", "v_im"},
    {"--w-re", "w_re"}, {"--w-im", "w_im"},     {"--trunc", "trunc"}, {"--out", "out"},
};

struct ParamFlags {
  std::map<std::string, std::string> values;  // config key -> raw text, only if given
  std::vector<std::string> sets;              // extra key=value overrides

  void attach(CLI::App* cmd) {
    for (const auto& [flag, key] : kParamFlags)
      cmd->add_option_function<std::string>(
          flag, [this, key = key](const std::string& v) { values[key] = v; }, key);
  }
  void apply(acs::ScanConfig& cfg) const {
    for (const auto& [key, v] : values) acs::set_config_value(cfg, key, v);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw acs::DomainError("--set expects key=value, got '" + s + "'");
      acs::set_config_value(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
  }
};

// Writes through `body` to `path`, or to stdout when the path is empty.
template <typename F>
void emit(const std::string& path, F body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw acs::DomainError("cannot write '" + path + "'");
  body(out);
}

int cmd_state(const ParamFlags& flags) {
  acs::ScanConfig cfg;
  flags.apply(cfg);
  const acs::ReprIndex repr = cfg.repr();
  const acs::AcsParams p{{cfg.z_re, cfg.z_im}, {cfg.u_re, cfg.u_im}, {cfg.v_re, cfg.v_im},
                         {cfg.w_re, cfg.w_im}, repr};
  const std::size_t n = flags.values.count("trunc") ? cfg.trunc : acs::default_truncation(repr);
  const auto psi = acs::solve_acs(p, n);
  nlohmann::json doc;
  doc["state"] = acs::state_to_json(psi, &p);
  doc["moments"] = acs::moments_to_json(acs::k_moments(psi));
  emit(cfg.out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
  return 0;
}

int cmd_scan(const std::string& config_path, const ParamFlags& flags) {
  acs::ScanConfig cfg = config_path.empty() ? acs::ScanConfig{} : acs::load_scan_config(config_path);
  flags.apply(cfg);
  const auto table = acs::run_scan(cfg, std::cerr);
  emit(cfg.out, [&](std::ostream& o) { acs::write_csv(table, o); });
  if (table.uncertified > 0) {
    std::cerr << table.uncertified << " row(s) not certified; enlarge trunc\n";
    return kExitTruncation;
  }
  return 0;
}

int cmd_figure(const std::string& which, const std::string& out) {
  const auto table = acs::figure_table(which);
  emit(out, [&](std::ostream& o) { acs::write_csv(table, o); });
  return 0;
}

int cmd_check(int only, std::size_t trunc) {
  acs::CheckOptions opts;
  if (trunc > 0) opts.trunc = trunc;
  const auto results = only ? std::vector{acs::run_check(only, opts)} : acs::run_all_checks(opts);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << acs::format_check(r) << '\n';
    ok = ok && r.pass;
  }
  return ok ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenstates of u K- + v K+ + w K3 on su(1,1) representations"};
  app.require_subcommand(1);

  ParamFlags state_flags;
  auto* state = app.add_subcommand("state", "solve one state, print state and moment JSON");
  state_flags.attach(state);

  ParamFlags scan_flags;
  std::string config_path;
  auto* scan = app.add_subcommand("scan", "sweep one parameter, write CSV");
  scan->add_option("--config", config_path, "key = value scan description")->check(CLI::ExistingFile);
  scan_flags.attach(scan);
  scan->add_option("--set", scan_flags.sets, "override any config key (key=value)");

  std::string which, figure_out;
  auto* figure = app.add_subcommand("figure", "write figure data as CSV");
  figure->add_option("which", which, "fig1 or fig2")->required()->check(CLI::IsMember({"fig1", "fig2"}));
  figure->add_option("--out", figure_out, "output path (default stdout)");

  int only = 0;
  std::size_t check_trunc = 0;
  auto* check = app.add_subcommand("check", "run the acceptance suite");
  check->add_option("--only", only, "single criterion")->check(CLI::Range(1, acs::kCheckCount));
  check->add_option("--trunc", check_trunc, "override the ladder truncation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (state->parsed()) return cmd_state(state_flags);
    if (scan->parsed()) return cmd_scan(config_path, scan_flags);
    if (figure->parsed()) return cmd_figure(which, figure_out);
    return cmd_check(only, check_trunc);
  } catch (const acs::NormalizabilityError& e) {
    std::cerr << "error: " << e.what() << "\nviolated: " << e.violated() << '\n';
    return kExitDomain;
  } catch (const acs::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const acs::TruncationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitTruncation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
