// zslab: checks Zappa-Szep actions on product systems at desk scale.
//
// Exit codes: 0 = all requested checks passed, 1 = violations found,
// 2 = configuration or construction error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "zslab/errors.hpp"
#include "zslab/suites.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw zslab::Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  double tolerance = -1.0;
  int radius_p = -1;
  int radius_g = -1;
  int fock_ball = -1;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--config", opts->config_path, "configuration file")
      ->required();
  cmd->add_option("--out", opts->out_path, "write the JSON report here");
  cmd->add_option("--tolerance", opts->tolerance, "override the tolerance");
  cmd->add_option("--radius-p", opts->radius_p, "override the semigroup radius");
  cmd->add_option("--radius-g", opts->radius_g, "override the group radius");
  cmd->add_option("--fock-ball", opts->fock_ball, "override the Fock ball");
}

int run(const CommonOpts& opts, const std::vector<std::string>& suites) {
  zslab::RunConfig cfg = zslab::parse_config(read_file(opts.config_path));
  if (opts.tolerance > 0) cfg.tolerance = opts.tolerance;
  if (opts.radius_p > 0) cfg.radius_p = opts.radius_p;
  if (opts.radius_g > 0) cfg.radius_g = opts.radius_g;
  if (opts.fock_ball > 0) cfg.fock_ball = opts.fock_ball;
  if (!suites.empty()) {
    std::vector<std::string> selected;
    for (const std::string& name : suites) {
      if (name == "all") {
        selected = zslab::all_suites();
        break;
      }
      const auto& known = zslab::all_suites();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw zslab::Error("unknown suite '" + name + "'");
      }
      selected.push_back(name);
    }
    cfg.suites = std::move(selected);
  }

  zslab::VerificationReport report = zslab::run_suites(cfg);
  std::cout << report.render_text();
  if (!opts.out_path.empty()) {
    std::ofstream out(opts.out_path);
    if (!out) throw zslab::Error("cannot write " + opts.out_path);
    out << report.to_json();
  }
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification lab for Zappa-Szep actions on product systems"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<std::string> suite_selection;

  CLI::App* validate_zs = app.add_subcommand(
      "validate-zs", "check the two-way action axioms on the window");
  add_common(validate_zs, &opts);

  CLI::App* validate_action = app.add_subcommand(
      "validate-action", "check the product system and the action axioms");
  add_common(validate_action, &opts);

  CLI::App* bowtie = app.add_subcommand(
      "bowtie", "build the product system over the product semigroup and validate it");
  add_common(bowtie, &opts);

  CLI::App* bowtie_tilde = app.add_subcommand(
      "bowtie-tilde",
      "build the homogeneous product with crossed-product coefficients and validate it");
  add_common(bowtie_tilde, &opts);

  CLI::App* fock = app.add_subcommand(
      "fock", "build the truncated Fock pair and check its identities");
  add_common(fock, &opts);

  CLI::App* verify =
      app.add_subcommand("verify", "run selected suites (default: all)");
  add_common(verify, &opts);
  verify->add_option("--suite", suite_selection,
                     "suites to run (comma separated)")
      ->delimiter(',');

  std::string report_path;
  CLI::App* report_cmd =
      app.add_subcommand("report", "re-render a saved JSON report");
  report_cmd->add_option("json", report_path, "report file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (report_cmd->parsed()) {
      zslab::VerificationReport report =
          zslab::VerificationReport::from_json(read_file(report_path));
      std::cout << report.render_text();
      return report.all_pass ? 0 : 1;
    }
    if (validate_zs->parsed()) return run(opts, {"zs-axioms"});
    if (validate_action->parsed()) return run(opts, {"action-axioms"});
    if (bowtie->parsed()) return run(opts, {"bowtie"});
    if (bowtie_tilde->parsed()) return run(opts, {"bowtie-tilde"});
    if (fock->parsed()) return run(opts, {"toeplitz", "covariance"});
    if (verify->parsed()) return run(opts, suite_selection);
  } catch (const zslab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
