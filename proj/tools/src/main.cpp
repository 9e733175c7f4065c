#include <CLI11.hpp>
#include <iostream>
#include <stdexcept>

#include "commands.hpp"
#include "io.hpp"

using namespace dyadic::cli;

namespace {

void tree_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "spatial dimension")->capture_default_str();
  cmd->add_option("--depth", o.depth, "finest level D")->capture_default_str();
}

void geometry_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--aperture", o.aperture, "cone aperture")->capture_default_str();
  cmd->add_option("--c0", o.c0, "Whitney parameter c0 > 1")->capture_default_str();
  cmd->add_option("--c1", o.c1, "Whitney parameter c1 > 0")->capture_default_str();
}

void output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dyadic nontangential maximal / Carleson duality toolkit"};
  app.require_subcommand(1);
  Options og;
  Options on;
  Options od;
  Options oe;
  Options ot;
  Options om;
  od.trials = 200;
  oe.trials = 50;
  ot.p = "4";
  ot.trials = 10;
  ot.stride = 1;
  om.r = "2";
  om.trials = 16;

  auto* gen = app.add_subcommand("generate", "write a random field or grid file");
  tree_flags(gen, og);
  gen->add_option("--kind", og.kind, "field or grid")->check(CLI::IsMember({"field", "grid"}))->capture_default_str();
  gen->add_option("--m", og.m, "grid subdivision per region")->capture_default_str();
  gen->add_option("--seed", og.seed)->capture_default_str();
  gen->add_option("--data", og.data, "zero | const:<v> | uniform | lognormal | sparse[:<d>] | delta:<level>:<idx>...");
  gen->add_option("--out", og.out, "output file (default stdout)");

  auto* norms = app.add_subcommand("norms", "evaluate the functionals on a field or grid file");
  norms->add_option("input", on.input, "field or grid JSON file")->required();
  norms->add_option("--p", on.p)->capture_default_str();
  norms->add_option("--pprime", on.pprime, "default: conjugate of p");
  norms->add_option("--q", on.q)->capture_default_str();
  norms->add_option("--qprime", on.qprime, "default: conjugate of q");
  norms->add_option("--r", on.r)->capture_default_str();
  norms->add_option("--stride", on.stride, "test-cube grid stride")->capture_default_str();
  geometry_flags(norms, on);
  output_flags(norms, on);

  auto* dual = app.add_subcommand("duality", "check the pairing bounds and extremizers on random fields");
  tree_flags(dual, od);
  dual->add_option("--p", od.p, "1 <= p < inf")->capture_default_str();
  dual->add_option("--c-stopping", od.c_stopping, "stopping constant for p = 1")->capture_default_str();
  dual->add_option("--seed", od.seed, "first seed")->capture_default_str();
  dual->add_option("--trials", od.trials)->capture_default_str();
  dual->add_option("--data", od.data, "data spec (default cycles uniform/lognormal/sparse)");
  output_flags(dual, od);

  auto* eq = app.add_subcommand("equivalence", "continuum vs dyadic norm ratios");
  tree_flags(eq, oe);
  eq->add_option("--m", oe.m)->capture_default_str();
  eq->add_option("--p", oe.p)->capture_default_str();
  eq->add_option("--q", oe.q)->capture_default_str();
  eq->add_option("--pprime", oe.pprime, "Carleson-side p (default: p)");
  eq->add_option("--qprime", oe.qprime, "Carleson-side q (default: q)");
  eq->add_option("--seed", oe.seed, "first seed")->capture_default_str();
  eq->add_option("--trials", oe.trials)->capture_default_str();
  eq->add_option("--stride", oe.stride)->capture_default_str();
  eq->add_option("--data", oe.data, "data spec (default uniform)");
  geometry_flags(eq, oe);
  output_flags(eq, oe);

  auto* tent = app.add_subcommand("tent", "Carleson vs area-integral norms for p > 2");
  tree_flags(tent, ot);
  tent->add_option("--m", ot.m)->capture_default_str();
  tent->add_option("--p", ot.p)->capture_default_str();
  tent->add_option("--seed", ot.seed, "first seed")->capture_default_str();
  tent->add_option("--trials", ot.trials)->capture_default_str();
  tent->add_option("--stride", ot.stride)->capture_default_str();
  tent->add_option("--data", ot.data, "data spec (default lognormal)");
  geometry_flags(tent, ot);
  output_flags(tent, ot);

  auto* mult = app.add_subcommand("multiplier", "lower estimate of the multiplier norm of g");
  tree_flags(mult, om);
  mult->add_option("--input", om.input, "grid file for g (default: random grid)");
  mult->add_option("--m", om.m)->capture_default_str();
  mult->add_option("--p", om.p)->capture_default_str();
  mult->add_option("--q", om.q)->capture_default_str();
  mult->add_option("--r", om.r)->capture_default_str();
  mult->add_option("--seed", om.seed)->capture_default_str();
  mult->add_option("--trials", om.trials, "random candidate budget")->capture_default_str();
  mult->add_option("--stride", om.stride)->capture_default_str();
  mult->add_option("--data", om.data, "data spec for the random g (default lognormal)");
  geometry_flags(mult, om);
  output_flags(mult, om);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(og);
    if (*norms) return cmd_norms(on);
    if (*dual) return cmd_duality(od);
    if (*eq) return cmd_equivalence(oe);
    if (*tent) return cmd_tent(ot);
    if (*mult) return cmd_multiplier(om);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}
