#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

#include "dyadic/continuum.hpp"
#include "dyadic/duality.hpp"
#include "dyadic/functionals.hpp"
#include "dyadic/oracle.hpp"
#include "io.hpp"

namespace dyadic::cli {

using io::Json;

namespace {

constexpr double kRel = 1e-12;

std::string num(double v) { return io::format_double(v); }

struct MinMax {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::size_t count = 0;

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++count;
  }
  Json json() const {
    Json j;
    j["count"] = count;
    if (count > 0) {
      j["min"] = lo;
      j["max"] = hi;
    }
    return j;
  }
};

TreePtr make_tree(const Options& o) {
  const TreeConfig cfg{o.n, o.depth};
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return DyadicTree::make(cfg);
}

DataSpec data_spec(const std::string& text) {
  try {
    return DataSpec::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

Json geometry_json(const GeometryConfig& g) {
  Json j;
  j["aperture"] = g.aperture;
  j["c0"] = g.c0;
  j["c1"] = g.c1;
  return j;
}

void require_trials(const Options& o) {
  if (o.trials < 0) throw UsageError("--trials must be >= 0");
  if (o.stride < 1) throw UsageError("--stride must be >= 1");
  if (o.m < 1) throw UsageError("--m must be >= 1");
}

// Writes the report; when it goes to a file, echoes a summary line to stdout.
void emit(const Options& o, const Json& report, const io::CsvTable& table, const std::string& summary) {
  if (o.format == "csv") {
    io::write_text(o.out, table.str());
  } else {
    io::write_text(o.out, io::dump(report) + "\n");
  }
  if (!o.out.empty() && o.out != "-") std::cout << summary << "\n";
}

}  // namespace

GeometryConfig Options::geometry() const {
  GeometryConfig g{aperture, c0, c1};
  try {
    g.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return g;
}

double parse_exponent(const std::string& text, const char* flag) {
  if (text == "inf" || text == "infinity") return kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string(flag) + ": expected a number or \"inf\", got \"" + text + "\"");
}

int cmd_generate(const Options& o) {
  const TreePtr tree = make_tree(o);
  const DataSpec spec = data_spec(o.data.empty() ? "uniform" : o.data);
  if (o.kind == "field") {
    io::write_text(o.out, io::dump(io::to_json(random_field(o.seed, tree, spec))) + "\n");
  } else if (o.kind == "grid") {
    if (o.m < 1) throw UsageError("--m must be >= 1");
    io::write_text(o.out, io::dump(io::to_json(random_grid(o.seed, tree, o.m, spec))) + "\n");
  } else {
    throw UsageError("--kind must be field or grid");
  }
  return kExitOk;
}

int cmd_norms(const Options& o) {
  Json doc;
  try {
    doc = io::read_json_file(o.input);
  } catch (const io::FormatError& e) {
    throw UsageError(e.what());
  }
  const double p = parse_exponent(o.p, "--p");
  const double pp = o.pprime.empty() ? conjugate(p) : parse_exponent(o.pprime, "--pprime");
  const double q = parse_exponent(o.q, "--q");
  const double qp = o.qprime.empty() ? conjugate(q) : parse_exponent(o.qprime, "--qprime");
  const double r = parse_exponent(o.r, "--r");
  for (double e : {p, pp, q, qp}) {
    if (!(e >= 1.0)) throw UsageError("exponents must lie in [1, inf]");
  }
  const GeometryConfig geo = o.geometry();

  Json norms;
  Json exact;
  Json nodes;
  Json config;
  config["p"] = p;
  config["pprime"] = pp;
  try {
    if (io::is_grid(doc)) {
      const GridFunction g = io::grid_from_json(doc);
      if (!(r >= 1.0) || std::isinf(r) || r > qp) throw UsageError("--r must satisfy 1 <= r <= q' and r < inf");
      if (o.stride < 1) throw UsageError("--stride must be >= 1");
      config["q"] = q;
      config["qprime"] = qp;
      config["r"] = r;
      config["stride"] = o.stride;
      config["geometry"] = geometry_json(geo);
      const auto family = test_cube_family(g.tree().config(), o.stride);
      norms["nt_max_dyadic_lp"] = boundary_lp_norm(nt_max_dyadic(to_sequence(g, q)), p);
      exact["nt_max_dyadic_lp"] = true;
      const auto ntc = nt_max_continuum(g, q, geo);
      norms["nt_max_continuum_lp"] = boundary_lp_norm(ntc.values, p);
      exact["nt_max_continuum_lp"] = false;
      nodes["nt_max_continuum_lp"] = ntc.nodes;
      norms["carleson_dyadic_lpprime"] =
          boundary_lp_norm(carleson_dyadic(to_sequence(g, qp, Normalization::kCarleson)), pp);
      exact["carleson_dyadic_lpprime"] = true;
      norms["carleson_r_dyadic_lpprime"] = boundary_lp_norm(carleson_r_dyadic(g, r, qp), pp);
      exact["carleson_r_dyadic_lpprime"] = true;
      const auto cc = carleson_continuum(g, r, qp, geo, family);
      norms["carleson_continuum_lpprime"] = boundary_lp_norm(cc.values, pp);
      exact["carleson_continuum_lpprime"] = false;
      nodes["carleson_continuum_lpprime"] = cc.nodes;
      norms["area_integral_lp"] = boundary_lp_norm(area_integral(g), p);
      exact["area_integral_lp"] = false;
      norms["modified_carleson"] = modified_carleson_norm(g, geo);
      exact["modified_carleson"] = false;
    } else {
      const DyadicField a = io::field_from_json(doc);
      norms["nt_max_lp"] = boundary_lp_norm(nt_max_dyadic(a), p);
      exact["nt_max_lp"] = true;
      norms["carleson_lpprime"] = boundary_lp_norm(carleson_dyadic(a), pp);
      exact["carleson_lpprime"] = true;
    }
  } catch (const io::FormatError& e) {
    throw UsageError(o.input + ": " + e.what());
  }

  Json report;
  report["command"] = "norms";
  report["input"] = io::is_grid(doc) ? "grid" : "field";
  report["config"] = config;
  report["norms"] = norms;
  report["exact"] = exact;
  if (!nodes.is_null()) report["nodes"] = nodes;
  if (io::is_grid(doc)) report["note"] = "data covers t > 2^-(depth+1); continuum entries are finite-sample lower bounds";

  io::CsvTable table({"name", "value", "exact"});
  for (auto it = norms.begin(); it != norms.end(); ++it) {
    table.add({it.key(), num(it.value().get<double>()), exact[it.key()].get<bool>() ? "true" : "false"});
  }
  emit(o, report, table, "norms: " + std::to_string(norms.size()) + " entries written to " + o.out);
  return kExitOk;
}

int cmd_duality(const Options& o) {
  require_trials(o);
  const TreePtr tree = make_tree(o);
  const double p = parse_exponent(o.p, "--p");
  if (!(p >= 1.0) || std::isinf(p)) throw UsageError("--p must satisfy 1 <= p < inf");
  if (!(o.c_stopping > 0.0 && o.c_stopping < 0.25)) throw UsageError("--c-stopping must lie in (0, 1/4)");
  const double pp = conjugate(p);
  const bool with_oracle = tree->size() <= OracleOptions{}.max_cubes;
  static const char* kSpecs[] = {"uniform", "lognormal", "sparse"};

  Json rows = Json::array();
  std::vector<std::string> header{"seed", "pairing_ratio", "upper_holds", "f_extremizer_ratio", "g_extremizer_ratio"};
  if (with_oracle) {
    header.push_back("oracle_nt_ratio");
    header.push_back("oracle_carleson_ratio");
  }
  io::CsvTable table(header);
  MinMax pair_env;
  MinMax f_env;
  MinMax g_env;
  MinMax o_nt;
  MinMax o_c;
  std::string failure;

  for (int i = 0; i < o.trials; ++i) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    const DyadicField a = random_field(seed, tree, data_spec(o.data.empty() ? kSpecs[i % 3] : o.data));
    const DyadicField b =
        random_field(seed + 1000000, tree, data_spec(o.data.empty() ? kSpecs[(i + 1) % 3] : o.data));
    auto fail = [&](const std::string& what) {
      if (failure.empty()) failure = "seed " + std::to_string(seed) + ": " + what;
    };

    const auto upper = check_pairing_upper(a, b, p);
    if (!upper.upper_bound_holds(kRel)) fail("pairing exceeds 2 ||N a||_p ||C b||_p'");

    const auto fe = extremal_f_for_carleson(b, pp);
    if (std::isinf(pp)) {
      if (std::abs(fe.report.nt_norm - 1.0) > kRel) fail("sup-cube extremizer has ||N a||_1 != 1");
      if (std::abs(fe.report.pairing - fe.report.carleson_norm) > kRel * std::max(1.0, fe.report.carleson_norm)) {
        fail("sup-cube extremizer pairing != ||C b||_inf");
      }
    } else {
      const double k = (std::exp2(pp) - 1.0) / (1.0 - std::exp2(1.0 - pp));
      if (std::pow(fe.report.carleson_norm, pp) > k * fe.report.pairing * (1 + kRel)) fail("power extremizer bound");
    }

    Extremizer ge;
    if (p == 1.0) {
      ge = extremal_g_for_ntmax_p1(a, o.c_stopping);
      if (ge.report.carleson_norm > (1 + kRel) / o.c_stopping) fail("forest extremizer ||C b||_inf > 1/c");
      if (ge.report.pairing * (1 + kRel) < (1.0 - 4.0 * o.c_stopping) / 2.0 * ge.report.nt_norm) {
        fail("forest extremizer pairing bound");
      }
    } else {
      ge = extremal_g_for_ntmax(a, p);
      if (ge.report.pairing * (1 + kRel) < std::pow(ge.report.nt_norm, p) / (std::exp2(p) - 1.0)) {
        fail("level-selection extremizer pairing bound");
      }
    }

    Json row;
    row["seed"] = seed;
    row["pairing_ratio"] = upper.ratio;
    row["upper_holds"] = upper.upper_bound_holds(kRel);
    row["f_extremizer_ratio"] = fe.report.ratio;
    row["g_extremizer_ratio"] = ge.report.ratio;
    std::vector<std::string> cells{std::to_string(seed), num(upper.ratio), upper.upper_bound_holds(kRel) ? "true" : "false",
                                   num(fe.report.ratio), num(ge.report.ratio)};
    pair_env.add(upper.ratio);
    f_env.add(fe.report.ratio);
    g_env.add(ge.report.ratio);
    if (with_oracle) {
      const auto cn = oracle_vs_extremizer(b, p, Ball::kNtMax);
      const auto cc = oracle_vs_extremizer(a, pp, Ball::kCarleson);
      if (cn.extremizer_value > cn.oracle_value * (1 + kRel) || cc.extremizer_value > cc.oracle_value * (1 + kRel)) {
        fail("oracle below extremizer");
      }
      row["oracle_nt_ratio"] = cn.ratio;
      row["oracle_carleson_ratio"] = cc.ratio;
      cells.push_back(num(cn.ratio));
      cells.push_back(num(cc.ratio));
      if (cn.defined) o_nt.add(cn.ratio);
      if (cc.defined) o_c.add(cc.ratio);
    }
    rows.push_back(std::move(row));
    table.add(std::move(cells));
  }

  Json config;
  config["n"] = o.n;
  config["depth"] = o.depth;
  config["p"] = p;
  config["pprime"] = pp;
  config["c_stopping"] = o.c_stopping;
  config["seed"] = o.seed;
  config["trials"] = o.trials;
  config["oracle"] = with_oracle;
  Json summary;
  summary["pairing_ratio"] = pair_env.json();
  summary["f_extremizer_ratio"] = f_env.json();
  summary["g_extremizer_ratio"] = g_env.json();
  if (with_oracle) {
    summary["oracle_nt_ratio"] = o_nt.json();
    summary["oracle_carleson_ratio"] = o_c.json();
  }
  summary["invariants_hold"] = failure.empty();
  Json report;
  report["command"] = "duality";
  report["config"] = config;
  report["rows"] = rows;
  report["summary"] = summary;

  char line[160];
  std::snprintf(line, sizeof line, "duality: %d trials, pairing ratio max %.6g", o.trials,
                pair_env.count ? pair_env.hi : 0.0);
  emit(o, report, table, line);
  if (!failure.empty()) {
    std::cerr << "invariant failure at " << failure << "\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int cmd_equivalence(const Options& o) {
  require_trials(o);
  const TreeConfig cfg = make_tree(o)->config();
  const double p = parse_exponent(o.p, "--p");
  const double q = parse_exponent(o.q, "--q");
  const double pp = o.pprime.empty() ? p : parse_exponent(o.pprime, "--pprime");
  const double qp = o.qprime.empty() ? q : parse_exponent(o.qprime, "--qprime");
  if (!(p >= 1.0) || std::isinf(p) || !(q >= 1.0) || !(pp >= 1.0) || !(qp >= 1.0)) {
    throw UsageError("exponents must satisfy 1 <= p < inf and q, p', q' >= 1");
  }
  const GeometryConfig geo = o.geometry();
  const DataSpec spec = data_spec(o.data.empty() ? "uniform" : o.data);

  io::CsvTable table({"seed", "nt_continuum", "nt_dyadic", "nt_ratio", "nt_ratio_2m", "carleson_continuum",
                      "carleson_dyadic", "carleson_ratio", "carleson_ratio_2m", "carleson_ratio_half_stride"});
  Json rows = Json::array();
  MinMax nt_env;
  MinMax c_env;
  double worst_change = 0.0;
  for (int i = 0; i < o.trials; ++i) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    const auto r = equivalence_row(seed, cfg, o.m, p, q, pp, qp, geo, o.stride, spec);
    Json row;
    row["seed"] = seed;
    row["nt_continuum"] = r.nt.continuum;
    row["nt_dyadic"] = r.nt.dyadic;
    row["nt_ratio"] = r.nt.ratio;
    row["nt_ratio_2m"] = r.nt_refined.ratio;
    row["carleson_continuum"] = r.carleson.continuum;
    row["carleson_dyadic"] = r.carleson.dyadic;
    row["carleson_ratio"] = r.carleson.ratio;
    row["carleson_ratio_2m"] = r.carleson_refined.ratio;
    row["carleson_ratio_half_stride"] = r.carleson_fine.ratio;
    rows.push_back(row);
    table.add({std::to_string(seed), num(r.nt.continuum), num(r.nt.dyadic), num(r.nt.ratio), num(r.nt_refined.ratio),
               num(r.carleson.continuum), num(r.carleson.dyadic), num(r.carleson.ratio), num(r.carleson_refined.ratio),
               num(r.carleson_fine.ratio)});
    if (r.nt.defined) {
      nt_env.add(r.nt.ratio);
      worst_change = std::max(worst_change, std::abs(r.nt_refined.ratio / r.nt.ratio - 1.0));
    }
    if (r.carleson.defined) {
      c_env.add(r.carleson.ratio);
      worst_change = std::max({worst_change, std::abs(r.carleson_refined.ratio / r.carleson.ratio - 1.0),
                               std::abs(r.carleson_fine.ratio / r.carleson.ratio - 1.0)});
    }
  }

  Json config;
  config["n"] = o.n;
  config["depth"] = o.depth;
  config["m"] = o.m;
  config["p"] = p;
  config["q"] = q;
  config["pprime"] = pp;
  config["qprime"] = qp;
  config["stride"] = o.stride;
  config["data"] = o.data.empty() ? "uniform" : o.data;
  config["geometry"] = geometry_json(geo);
  config["seed"] = o.seed;
  config["trials"] = o.trials;
  Json summary;
  summary["nt_ratio"] = nt_env.json();
  summary["carleson_ratio"] = c_env.json();
  summary["max_refinement_change"] = worst_change;
  Json report;
  report["command"] = "equivalence";
  report["config"] = config;
  report["rows"] = rows;
  report["summary"] = summary;
  emit(o, report, table, "equivalence: " + std::to_string(o.trials) + " rows");
  return kExitOk;
}

int cmd_tent(const Options& o) {
  require_trials(o);
  const TreePtr tree = make_tree(o);
  const double p = parse_exponent(o.p, "--p");
  if (!(p > 2.0)) throw UsageError("tent: requires --p > 2");
  const GeometryConfig geo = o.geometry();
  const DataSpec spec = data_spec(o.data.empty() ? "lognormal" : o.data);
  const auto family = test_cube_family(tree->config(), o.stride);

  io::CsvTable table({"seed", "carleson", "area", "ratio"});
  Json rows = Json::array();
  MinMax env;
  for (int i = 0; i < o.trials; ++i) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    const auto r = tent_space_check(random_grid(seed, tree, o.m, spec), p, geo, family);
    Json row;
    row["seed"] = seed;
    row["carleson"] = r.carleson;
    row["area"] = r.area;
    row["ratio"] = r.ratio;
    row["defined"] = r.defined;
    rows.push_back(row);
    table.add({std::to_string(seed), num(r.carleson), num(r.area), num(r.ratio)});
    if (r.defined) env.add(r.ratio);
  }
  Json config;
  config["n"] = o.n;
  config["depth"] = o.depth;
  config["m"] = o.m;
  config["p"] = p;
  config["stride"] = o.stride;
  config["data"] = o.data.empty() ? "lognormal" : o.data;
  config["seed"] = o.seed;
  config["trials"] = o.trials;
  Json report;
  report["command"] = "tent";
  report["config"] = config;
  report["rows"] = rows;
  report["summary"] = env.json();
  emit(o, report, table, "tent: " + std::to_string(o.trials) + " rows");
  return kExitOk;
}

int cmd_multiplier(const Options& o) {
  require_trials(o);
  ExponentConfig ex;
  try {
    ex = ExponentConfig::from(parse_exponent(o.p, "--p"), parse_exponent(o.q, "--q"), parse_exponent(o.r, "--r"));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const GeometryConfig geo = o.geometry();
  GridFunction g;
  if (!o.input.empty()) {
    try {
      const Json doc = io::read_json_file(o.input);
      if (!io::is_grid(doc)) throw UsageError(o.input + ": multiplier needs a grid file");
      g = io::grid_from_json(doc);
    } catch (const io::FormatError& e) {
      throw UsageError(e.what());
    }
  } else {
    g = random_grid(o.seed, make_tree(o), o.m, data_spec(o.data.empty() ? "lognormal" : o.data));
  }
  const auto rep = multiplier_norm_estimate(g, ex, static_cast<std::size_t>(o.trials), o.seed, geo, o.stride);

  Json config;
  config["n"] = g.tree().dim();
  config["depth"] = g.tree().depth();
  config["m"] = g.subdivision();
  config["p"] = ex.p;
  config["q"] = ex.q;
  config["r"] = ex.r;
  config["p_tilde"] = ex.p_tilde;
  config["q_tilde"] = ex.q_tilde;
  config["budget"] = o.trials;
  config["seed"] = o.seed;
  config["stride"] = o.stride;
  Json result;
  result["estimate"] = rep.estimate;
  result["candidates"] = rep.candidates;
  result["best_candidate"] = rep.best_candidate;
  result["carleson_norm"] = rep.carleson_norm;
  result["ratio_carleson"] = rep.ratio_carleson;
  if (rep.has_modified) {
    result["modified_carleson"] = rep.modified_carleson;
    result["ratio_modified"] = rep.ratio_modified;
  }
  Json report;
  report["command"] = "multiplier";
  report["config"] = config;
  report["result"] = result;

  std::vector<std::string> header{"estimate", "candidates", "best_candidate", "carleson_norm", "ratio_carleson"};
  std::vector<std::string> cells{num(rep.estimate), std::to_string(rep.candidates), rep.best_candidate,
                                 num(rep.carleson_norm), num(rep.ratio_carleson)};
  if (rep.has_modified) {
    header.insert(header.end(), {"modified_carleson", "ratio_modified"});
    cells.insert(cells.end(), {num(rep.modified_carleson), num(rep.ratio_modified)});
  }
  io::CsvTable table(header);
  table.add(cells);
  emit(o, report, table, "multiplier: estimate " + num(rep.estimate));
  return kExitOk;
}

}  // namespace dyadic::cli
