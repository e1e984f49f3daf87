// momentbound: worst-case deviation from the standard normal c.d.f. at
// zero among distributions matching k normal moments, the extremal
// symmetric distributions attaining it for even k, and the escape-to-
// infinity limit for odd k.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmb/extremal.hpp"
#include "mmb/hermite.hpp"
#include "mmb/lp.hpp"
#include "mmb/matching.hpp"
#include "mmb/moments.hpp"

using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// Fixed 15-significant-digit formatting; every decimal goes through here
// so repeated runs are byte-identical.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

double fmt_num(double v) { return std::strtod(fmt(v).c_str(), nullptr); }

json meta(const std::string& command, const json& params) {
  return {{"command", command}, {"parameters", params}, {"version", kVersion}};
}

json rational_json(const mmb::Rat& r) {
  return {{"rational", mmb::rat_string(r)},
          {"decimal", fmt_num(mmb::rat_double(r))}};
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << out_path << "\n";
    return 2;
  }
  f << text;
  return 0;
}

json checks_json(const mmb::extremal::HalfBoundReport& rep) {
  json checks = json::array();
  checks.push_back({{"name", "p0_vs_hankel_bound"},
                    {"pass", rep.p0_diff <= 1e-10},
                    {"residual", fmt_num(rep.p0_diff)}});
  checks.push_back({{"name", "deviation_vs_half_bound"},
                    {"pass", rep.deviation_diff <= 1e-10},
                    {"residual", fmt_num(rep.deviation_diff)}});
  checks.push_back({{"name", "s_coefficients_vs_roots"},
                    {"pass", rep.s_rel_diff <= 1e-10},
                    {"residual", fmt_num(rep.s_rel_diff)}});
  checks.push_back({{"name", "r_star_identity"},
                    {"pass", rep.r_star_identity_diff <= 1e-10},
                    {"residual", fmt_num(rep.r_star_identity_diff)}});
  return checks;
}

int cmd_bound(int k, const std::string& out_path) {
  const mmb::Rat bound = mmb::moments::lindsay_bound(k);
  json doc;
  doc["meta"] = meta("bound", {{"k", k}});
  doc["bound"] = rational_json(bound);
  doc["deviation"] = rational_json(bound / 2);
  return emit(doc.dump(2) + "\n", out_path);
}

int cmd_extremal(int k, const std::string& format, double tol,
                 const std::string& out_path) {
  const auto d = mmb::extremal::extremal_even(k, tol);
  const auto rep = mmb::extremal::verify_half_bound(k);
  const int m = static_cast<int>(d.positive_nodes.size());

  std::vector<double> nodes, masses;
  for (int j = m - 1; j >= 0; --j) {
    nodes.push_back(-d.positive_nodes[j]);
    masses.push_back(d.side_masses[j]);
  }
  nodes.push_back(0.0);
  masses.push_back(d.center_mass);
  for (int j = 0; j < m; ++j) {
    nodes.push_back(d.positive_nodes[j]);
    masses.push_back(d.side_masses[j]);
  }

  if (format == "csv") {
    std::ostringstream os;
    os << "node,mass\n";
    for (std::size_t i = 0; i < nodes.size(); ++i)
      os << fmt(nodes[i]) << "," << fmt(masses[i]) << "\n";
    return emit(os.str(), out_path);
  }
  json doc;
  doc["meta"] = meta("extremal", {{"k", k}, {"format", format}, {"tol", tol}});
  json dist;
  dist["p0"] = fmt_num(d.center_mass);
  dist["r_star"] = fmt_num(d.r_star());
  dist["deviation"] = fmt_num(mmb::extremal::deviation_at_zero(d));
  dist["nodes"] = json::array();
  dist["masses"] = json::array();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    dist["nodes"].push_back(fmt_num(nodes[i]));
    dist["masses"].push_back(fmt_num(masses[i]));
  }
  doc["distribution"] = dist;
  doc["bound"] = rational_json(rep.bound);
  doc["checks"] = checks_json(rep);
  return emit(doc.dump(2) + "\n", out_path);
}

int cmd_odd_limit(int k, std::vector<double> schedule, int auto_count,
                  const std::string& format, const std::string& out_path) {
  const double top = (k == 3) ? 100.0 : 30.0;
  if (schedule.empty()) {
    if (auto_count > 0) {
      for (int i = 0; i < auto_count; ++i)
        schedule.push_back(5.0 * std::pow(top / 5.0,
                                          static_cast<double>(i) /
                                              std::max(1, auto_count - 1)));
    } else {
      schedule = (k == 3) ? std::vector<double>{5.0, 10.0, 100.0}
                          : std::vector<double>{5.0, 10.0, 30.0};
    }
  }
  const auto sweep = mmb::extremal::odd_case_sweep(k, schedule);
  const mmb::Rat target = mmb::moments::lindsay_bound(k - 1);

  if (format == "csv") {
    std::ostringstream os;
    os << "# k=" << k << " target_bound=" << mmb::rat_string(target) << " ("
       << fmt(mmb::rat_double(target)) << ")\n";
    os << "largest_node,p0,r_star,tail_mass,tail_bound,feasible,note\n";
    for (const auto& rec : sweep.records)
      os << fmt(rec.largest_node) << "," << fmt(rec.p0) << ","
         << fmt(rec.r_star) << "," << fmt(rec.tail_mass) << ","
         << fmt(rec.tail_bound) << "," << (rec.feasible ? 1 : 0) << ","
         << rec.note << "\n";
    return emit(os.str(), out_path);
  }
  json doc;
  doc["meta"] = meta("odd-limit", {{"k", k}, {"schedule", schedule}});
  doc["meta"]["target_bound"] = rational_json(target);
  doc["records"] = json::array();
  for (const auto& rec : sweep.records) {
    json r;
    r["largest_node"] = fmt_num(rec.largest_node);
    r["feasible"] = rec.feasible;
    r["p0"] = fmt_num(rec.p0);
    r["r_star"] = fmt_num(rec.r_star);
    r["tail_mass"] = fmt_num(rec.tail_mass);
    r["tail_bound"] = fmt_num(rec.tail_bound);
    r["node_squares"] = json::array();
    r["masses"] = json::array();
    for (double u : rec.node_squares) r["node_squares"].push_back(fmt_num(u));
    for (double q : rec.masses) r["masses"].push_back(fmt_num(q));
    if (!rec.note.empty()) r["note"] = rec.note;
    doc["records"].push_back(r);
  }
  return emit(doc.dump(2) + "\n", out_path);
}

int cmd_lp(int k, double extent, int count, bool include_extremal,
           const std::string& out_path) {
  std::vector<double> include;
  if (include_extremal) {
    if (k % 2 != 0) {
      std::cerr << "error: --include-extremal-nodes requires even k\n";
      return 2;
    }
    include = mmb::extremal::extremal_even(k).positive_nodes;
  }
  mmb::lp::GridLP problem{mmb::lp::build_grid(extent, count, include), k};
  const auto sol = mmb::lp::solve_lp(problem);
  json doc;
  doc["meta"] = meta("lp", {{"k", k},
                            {"extent", extent},
                            {"count", count},
                            {"include_extremal_nodes", include_extremal}});
  if (sol.status != mmb::lp::LPStatus::optimal) {
    doc["status"] = "infeasible";
    const int rc = emit(doc.dump(2) + "\n", out_path);
    return rc == 0 ? 3 : rc;
  }
  const auto rep = mmb::lp::symmetry_report(problem, sol);
  doc["status"] = "optimal";
  doc["objective"] = fmt_num(sol.objective);
  doc["active_support"] = json::array();
  for (double x : sol.active_support)
    doc["active_support"].push_back(fmt_num(x));
  doc["constraint_residual"] = fmt_num(sol.constraint_residual);
  if (k % 2 == 0) {
    doc["bound"] = rational_json(mmb::moments::lindsay_bound(k));
    doc["objective_within_bound"] =
        sol.objective <=
        mmb::rat_double(mmb::moments::lindsay_bound(k)) + 1e-9;
  }
  doc["symmetry"] = {{"raw_asymmetry", fmt_num(rep.raw_asymmetry)},
                     {"averaged_asymmetry", fmt_num(rep.averaged_asymmetry)},
                     {"averaged_residual", fmt_num(rep.averaged_residual)},
                     {"objective_change", fmt_num(rep.objective_change)},
                     {"pass", rep.pass}};
  return emit(doc.dump(2) + "\n", out_path);
}

int cmd_verify(int kmax, const std::string& out_path) {
  std::ostringstream os;
  bool all_pass = true;
  auto row = [&](const std::string& name, bool pass, double residual) {
    os << (pass ? "PASS" : "FAIL") << "  " << name << "  residual="
       << fmt(residual) << "\n";
    all_pass = all_pass && pass;
  };

  // exact orthogonality sums
  {
    bool ok = true;
    for (int l = 0; l <= 10; ++l)
      for (int i = 0; 2 * l + 2 * i + 2 <= 24; ++i)
        ok = ok && mmb::moments::orthogonality_check(l, i) == 0;
    row("orthogonality_exact_zero", ok, 0.0);
  }
  // double-factorial recursion
  {
    bool ok = true;
    for (int j = 1; j <= 40; ++j)
      ok = ok && mmb::moments::normal_moment(2 * j) ==
                     mmb::Rat(2 * j - 1) * mmb::moments::normal_moment(2 * j - 2);
    row("moment_recursion_exact", ok, 0.0);
  }
  // Hankel positive definiteness
  {
    bool ok = true;
    const auto h = mmb::moments::hankel_matrix(8);
    for (int lead = 1; lead <= 9; ++lead) {
      std::vector<std::vector<mmb::Rat>> sub(lead,
                                             std::vector<mmb::Rat>(lead));
      for (int i = 0; i < lead; ++i)
        for (int j = 0; j < lead; ++j) sub[i][j] = h.entries[i][j];
      ok = ok && mmb::moments::determinant(sub) > 0;
    }
    row("hankel_positive_definite", ok, 0.0);
  }
  // closed form vs dense solve on random instances
  {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> mag(0.1, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> size(1, 8);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const int n = size(rng);
      std::vector<double> pts;
      while (static_cast<int>(pts.size()) < n) {
        const double x = (unit(rng) < 0.5 ? -1.0 : 1.0) * mag(rng);
        bool dup = false;
        for (double y : pts) dup = dup || std::fabs(x - y) < 1e-3;
        if (!dup) pts.push_back(x);
      }
      std::vector<double> mom(n);
      for (int i = 0; i < n; ++i) mom[i] = 2.0 * unit(rng) - 1.0;
      const auto a = mmb::matching::solve_probabilities({pts}, mom);
      const auto b = mmb::matching::solve_probabilities_direct({pts}, mom);
      for (int i = 0; i < n; ++i) {
        const double scale = std::max(1.0, std::fabs(b.probabilities[i]));
        worst = std::max(worst, std::fabs(a.probabilities[i] -
                                          b.probabilities[i]) / scale);
      }
    }
    row("closed_form_vs_dense_solve", worst <= 1e-10, worst);
  }
  // half-bound identity chain
  for (int k = 2; k <= kmax; k += 2) {
    const auto rep = mmb::extremal::verify_half_bound(k);
    row("half_bound_identity_k" + std::to_string(k), rep.pass,
        std::max(rep.p0_diff, rep.s_rel_diff));
  }
  // partial derivative sign alternation in the positive-mass regime
  // (the alternation claim needs uniform mass sign: the sign pattern is
  // (-1)^j sign(p_j), so mixed-sign masses break it)
  {
    std::mt19937 rng(7071);
    std::uniform_real_distribution<double> noise(-0.02, 0.02);
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const int n = 1 + t % 5;
      auto pts = mmb::hermite::nonzero_root_squares(2 * n + 1).values;
      for (double& u : pts) u *= std::exp(noise(rng));
      std::sort(pts.begin(), pts.end());
      std::vector<double> mom(n);
      for (int i = 0; i < n; ++i)
        mom[i] = mmb::rat_double(mmb::moments::normal_moment(2 * (i + 1)) / 2);
      const auto sol = mmb::matching::solve_probabilities({pts}, mom);
      for (double p : sol.probabilities) ok = ok && p > 0.0;
      const auto analytic = mmb::matching::r_star_partials({pts}, mom);
      const auto fd = mmb::matching::r_star_partials_fd({pts}, mom);
      for (int i = 0; i < n; ++i) {
        const double rel = std::fabs(analytic[i] - fd[i]) /
                           std::max(1e-30, std::fabs(analytic[i]));
        worst = std::max(worst, rel);
        if (i > 0)
          ok = ok && std::signbit(analytic[i]) != std::signbit(analytic[i - 1]);
      }
      ok = ok && worst <= 1e-5;
    }
    row("partial_sign_alternation", ok, worst);
  }
  // LP oracle agreement
  for (int k = 2; k <= std::min(4, kmax); k += 2) {
    const auto d = mmb::extremal::extremal_even(k);
    mmb::lp::GridLP problem{mmb::lp::build_grid(6.0, 40, d.positive_nodes), k};
    const auto sol = mmb::lp::solve_lp(problem);
    const double diff =
        std::fabs(sol.objective - d.center_mass);
    row("lp_matches_extremal_k" + std::to_string(k),
        sol.status == mmb::lp::LPStatus::optimal && diff <= 1e-9, diff);
  }

  os << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  const int rc = emit(os.str(), out_path);
  if (rc != 0) return rc;
  return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact worst-case deviation from the standard normal c.d.f. "
               "at zero under moment matching"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write output to PATH instead of stdout");

  int bound_k = 0;
  auto* bound = app.add_subcommand("bound", "Exact Hankel bound for even k");
  bound->add_option("k", bound_k, "Number of matched even moments")->required();

  int ext_k = 0;
  std::string ext_format = "json";
  double ext_tol = 1e-13;
  auto* ext = app.add_subcommand("extremal",
                                 "Least-favorable distribution for even k");
  ext->add_option("k", ext_k)->required();
  ext->add_option("--format", ext_format)
      ->check(CLI::IsMember({"json", "csv"}));
  ext->add_option("--tol", ext_tol, "Root refinement tolerance")
      ->check(CLI::PositiveNumber);

  int odd_k = 0, odd_auto = 0;
  std::string odd_format = "json";
  std::vector<double> odd_schedule;
  auto* odd = app.add_subcommand("odd-limit",
                                 "Escape-to-infinity sweep for odd k");
  odd->add_option("k", odd_k)->required();
  odd->add_option("--schedule", odd_schedule)->delimiter(',');
  odd->add_option("--auto", odd_auto, "Geometric schedule with N entries");
  odd->add_option("--format", odd_format)
      ->check(CLI::IsMember({"json", "csv"}));

  int lp_k = 0, lp_count = 50;
  double lp_extent = 6.0;
  bool lp_include = false;
  auto* lp = app.add_subcommand("lp", "Grid LP oracle");
  lp->add_option("k", lp_k)->required();
  lp->add_option("--extent", lp_extent)->check(CLI::PositiveNumber);
  lp->add_option("--count", lp_count);
  lp->add_flag("--include-extremal-nodes", lp_include);

  int verify_kmax = 8;
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--kmax", verify_kmax);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (bound->parsed()) {
      if (bound_k < 2 || bound_k % 2 != 0) {
        if (bound_k >= 3 && bound_k % 2 == 1)
          std::cerr << "error: no distribution attains the bound for odd k; "
                       "the supremum is a limit as the largest mass point "
                       "grows. Use `odd-limit " << bound_k << "`.\n";
        else
          std::cerr << "error: k must be an even positive integer\n";
        return 2;
      }
      return cmd_bound(bound_k, out_path);
    }
    if (ext->parsed()) {
      if (ext_k < 2 || ext_k % 2 != 0 || ext_k > 40) {
        std::cerr << "error: k must be even with 2 <= k <= 40\n";
        return 2;
      }
      return cmd_extremal(ext_k, ext_format, ext_tol, out_path);
    }
    if (odd->parsed()) {
      if (odd_k % 2 == 0) {
        std::cerr << "error: even k has an exact answer; use `extremal "
                  << odd_k << "`\n";
        return 2;
      }
      if (odd_k < 3 || odd_k > 9) {
        std::cerr << "error: odd-limit supports odd k with 3 <= k <= 9\n";
        return 2;
      }
      return cmd_odd_limit(odd_k, odd_schedule, odd_auto, odd_format,
                           out_path);
    }
    if (lp->parsed()) {
      if (lp_k < 1) {
        std::cerr << "error: k must be >= 1\n";
        return 2;
      }
      return cmd_lp(lp_k, lp_extent, lp_count, lp_include, out_path);
    }
    if (verify->parsed()) return cmd_verify(verify_kmax, out_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
