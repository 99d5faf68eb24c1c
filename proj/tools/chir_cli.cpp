// Command-line front door: computations (detr, chir), paving reports and
// searches, bound evaluation, the cross-verification identity suite, and the
// counterexample searches. Reports are JSON (default) or CSV; identical
// configurations produce byte-identical output.
//
// Exit codes: 0 success, 1 identity failure, 2 input error, 3 resource limit.

#include "chir/barrier.hpp"
#include "chir/detr.hpp"
#include "chir/io.hpp"
#include "chir/paving.hpp"
#include "chir/roots.hpp"
#include "chir/stability.hpp"
#include "chir/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace chir;

void emit(const json& j, const std::string& output) {
  if (output == "csv") {
    // flatten: one "path,value" row per scalar leaf
    std::function<void(const json&, const std::string&)> walk = [&](const json& v,
                                                                    const std::string& path) {
      if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it)
          walk(it.value(), path.empty() ? it.key() : path + "." + it.key());
      } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) walk(v[i], path + "[" + std::to_string(i) + "]");
      } else {
        std::cout << path << "," << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      }
    };
    walk(j, "");
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

json detr_report(const MatrixInput& in, const Rat& r, bool float_mode) {
  json values = json::object();
  json notes = json::array();
  bool integer_r = is_integer(r) && r >= 1;
  std::optional<CRat> exact_ref;
  std::optional<CDbl> float_ref;
  bool agree = true;
  auto record_exact = [&](const std::string& name, const CRat& v) {
    values[name] = {format_rational(v.re), format_rational(v.im)};
    if (exact_ref && !(v == *exact_ref)) agree = false;
    if (!exact_ref) exact_ref = v;
  };
  auto record_float = [&](const std::string& name, const CDbl& v) {
    values[name] = {v.re, v.im};
    if (float_ref && norm1(v - *float_ref) > 1e-9 * (1.0 + norm1(*float_ref))) agree = false;
    if (!float_ref) float_ref = v;
  };
  const int n = in.n();
  if (n > 12) throw resource_limit_error("detr: n <= 12");
  if (!float_mode) {
    MatQ a = in.as_exact();
    if (n <= 10) record_exact("perm-cycle", det_r_perm(a, r));
    if (integer_r && n <= 8 && r <= 4)
      record_exact("derivative", det_r_derivative(a, static_cast<int>(r.convert_to<long>())));
    record_exact("macmahon", det_r_macmahon(a, r));
    if (!integer_r)
      notes.push_back("non-integer r: master-theorem route is canonical; the cycle sum remains valid for real r");
  } else {
    MatD a = in.as_float();
    if (n <= 10) record_float("perm-cycle", det_r_perm(a, to_double(r)));
    record_float("macmahon", det_r_macmahon(a, to_double(r)));
  }
  json rep{{"command", "detr"},
           {"n", n},
           {"r", format_rational(r)},
           {"mode", float_mode ? "float" : "exact"},
           {"values", values},
           {"agreement", agree}};
  if (!notes.empty()) rep["notes"] = notes;
  if (exact_ref) rep["value"] = format_rational(exact_ref->re);
  if (float_ref) rep["value"] = float_ref->re;
  return rep;
}

json chir_report(const MatrixInput& in, const Rat& r, bool float_mode) {
  MatQ a = in.as_exact();
  UniPoly<Rat> p = chi_r(a, r);
  json rep{{"command", "chir"}, {"n", in.n()}, {"r", format_rational(r)}};
  rep["chi_r"] = float_mode ? unipoly_to_json(to_double_poly(p)) : unipoly_to_json(p);
  bool rooted = is_real_rooted(p);
  rep["real_rooted"] = rooted;
  auto roots = real_roots(p);
  if (!roots.empty()) rep["max_root"] = roots.back().approx();
  return rep;
}

json pavings_report(const MatrixInput& in, int r) {
  MatQ a = in.as_exact();
  UniPoly<Rat> sum = paving_charpoly_sum(a, r);
  UniPoly<Rat> reference = chi_r(a, Rat(r));
  json rep{{"command", "pavings"},
           {"n", in.n()},
           {"r", r},
           {"count", paving_count(in.n(), r)},
           {"paving_sum", unipoly_to_json(sum)},
           {"chi_r", unipoly_to_json(reference)},
           {"identity_holds", sum == reference}};
  return rep;
}

json bound_report_cmd(const std::optional<MatrixInput>& in, std::optional<double> delta, int r,
                      bool certify, json& warnings) {
  json rep{{"command", "bound"}, {"r", r}};
  double d = 0;
  if (in) {
    MatQ a = in->as_exact();
    for (int i = 0; i < a.n; ++i) d = std::max(d, to_double(a.at(i, i).re));
  } else if (delta) {
    d = *delta;
  } else {
    throw std::invalid_argument("bound: need --matrix or --delta");
  }
  rep["delta"] = d;
  double threshold = static_cast<double>((r - 1) * (r - 1)) / (r * r);
  if (d > threshold)
    warnings.push_back("delta above the r=" + std::to_string(r) +
                       " threshold; closed form clamps to the trivial bound 1");
  rep["closed_form"] = closed_form_bound(d, r);
  auto cj = conjectured_bound(d, r);
  rep["conjectured"] = {{"root_shrink", cj.root_shrink}, {"paving_bound", cj.paving_bound}};
  if (in) {
    if (r == 2) {
      BoundReport b = root_bound_2(in->as_exact(), certify);
      rep["optimized"] = bound_report_to_json(b);
    }
    if (certify) rep["certified_max_root"] = max_root(chi_r(in->as_exact(), Rat(r)));
  }
  return rep;
}

int run(int argc, char** argv) {
  CLI::App app{"r-characteristic polynomials, pavings, and barrier bounds"};
  app.require_subcommand(1);

  std::string matrix_path, output = "json", mode = "exact", fault, search_kind;
  std::string r_text = "2";
  double delta = -1, tolerance = 1e-9;
  uint64_t seed = 1;
  long budget = 100000;
  int threads = 1, nsize = 4;
  bool certify = false, greedy = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--mode", mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--seed", seed, "deterministic seed");
    cmd->add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
    cmd->add_option("--tolerance", tolerance, "float-mode tolerance")->check(CLI::PositiveNumber);
  };

  auto* cmd_detr = app.add_subcommand("detr", "det_r by independent methods");
  cmd_detr->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  cmd_detr->add_option("--r", r_text, "r (rational: 2, 1.5, 3/2)");
  add_common(cmd_detr);

  auto* cmd_chir = app.add_subcommand("chir", "chi_r coefficients and roots");
  cmd_chir->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  cmd_chir->add_option("--r", r_text, "r (rational)");
  add_common(cmd_chir);

  auto* cmd_pav = app.add_subcommand("pavings", "paving charpoly sum vs chi_r");
  cmd_pav->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  cmd_pav->add_option("--r", r_text, "block count");
  add_common(cmd_pav);

  auto* cmd_bound = app.add_subcommand("bound", "root bounds from the barrier method");
  cmd_bound->add_option("--matrix", matrix_path, "matrix JSON file");
  cmd_bound->add_option("--delta", delta, "diagonal bound");
  cmd_bound->add_option("--r", r_text, "paving size (2, 3 or 4)");
  cmd_bound->add_flag("--certify", certify, "also compute the exact max root");
  add_common(cmd_bound);

  auto* cmd_verify = app.add_subcommand("verify", "run the full identity suite");
  cmd_verify->add_option("--fault", fault, "inject a fault into the named check (self-test)");
  add_common(cmd_verify);

  auto* cmd_search = app.add_subcommand("search", "counterexample / paving searches");
  cmd_search->add_option("kind", search_kind, "statement|paving")->required();
  cmd_search->add_option("--matrix", matrix_path, "matrix JSON file (paving search)");
  cmd_search->add_option("--n", nsize, "matrix size (statement search)");
  cmd_search->add_option("--budget", budget, "trial budget")->check(CLI::PositiveNumber);
  cmd_search->add_option("--r", r_text, "block count (paving search)");
  cmd_search->add_flag("--greedy", greedy, "greedy paving search");
  cmd_search->add_flag("--certify", certify, "attach the optimized r=2 root bound");
  add_common(cmd_search);

  auto* cmd_stab = app.add_subcommand("stability", "Strongly Rayleigh measure from a PSD matrix");
  cmd_stab->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  cmd_stab->add_option("--r", r_text, "r (integer)");
  cmd_stab->add_option("--budget", budget, "stability sampling trials");
  add_common(cmd_stab);

  CLI11_PARSE(app, argc, argv);

  const bool float_mode = (mode == "float");
  const Rat r = parse_rational(r_text);
  if (r < 1) throw std::invalid_argument("--r must be >= 1");

  if (cmd_detr->parsed()) {
    emit(detr_report(matrix_from_file(matrix_path), r, float_mode), output);
    return 0;
  }
  if (cmd_chir->parsed()) {
    emit(chir_report(matrix_from_file(matrix_path), r, float_mode), output);
    return 0;
  }
  if (cmd_pav->parsed()) {
    if (!is_integer(r) || r < 1) throw std::invalid_argument("pavings: integer r >= 1");
    json rep = pavings_report(matrix_from_file(matrix_path), static_cast<int>(r.convert_to<long>()));
    emit(rep, output);
    return rep["identity_holds"].get<bool>() ? 0 : 1;
  }
  if (cmd_bound->parsed()) {
    if (!is_integer(r)) throw std::invalid_argument("bound: integer r");
    std::optional<MatrixInput> in;
    if (!matrix_path.empty()) in = matrix_from_file(matrix_path);
    std::optional<double> dv;
    if (delta >= 0) dv = delta;
    json warnings = json::array();
    json rep = bound_report_cmd(in, dv, static_cast<int>(r.convert_to<long>()), certify, warnings);
    if (!warnings.empty()) rep["warnings"] = warnings;
    emit(rep, output);
    return 0;
  }
  if (cmd_verify->parsed()) {
    VerifyOptions opt;
    opt.seed = seed;
    opt.float_mode = float_mode;
    opt.tolerance = tolerance;
    opt.fault = fault;
    auto results = run_verify_suite(opt);
    bool all = true;
    for (const auto& c : results) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.tag << " - " << c.detail << "\n";
      all = all && c.pass;
    }
    json jr = json::array();
    for (const auto& c : results)
      jr.push_back({{"tag", c.tag}, {"pass", c.pass}, {"detail", c.detail}});
    emit(json{{"command", "verify"}, {"seed", seed}, {"mode", mode}, {"results", jr},
              {"all_pass", all}},
         output);
    return all ? 0 : 1;
  }
  if (cmd_search->parsed()) {
    if (search_kind == "statement") {
      auto w = statement_counterexample_search(nsize, budget, seed, threads);
      if (w) {
        emit(json{{"command", "search"},
                  {"kind", "statement"},
                  {"witness",
                   {{"matrix", matrix_to_json(w->b)},
                    {"S", index_set_to_json(w->s)},
                    {"lhs", format_rational(w->lhs)},
                    {"rhs", format_rational(w->rhs)},
                    {"trial", w->trial}}}},
             output);
      } else {
        emit(json{{"command", "search"},
                  {"kind", "statement"},
                  {"exhausted", true},
                  {"budget", budget}},
             output);
      }
      return 0;
    }
    if (search_kind == "paving") {
      if (matrix_path.empty()) throw std::invalid_argument("search paving: --matrix required");
      if (!is_integer(r) || r < 1) throw std::invalid_argument("search paving: integer r >= 1");
      int ri = static_cast<int>(r.convert_to<long>());
      MatrixInput in = matrix_from_file(matrix_path);
      PavingReport rep =
          greedy ? best_paving_greedy(in.as_exact(), ri, seed) : best_paving_exhaustive(in.as_exact(), ri);
      if (certify && ri == 2) rep.bound_used = root_bound_2(in.as_exact());
      json assign = json::array();
      for (int b : rep.paving.assign) assign.push_back(b);
      json out_j{{"command", "search"},
                 {"kind", "paving"},
                 {"method", greedy ? "greedy" : "exhaustive"},
                 {"assign", assign},
                 {"value", rep.pinch_max_eig},
                 {"charpoly", unipoly_to_json(rep.charpoly)}};
      if (rep.bound_used) out_j["bound"] = bound_report_to_json(*rep.bound_used);
      emit(out_j, output);
      return 0;
    }
    throw std::invalid_argument("search: kind must be statement or paving");
  }
  if (cmd_stab->parsed()) {
    if (!is_integer(r) || r < 1) throw std::invalid_argument("stability: integer r >= 1");
    MatrixInput in = matrix_from_file(matrix_path);
    MatQ a = in.as_exact();
    DiscreteMeasure mu = sr_measure_from_matrix(a, static_cast<int>(r.convert_to<long>()));
    auto verdict = is_real_stable_multiaffine(mu.generating_poly(), static_cast<int>(budget), seed);
    UniPoly<Rat> expected = sr_expected_charpoly(a, mu.generating_poly());
    json rep{{"command", "stability"},
             {"r", format_rational(r)},
             {"measure", measure_to_json(mu)},
             {"verdict", to_string(verdict.status)},
             {"expected_charpoly", unipoly_to_json(expected)},
             {"expected_charpoly_real_rooted", is_real_rooted(expected)}};
    if (verdict.witness) {
      json w = json::array();
      for (const auto& z : *verdict.witness) w.push_back({z.re, z.im});
      rep["witness"] = w;
    }
    emit(rep, output);
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const chir::resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
