#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "redstar/closed_form.hpp"
#include "redstar/expr.hpp"
#include "redstar/frame_checks.hpp"
#include "redstar/koszul.hpp"
#include "redstar/moyal.hpp"
#include "redstar/suites.hpp"

using namespace redstar;

namespace {

struct Options {
  RunConfig cfg;
  std::string signature;
  std::string u, v, f, mode = "direct";
};

void emit(const RunConfig& cfg, const Json& doc) {
  if (cfg.json_path.empty()) return;
  std::string text = doc.dump(2) + "\n";
  if (cfg.json_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.json_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + cfg.json_path);
  out << text;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

int cmd_model(const RunConfig& cfg) {
  FlatModel m = model_for(cfg);
  CheckResult valid = validate_model(m);
  Json doc = {{"model", to_json(m)},
              {"dim", m.dim()},
              {"admissible", m.admissible()},
              {"H", to_json(m.H())},
              {"checks", Json::array({to_json(valid)})}};
  std::cout << "n=" << m.n() << " dim=" << m.dim() << " admissible=" << (m.admissible() ? "yes" : "no") << "\n";
  std::cout << "H = " << m.H().to_string(m.variable_names()) << "\n";
  if (m.admissible()) {
    GeometryScalars g = derive_scalars(m);
    doc["scalars"] = {{"phi", to_string(g.phi)}, {"f", to_string(g.f)}, {"tr_rho2", to_string(g.tr_rho2)},
                      {"K", to_string(g.K)}};
    std::cout << "phi=" << g.phi << " f=" << g.f << " tr_rho2=" << g.tr_rho2 << " K=" << g.K << "\n";
  }
  std::cout << "validate_model: " << (valid.pass ? "pass" : "FAIL " + valid.witness) << "\n";
  emit(cfg, doc);
  return valid.pass ? 0 : 1;
}

int cmd_product(const Options& o) {
  const RunConfig& cfg = o.cfg;
  FlatModel m = model_for(cfg);
  if (o.mode != "direct" && o.mode != "fast" && o.mode != "both") throw InputError("mode must be direct, fast or both");
  LaurentH u = parse_reduced(m, o.u, "u"), v = parse_reduced(m, o.v, "v");
  NuSeries su = to_series(m, u, cfg.order), sv = to_series(m, v, cfg.order);
  NuSeries direct, fast;
  if (o.mode != "fast") direct = reduced_product(m, su, sv);
  if (o.mode != "direct") {
    if (!m.admissible()) throw InputError("fast mode needs an admissible signature");
    fast = fast_reduced_product(m, derive_scalars(m), su, sv);
  }
  const NuSeries& table = o.mode == "fast" ? fast : direct;
  Json rows = Json::array(), diff = Json::array();
  const auto names = m.variable_names();
  std::cout << "nu,C_red\n";
  for (int r = 0; r <= cfg.order; ++r) {
    LaurentH c = table[r] * (factorial(r) * Scalar(mpz_class(1) << r));
    rows.push_back({{"nu", r}, {"c_red", to_json(c)}});
    std::cout << r << "," << quoted(c.to_string(names)) << "\n";
    if (o.mode == "both") {
      LaurentH d = fast[r] - direct[r];
      if (!d.is_zero()) diff.push_back({{"nu", r}, {"diff", to_json(d)}});
    }
  }
  Json doc = {{"model", to_json(m)}, {"order", cfg.order}, {"mode", o.mode}, {"u", o.u}, {"v", o.v}, {"rows", rows}};
  if (o.mode == "both") {
    doc["diff"] = diff;
    std::cout << "diff: " << (diff.empty() ? "empty" : std::to_string(diff.size()) + " nonzero orders") << "\n";
  }
  emit(cfg, doc);
  return diff.empty() ? 0 : 1;
}

int cmd_reduce(const Options& o) {
  const RunConfig& cfg = o.cfg;
  FlatModel m = model_for(cfg);
  NuSeries f = to_series(m, parse_function(m, o.f), cfg.order);
  NuSeries qi = quantum_restriction(m, f), qh = quantum_homotopy(m, f);
  const auto names = m.variable_names();
  std::cout << "nu,q_iota,qh\n";
  for (int r = 0; r <= cfg.order; ++r)
    std::cout << r << "," << quoted(qi[r].to_string(names)) << "," << quoted(qh[r].to_string(names)) << "\n";
  bool ok = koszul_quantum(m, qh) + qi == f;
  std::cout << "homotopy identity: " << (ok ? "pass" : "FAIL") << "\n";
  emit(cfg, {{"model", to_json(m)}, {"order", cfg.order}, {"f", o.f}, {"q_iota", to_json(qi)}, {"qh", to_json(qh)},
             {"homotopy_identity", ok}});
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  SuiteReport report = run_suite(cfg);
  for (const auto& w : report.warnings) std::cout << "warning: " << w << "\n";
  for (const auto& c : report.cases)
    std::cout << (c.result.pass ? "pass " : "FAIL ") << c.id << (c.result.pass ? "" : "  " + c.result.witness) << "\n";
  std::cout << (report.pass() ? "all passed" : "failures present") << " (" << report.cases.size() << " cases)\n";
  emit(cfg, to_json(report));
  return report.pass() ? 0 : 1;
}

int cmd_dump(const Options& o) {
  const RunConfig& cfg = o.cfg;
  FlatModel m = model_for(cfg);
  LaurentH u = parse_function(m, o.u), v = parse_function(m, o.v);
  Json rows = Json::array();
  const auto names = m.variable_names();
  std::cout << "r,C_r\n";
  for (int r = 0; r <= cfg.order; ++r) {
    LaurentH c = c_r(m, u, v, r);
    rows.push_back({{"r", r}, {"c_r", to_json(c)}});
    std::cout << r << "," << quoted(c.to_string(names)) << "\n";
  }
  emit(cfg, {{"model", to_json(m)}, {"order", cfg.order}, {"u", o.u}, {"v", o.v}, {"rows", rows}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Reduced star products on the flat cone model"};
  app.set_config("--config", "", "INI/TOML file with n, signature, order, seed, degree, suite, json, jobs");
  app.require_subcommand(1);
  app.add_option("--n", o.cfg.n, "half-dimension of the reduced space")->capture_default_str();
  app.add_option("--signature", o.signature, "definite, opposite or a list like 1,1,-1,...")->default_str("definite");
  app.add_option("--order", o.cfg.order, "truncation order in nu")->capture_default_str();
  app.add_option("--seed", o.cfg.seed, "random seed")->capture_default_str();
  app.add_option("--degree", o.cfg.degree, "degree bound of sampled inputs")->capture_default_str();
  app.add_option("--suite", o.cfg.suite, "frame, moyal, koszul, closedform, symbols or all")->capture_default_str();
  app.add_option("--json", o.cfg.json_path, "write the JSON document here ('-' for stdout)");
  app.add_option("--jobs", o.cfg.jobs, "worker threads for verify (0 = hardware)")->capture_default_str();

  auto* model = app.add_subcommand("model", "print the model and its derived scalars")->fallthrough();
  auto* product = app.add_subcommand("product", "table of C_r^red(u, v)")->fallthrough();
  product->add_option("--u", o.u, "first argument")->required();
  product->add_option("--v", o.v, "second argument")->required();
  product->add_option("--mode", o.mode, "direct, fast or both")->capture_default_str();
  auto* reduce = app.add_subcommand("reduce", "quantum restriction and homotopy of f")->fallthrough();
  reduce->add_option("--f", o.f, "function on the cone")->required();
  auto* verify = app.add_subcommand("verify", "run verification suites")->fallthrough();
  auto* dump = app.add_subcommand("dump", "table of the flat bidifferential operators C_r(u, v)")->fallthrough();
  dump->add_option("--u", o.u, "first argument")->required();
  dump->add_option("--v", o.v, "second argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    o.cfg.signature = parse_signature(o.signature, o.cfg.n);
    validate_config(o.cfg);
    if (*model) return cmd_model(o.cfg);
    if (*product) return cmd_product(o);
    if (*reduce) return cmd_reduce(o);
    if (*verify) return cmd_verify(o.cfg);
    if (*dump) return cmd_dump(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
