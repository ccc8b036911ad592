// duodiv: divergences between exponential-family densities, with an
// independent numerical oracle. JSON results on stdout; human diagnostics on
// stderr. Exit codes: 0 success (including +infinity results), 1 verification
// failure, 2 usage error, 3 domain/nesting/convergence error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "duodiv/centroids.hpp"
#include "duodiv/divergence.hpp"
#include "duodiv/errors.hpp"
#include "duodiv/families.hpp"
#include "duodiv/figures.hpp"
#include "duodiv/oracle.hpp"
#include "duodiv/specstring.hpp"
#include "duodiv/truncnorm.hpp"
#include "duodiv/version.hpp"

namespace {

using nlohmann::json;
using namespace duodiv;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

OracleConfig oracle_config_from_env() {
  OracleConfig cfg;
  if (const char* tol = std::getenv("DUODIV_ORACLE_TOL")) {
    const double v = parse_double(tol);  // ParamError -> usage exit
    if (!(v > 0.0)) throw ParamError("DUODIV_ORACLE_TOL must be a positive number");
    cfg.abs_tol = v;
  }
  return cfg;
}

json to_json(const OracleConfig& cfg) {
  return json{{"abs_tol", cfg.abs_tol},
              {"rel_tol", cfg.rel_tol},
              {"max_subdivisions", cfg.max_subdivisions},
              {"series_tail_tol", cfg.series_tail_tol},
              {"fd_step", cfg.fd_step}};
}

json base_result(const std::string& command, json inputs, const OracleConfig& cfg) {
  return json{{"command", command},
              {"inputs", std::move(inputs)},
              {"version", version_string},
              {"oracle_config", to_json(cfg)}};
}

const char* method_name(Method m) { return m == Method::closed_form ? "closed_form" : "oracle"; }

void attach_value(json& out, const DivergenceValue& v) {
  out["infinite"] = v.is_infinite();
  if (!v.is_infinite()) out["value"] = v.value();
  out["method"] = method_name(v.method());
  out["abs_error_estimate"] = v.abs_error_estimate();
}

void attach_oracle(json& out, const DivergenceValue& v) {
  out["oracle_infinite"] = v.is_infinite();
  if (!v.is_infinite()) out["oracle_value"] = v.value();
  out["oracle_abs_error_estimate"] = v.abs_error_estimate();
}

void emit(const json& out) { std::cout << out.dump(2) << "\n"; }

// ---- command implementations -------------------------------------------------

int run_kl(const std::string& p_spec, const std::string& q_spec, bool with_oracle) {
  const OracleConfig cfg = oracle_config_from_env();
  const ExpFamilyMember p = member_from_spec(p_spec);
  const ExpFamilyMember q = member_from_spec(q_spec);
  json out = base_result(
      "kl", json{{"p", format_family_spec(p)}, {"q", format_family_spec(q)}}, cfg);
  attach_value(out, kl_cross_family(p, q));
  if (with_oracle) attach_oracle(out, kl_numeric(oracle_density(p), oracle_density(q), cfg));
  emit(out);
  return 0;
}

int run_bhat(const std::string& p_spec, const std::string& q_spec, double alpha,
             bool with_oracle) {
  const OracleConfig cfg = oracle_config_from_env();
  const ExpFamilyMember p = member_from_spec(p_spec);
  const ExpFamilyMember q = member_from_spec(q_spec);
  json out = base_result(
      "bhat",
      json{{"p", format_family_spec(p)}, {"q", format_family_spec(q)}, {"alpha", alpha}}, cfg);
  bool closed_available = true;
  try {
    attach_value(out, bhattacharyya_closed(p, q, alpha));
  } catch (const UnsupportedPairError&) {
    // No natural-parameter form for this pair; the affinity integral itself
    // becomes the primary value.
    closed_available = false;
    attach_value(out, bhattacharyya_numeric(oracle_density(p), oracle_density(q), alpha, cfg));
  }
  if (with_oracle && closed_available)
    attach_oracle(out, bhattacharyya_numeric(oracle_density(p), oracle_density(q), alpha, cfg));
  emit(out);
  return 0;
}

int run_jensen(const std::string& p_spec, const std::string& q_spec, double alpha) {
  const OracleConfig cfg = oracle_config_from_env();
  const ExpFamilyMember p = member_from_spec(p_spec);
  const ExpFamilyMember q = member_from_spec(q_spec);
  json out = base_result(
      "jensen",
      json{{"p", format_family_spec(p)}, {"q", format_family_spec(q)}, {"alpha", alpha}}, cfg);
  attach_value(out, bhattacharyya_closed(p, q, alpha));
  emit(out);
  return 0;
}

int run_bregman(const std::string& p_spec, const std::string& q_spec) {
  const OracleConfig cfg = oracle_config_from_env();
  const ExpFamilyMember p = member_from_spec(p_spec);
  const ExpFamilyMember q = member_from_spec(q_spec);
  if (p.family != q.family || !(p.support == q.support))
    throw FamilyMismatchError("bregman: members must share one family and support");
  json out = base_result(
      "bregman", json{{"p", format_family_spec(p)}, {"q", format_family_spec(q)}}, cfg);
  attach_value(out, bregman(p.log_normalizer, p.theta, q.theta));
  emit(out);
  return 0;
}

int run_entropy(const std::string& p_spec, bool with_oracle) {
  const OracleConfig cfg = oracle_config_from_env();
  const ExpFamilyMember p = member_from_spec(p_spec);
  json out = base_result("entropy", json{{"p", format_family_spec(p)}}, cfg);
  const EntropyResult h = entropy_closed(p);
  out["infinite"] = false;
  out["value"] = h.value;
  out["method"] = "closed_form";
  out["abs_error_estimate"] = h.abs_error_estimate;
  if (with_oracle) {
    out["oracle_infinite"] = false;
    out["oracle_value"] = entropy_numeric(oracle_density(p), cfg);
    out["oracle_abs_error_estimate"] = cfg.abs_tol;
  }
  emit(out);
  return 0;
}

int run_centroid(const std::vector<std::string>& point_specs, const std::string& side_name) {
  const OracleConfig cfg = oracle_config_from_env();
  std::vector<ExpFamilyMember> members;
  members.reserve(point_specs.size());
  for (const std::string& s : point_specs) members.push_back(member_from_spec(s));
  for (std::size_t i = 1; i < members.size(); ++i) {
    if (members[i].family != members[0].family || !(members[i].support == members[0].support))
      throw FamilyMismatchError("centroid: all points must share one family and support");
  }

  CentroidProblem prob{DuoPair::checked(members[0].log_normalizer, members[0].log_normalizer),
                       {},
                       side_name == "left" ? CentroidSide::left : CentroidSide::right};
  for (const ExpFamilyMember& m : members) prob.points.push_back(m.theta);
  const Vector theta_c = centroid(prob);

  json inputs;
  for (const ExpFamilyMember& m : members) inputs["points"].push_back(format_family_spec(m));
  inputs["side"] = side_name;
  json out = base_result("centroid", std::move(inputs), cfg);
  out["natural"] = theta_c;
  // The centroid of half-normal members can leave the theta1 = 0 slice; it is
  // then a member of the enclosing truncation family with the same window.
  try {
    out["member"] = format_family_spec(member_at_natural(members[0], theta_c));
  } catch (const ParamError&) {
    out["member"] = format_family_spec(
        FamilyId::trunc_normal,
        to_source(FamilyId::trunc_normal, theta_c, members[0].support.range));
  }
  emit(out);
  return 0;
}

int run_figure(const std::string& name, const std::string& out_path, int grid) {
  const OracleConfig cfg = oracle_config_from_env();
  std::string csv;
  if (name == "quadratic-surfaces") {
    csv = quadratic_surfaces_csv(grid > 0 ? grid : 41);
  } else if (name == "conjugate-reversal") {
    csv = conjugate_reversal_csv(grid > 0 ? grid : 200);
  } else {
    throw ParamError("figure: unknown name '" + name +
                     "' (expected quadratic-surfaces or conjugate-reversal)");
  }
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_text_file(out_path, csv);
    json out = base_result("figure", json{{"name", name}, {"out", out_path}}, cfg);
    out["rows"] = static_cast<long long>(std::count(csv.begin(), csv.end(), '\n')) - 1;
    emit(out);
  }
  return 0;
}

// ---- verify -------------------------------------------------------------------

struct VerifyCheck {
  std::string name;
  bool pass = false;
  json detail;
};

class Verifier {
 public:
  explicit Verifier(const OracleConfig& cfg) : cfg_(cfg) {}

  //! Closed-form KLD against the quadrature/series oracle.
  void kl(const std::string& name, const ExpFamilyMember& p, const ExpFamilyMember& q,
          double tol) {
    const DivergenceValue closed = kl_cross_family(p, q);
    const DivergenceValue numeric = kl_numeric(oracle_density(p), oracle_density(q), cfg_);
    compare(name, closed, numeric, tol);
  }

  //! Both paths must report +infinity.
  void kl_infinite(const std::string& name, const ExpFamilyMember& p, const ExpFamilyMember& q) {
    const DivergenceValue closed = kl_cross_family(p, q);
    const DivergenceValue numeric = kl_numeric(oracle_density(p), oracle_density(q), cfg_);
    VerifyCheck c{name, closed.is_infinite() && numeric.is_infinite(),
                  json{{"closed_infinite", closed.is_infinite()},
                       {"oracle_infinite", numeric.is_infinite()}}};
    record(std::move(c));
  }

  void bhat(const std::string& name, const ExpFamilyMember& p, const ExpFamilyMember& q,
            double alpha, double tol) {
    const DivergenceValue closed = bhattacharyya_closed(p, q, alpha);
    const DivergenceValue numeric =
        bhattacharyya_numeric(oracle_density(p), oracle_density(q), alpha, cfg_);
    compare(name, closed, numeric, tol);
  }

  void anchor(const std::string& name, double value, double expected, double tol) {
    const double diff = std::fabs(value - expected);
    VerifyCheck c{name, diff <= tol,
                  json{{"value", value}, {"expected", expected}, {"diff", diff}, {"tol", tol}}};
    record(std::move(c));
  }

  const std::vector<VerifyCheck>& checks() const { return checks_; }
  int failures() const { return failures_; }

 private:
  void compare(const std::string& name, const DivergenceValue& closed,
               const DivergenceValue& numeric, double tol) {
    VerifyCheck c;
    c.name = name;
    if (closed.is_infinite() || numeric.is_infinite()) {
      c.pass = false;
      c.detail = json{{"closed_infinite", closed.is_infinite()},
                      {"oracle_infinite", numeric.is_infinite()}};
    } else {
      const double allowed = tol + numeric.abs_error_estimate() + closed.abs_error_estimate();
      const double diff = std::fabs(closed.value() - numeric.value());
      c.pass = diff <= allowed;
      c.detail = json{{"closed", closed.value()},
                      {"oracle", numeric.value()},
                      {"diff", diff},
                      {"tol", allowed}};
    }
    record(std::move(c));
  }

  void record(VerifyCheck c) {
    if (!c.pass) ++failures_;
    std::cerr << "verify: " << (c.pass ? "PASS" : "FAIL") << " " << c.name << " "
              << c.detail.dump() << "\n";
    checks_.push_back(std::move(c));
  }

  OracleConfig cfg_;
  std::vector<VerifyCheck> checks_;
  int failures_ = 0;
};

int run_verify() {
  const OracleConfig cfg = oracle_config_from_env();
  Verifier v(cfg);
  const double kTol = 1e-6;

  v.kl("kl geometric(0.5) vs geometric(0.25)", geometric(0.5), geometric(0.25), kTol);
  v.kl("kl poisson(1) vs geometric(0.5)", poisson(1.0), geometric(0.5), kTol);
  v.kl("kl poisson(2) vs geometric(0.3)", poisson(2.0), geometric(0.3), kTol);
  v.kl("kl exponential(1) vs laplacian(1)", exponential(1.0), laplacian(1.0), kTol);
  v.kl("kl exponential(2) vs laplacian(1)", exponential(2.0), laplacian(1.0), kTol);
  v.kl("kl halfnormal(1) vs normal(0,1)", half_normal(1.0), normal(0.0, 1.0), kTol);
  v.kl("kl halfnormal(1) vs normal(0.5,1.5)", half_normal(1.0), normal(0.5, 1.5), kTol);
  v.kl("kl truncnormal(0,1,-1,1) vs truncnormal(0.5,1.5,-2,3)", trunc_normal(0.0, 1.0, -1.0, 1.0),
       trunc_normal(0.5, 1.5, -2.0, 3.0), kTol);
  v.kl("kl normal(0,1) vs normal(1,2)", normal(0.0, 1.0), normal(1.0, 2.0), kTol);
  v.kl_infinite("kl laplacian(1) vs exponential(1) = +inf", laplacian(1.0), exponential(1.0));

  v.anchor("kl exponential(1) vs laplacian(1) = log 2",
           kl_cross_family(exponential(1.0), laplacian(1.0)).value(), std::log(2.0), 1e-9);
  v.anchor("entropy normal(0,1) = log sqrt(2 pi e)", entropy_closed(normal(0.0, 1.0)).value,
           0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e), 1e-10);
  {
    const TruncMoments mom = trunc_moments(TruncNormalParams(0.0, 1.0, 0.0, inf));
    v.anchor("halfnormal(1) mean = sqrt(2/pi)", mom.mean,
             std::sqrt(2.0 / std::numbers::pi), 1e-8);
    v.anchor("halfnormal(1) variance = 1 - 2/pi", mom.var,
             1.0 - 2.0 / std::numbers::pi, 1e-8);
  }

  v.bhat("bhat exponential(1) vs laplacian(1), alpha=0.5", exponential(1.0), laplacian(1.0), 0.5,
         kTol);
  v.bhat("bhat halfnormal(1) vs normal(0,1), alpha=0.25", half_normal(1.0), normal(0.0, 1.0),
         0.25, kTol);
  v.bhat("bhat truncnormal(0,1,-1,1) vs normal(0,1), alpha=0.75",
         trunc_normal(0.0, 1.0, -1.0, 1.0), normal(0.0, 1.0), 0.75, kTol);

  json out = base_result("verify", json::object(), cfg);
  out["checks"] = json::array();
  for (const VerifyCheck& c : v.checks()) {
    json jc = c.detail;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    out["checks"].push_back(std::move(jc));
  }
  out["total"] = static_cast<int>(v.checks().size());
  out["failed"] = v.failures();
  emit(out);
  return v.failures() == 0 ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"divergences between exponential-family densities, with an independent "
               "numerical oracle"};
  app.set_version_flag("--version", version_string);
  app.require_subcommand(1);

  std::string p_spec, q_spec;
  std::vector<std::string> centroid_points;
  double alpha = 0.5;
  bool with_oracle = false;
  std::string side = "right";
  std::string figure_name, figure_out;
  int figure_grid = 0;

  auto add_pq = [&](CLI::App* cmd) {
    cmd->add_option("--p", p_spec, "first density, e.g. poisson:lambda=1")->required();
    cmd->add_option("--q", q_spec, "second density")->required();
  };

  CLI::App* kl = app.add_subcommand("kl", "Kullback-Leibler divergence D_KL[p:q]");
  add_pq(kl);
  kl->add_flag("--oracle", with_oracle, "also run the quadrature/series oracle");

  CLI::App* bhat = app.add_subcommand(
      "bhat", "skewed Bhattacharyya distance -log integral p^alpha q^(1-alpha)");
  add_pq(bhat);
  bhat->add_option("--alpha", alpha, "skew in (0,1)")->required();
  bhat->add_flag("--oracle", with_oracle, "also run the affinity oracle");

  CLI::App* jensen = app.add_subcommand(
      "jensen", "(duo) Jensen gap on natural parameters (equals bhat in closed form)");
  add_pq(jensen);
  jensen->add_option("--alpha", alpha, "skew in (0,1)")->required();

  CLI::App* bregman = app.add_subcommand(
      "bregman", "tangent-gap divergence B_F(theta_p : theta_q) within one family");
  add_pq(bregman);

  CLI::App* entropy = app.add_subcommand("entropy", "(differential) entropy of one density");
  entropy->add_option("--p", p_spec, "density")->required();
  entropy->add_flag("--oracle", with_oracle, "also integrate -p log p numerically");

  CLI::App* centroid = app.add_subcommand("centroid", "sided centroid of same-family densities");
  centroid->add_option("--p", centroid_points, "density (repeat for each point)")
      ->required()
      ->take_all();
  centroid->add_option("--side", side, "left | right")
      ->check(CLI::IsMember({"left", "right"}));

  CLI::App* verify =
      app.add_subcommand("verify", "run the closed-form vs oracle regression checks");

  CLI::App* figure = app.add_subcommand("figure", "emit CSV plot data");
  figure->add_option("--name", figure_name, "quadratic-surfaces | conjugate-reversal")
      ->required();
  figure->add_option("--out", figure_out, "write CSV here instead of stdout");
  figure->add_option("--grid", figure_grid,
                     "points per axis (surfaces) or per curve (curves); 0 = default");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (kl->parsed()) return run_kl(p_spec, q_spec, with_oracle);
    if (bhat->parsed()) return run_bhat(p_spec, q_spec, alpha, with_oracle);
    if (jensen->parsed()) return run_jensen(p_spec, q_spec, alpha);
    if (bregman->parsed()) return run_bregman(p_spec, q_spec);
    if (entropy->parsed()) return run_entropy(p_spec, with_oracle);
    if (centroid->parsed()) return run_centroid(centroid_points, side);
    if (verify->parsed()) return run_verify();
    if (figure->parsed()) return run_figure(figure_name, figure_out, figure_grid);
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const AlphaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    // Domain, dominance, nesting, support, degenerate-window, unsupported
    // pair, convergence and tolerance failures.
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
