// Batch entry point: systole tables, verification suites and form-algebra
// utilities.  Reports are JSON with a versioned schema; the seed is always
// recorded so every run can be reproduced exactly.  Exit codes: 0 all checks
// pass, 1 at least one check fails, 2 configuration error.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cpsys/fields.hpp>
#include <cpsys/form_json.hpp>
#include <cpsys/gray.hpp>
#include <cpsys/igf.hpp>
#include <cpsys/lefschetz.hpp>
#include <cpsys/montecarlo.hpp>
#include <cpsys/systole.hpp>
#include <cpsys/variation.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <string>

using namespace cpsys;
using nlohmann::json;

namespace {

constexpr const char* kSchema = "cpsys-report/1";

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CPSYS_SEED")) return std::strtoull(env, nullptr, 10);
  return 7;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    out << report.dump(2) << "\n";
  }
}

// a report entry; `pass` compares the residual against the tolerance
json check_entry(const std::string& id, double residual, double tolerance, bool pass) {
  return {{"check", id}, {"residual", residual}, {"tolerance", tolerance}, {"pass", pass}};
}

int finish(json& report, const std::string& out_path) {
  bool all = true;
  for (const auto& c : report["checks"]) all &= c["pass"].get<bool>();
  report["pass"] = all;
  // the timestamp is informational only and excluded from determinism
  report["timestamp"] = iso_timestamp();
  emit(report, out_path);
  return all ? 0 : 1;
}

// ------------------------------------------------------------- table systole

int run_table(int n, double t_min, double t_max, int steps, const std::string& format,
              const std::string& out_path) {
  const std::vector<SystoleReport> rows = systolic_freedom_scan(n, log_grid(t_min, t_max, steps));
  if (format == "csv") {
    std::ostringstream csv;
    csv << "t,sys2_nor,sys4n_nor,vol\n";
    csv.precision(17);
    for (const SystoleReport& r : rows)
      csv << r.t << "," << r.sys2_nor << "," << r.sys4n_nor << "," << r.vol_gt << "\n";
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream(out_path) << csv.str();
    }
    return 0;
  }
  json report{{"schema", kSchema}, {"command", "table systole"}, {"n", n}, {"rows", json::array()}};
  for (const SystoleReport& r : rows)
    report["rows"].push_back(
        {{"t", r.t}, {"sys2_nor", r.sys2_nor}, {"sys4n_nor", r.sys4n_nor}, {"vol", r.vol_gt}});
  report["timestamp"] = iso_timestamp();
  emit(report, out_path);
  return 0;
}

// ----------------------------------------------------------- verify balanced

int run_balanced(int n, double t, int points, double h, double tol, std::uint64_t seed,
                 const std::string& out_path) {
  const BalancedReport rep = verify_balanced(t, n, points, h, seed);
  json report{{"schema", kSchema}, {"command", "verify balanced"},
              {"n", n},           {"t", t},
              {"points", points}, {"h", h},
              {"seed", seed},     {"checks", json::array()}};
  report["checks"].push_back(check_entry("d-omega-power-vanishes", rep.max_domega_residual, tol,
                                         rep.max_domega_residual < tol));
  report["checks"].push_back(check_entry("codifferential-trace-vanishes", rep.max_ktrace_residual,
                                         tol, rep.max_ktrace_residual < tol));
  return finish(report, out_path);
}

// --------------------------------------------------------- verify identities

int run_identities(int n, double t, int points, double h, double tol, std::uint64_t seed,
                   const std::string& out_path) {
  const int m = 2 * n + 1, d = 2 * m;
  const MetricField gt = homogeneous_metric(n, t);
  const MetricField fs = fs_metric(m);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double basic = 0.0, full_kahler = 0.0, hermitian = 0.0, nijenhuis = 0.0;
  for (int i = 0; i < points; ++i) {
    const ChartPoint p = random_chart_point(m, rng, 1.5);
    auto unit_vec = [&]() {
      Eigen::VectorXd v =
          Eigen::VectorXd::NullaryExpr(d, [&](Eigen::Index) { return gauss(rng); });
      return Eigen::VectorXd(v.normalized());
    };
    const Eigen::VectorXd x = unit_vec(), y = unit_vec(), z = unit_vec();
    basic = std::max(basic, check_basic_identities_at(gt, p, x, y, z, h).max_basic());
    full_kahler = std::max(full_kahler, check_basic_identities_at(fs, p, x, y, z, h).max_all());
    const GrayTensors ten = gray_tensors_at(gt, p, x, y, h);
    hermitian = std::max(hermitian, ten.h.cwiseAbs().maxCoeff());
    nijenhuis = std::max(nijenhuis, ten.nijenhuis.cwiseAbs().maxCoeff());
  }
  json report{{"schema", kSchema}, {"command", "verify identities"},
              {"n", n},           {"t", t},
              {"points", points}, {"h", h},
              {"seed", seed},     {"checks", json::array()}};
  report["checks"].push_back(
      check_entry("covariant-derivative-identities", basic, tol, basic < tol));
  report["checks"].push_back(
      check_entry("torsion-corollaries-kahler", full_kahler, tol, full_kahler < tol));
  report["checks"].push_back(check_entry("hermitian-criterion", hermitian, tol, hermitian < tol));
  report["checks"].push_back(
      check_entry("integrability-tensor", nijenhuis, tol, nijenhuis < tol));
  return finish(report, out_path);
}

// ---------------------------------------------------------- verify variation

// scalar sum: {"generators": [{"alpha": [...], "beta": [...], "e": E,
// "coeff": {"re": r, "im": s}}, ...]}
MonomialSum scalar_from_json(const json& j, int m) {
  MonomialSum out = MonomialSum::constant(m, 0.0);
  for (const json& g : j.at("generators")) {
    const std::vector<int> alpha = g.at("alpha").get<std::vector<int>>();
    const std::vector<int> beta = g.at("beta").get<std::vector<int>>();
    const int e = g.value("e", 0);
    const Complex c(g.at("coeff").at("re").get<double>(), g.at("coeff").at("im").get<double>());
    out = out + MonomialSum::monomial(m, alpha, beta, e, c);
  }
  return out;
}

// expression tree over {ddbar, wedge, omega_pow, scale}
FormField field_from_json(const json& j, int m) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "omega_pow") return wedge_power_field(fs_field(m), j.at("k").get<int>());
  if (op == "ddbar") return i_ddbar_field(scalar_from_json(j.at("f"), m));
  if (op == "wedge") {
    const json& args = j.at("args");
    FormField acc = field_from_json(args.at(0), m);
    for (std::size_t i = 1; i < args.size(); ++i)
      acc = wedge_fields(acc, field_from_json(args.at(i), m));
    return acc;
  }
  if (op == "scale") {
    const FormField arg = field_from_json(j.at("arg"), m);
    const json& s = j.at("factor");
    if (s.is_object() && s.contains("generators"))
      return scale_field(arg, scalar_from_json(s, m));
    return scale_field(arg, Complex(s.at("re").get<double>(), s.at("im").get<double>()));
  }
  throw std::invalid_argument("unknown field op: " + op);
}

int run_variation(int n, std::int64_t samples, std::uint64_t seed, double h, int workers,
                  const std::string& directions_path, const std::string& out_path) {
  if (n < 3) {
    std::cerr << "verify variation: n must be at least 3\n";
    return 2;
  }
  const McConfig mc{samples, seed, workers};
  const FormField base = fs_field(n);

  MonomialSum f = MonomialSum::monomial(n, {1, 0, 0}, {0, 1, 0}, 2, Complex(0.7, 0.4));
  f = (f + f.conjugate()) * Complex(0.5);
  MonomialSum g = MonomialSum::monomial(n, {0, 1, 0}, {0, 0, 1}, 2, Complex(-0.3, 0.8));
  g = (g + g.conjugate()) * Complex(0.5);

  struct Direction {
    std::string name;
    FormField mu;
  };
  std::vector<Direction> directions = {
      {"zero", scale_field(wedge_power_field(base, n - 1), Complex(0.0))},
      {"scaling", wedge_power_field(base, n - 1)},
      {"kahler", scale_field(wedge_fields(i_ddbar_field(f), base), Complex(n - 1.0))},
      {"generic", wedge_fields(i_ddbar_field(f), i_ddbar_field(g))},
  };
  if (!directions_path.empty()) {
    std::ifstream in(directions_path);
    if (!in) {
      std::cerr << "verify variation: cannot open " << directions_path << "\n";
      return 2;
    }
    const json lib = json::parse(in);
    directions.clear();
    for (const json& entry : lib.at("directions"))
      directions.push_back(
          {entry.at("name").get<std::string>(), field_from_json(entry.at("structure"), n)});
  }

  json report{{"schema", kSchema}, {"command", "verify variation"},
              {"n", n},           {"samples", samples},
              {"seed", seed},     {"h", h},
              {"checks", json::array()}, {"directions", json::array()}};
  for (const Direction& dir : directions) {
    const McEstimate d1 = first_variation(base, dir.mu, mc);
    const double d1_fd = first_variation_fd(base, dir.mu, h, mc);
    const McEstimate d2 = second_variation(base, variation_direction(base, dir.mu), mc);
    const double d2_fd = second_variation_fd(base, dir.mu, 10.0 * h, mc);
    report["directions"].push_back({{"direction", dir.name},
                                    {"first_analytic", d1.value},
                                    {"first_fd", d1_fd},
                                    {"second_analytic", d2.value},
                                    {"second_fd", d2_fd},
                                    {"sigma_first", d1.std_error},
                                    {"sigma_second", d2.std_error}});
    // the Kaehler point is critical and the Hessian is semi-positive
    const double crit_tol = std::max(1e-6, 3.0 * d1.std_error);
    report["checks"].push_back(check_entry("first-variation-critical:" + dir.name,
                                           std::abs(d1.value), crit_tol,
                                           std::abs(d1.value) < crit_tol));
    const double fd_tol = std::max(1e-4, 3.0 * d1.std_error);
    report["checks"].push_back(check_entry("first-variation-fd-agreement:" + dir.name,
                                           std::abs(d1.value - d1_fd), fd_tol,
                                           std::abs(d1.value - d1_fd) < fd_tol));
    const double fd2_tol =
        std::max(1e-4 * std::max(1.0, std::abs(d2.value)), 6.0 * d2.std_error);
    report["checks"].push_back(check_entry("second-variation-fd-agreement:" + dir.name,
                                           std::abs(d2.value - d2_fd), fd2_tol,
                                           std::abs(d2.value - d2_fd) < fd2_tol));
    const double semi_tol = std::max(3.0 * d2.std_error, 1e-12);
    report["checks"].push_back(check_entry("second-variation-semi-positive:" + dir.name,
                                           std::max(0.0, -d2.value), semi_tol,
                                           d2.value >= -semi_tol));
  }
  return finish(report, out_path);
}

// ---------------------------------------------------------------- verify igf

int run_igf(const std::string& family_name, int n, double t, std::int64_t samples,
            std::uint64_t seed, int workers, const std::string& out_path) {
  const Family family = family_name == "penrose" ? Family::penrose : Family::equatorial;
  const int m = 2 * n + 1;

  const MonomialSum one = MonomialSum::constant(m, 1.0);
  MonomialSum bump = MonomialSum::monomial(m, std::vector<int>(m, 0), std::vector<int>(m, 0), 0,
                                           Complex(0.0, 0.0));
  {
    std::vector<int> alpha(m, 0), beta(m, 0);
    alpha[0] = 1;
    beta[1] = 1;
    MonomialSum b = MonomialSum::monomial(m, alpha, beta, 2, Complex(0.8, 0.0));
    bump = one + (b + b.conjugate()) * Complex(0.5);
  }
  std::vector<int> e1(m, 0);
  e1[0] = 1;
  const MonomialSum radial = one + MonomialSum::monomial(m, e1, e1, 2, Complex(0.8, 0.0));

  json report{{"schema", kSchema}, {"command", "verify igf"},
              {"family", family_name}, {"n", n},
              {"t", t},           {"samples", samples},
              {"seed", seed},     {"checks", json::array()}};
  const char* names[] = {"constant", "off-diagonal", "radial"};
  const MonomialSum* phis[] = {&one, &bump, &radial};
  for (int i = 0; i < 3; ++i) {
    const IgfReport rep = igf_verify(family, *phis[i], n, t, samples, seed + i, workers);
    const double tol = std::max(3.0 * rep.combined_sigma(),
                                1e-12 * std::max(std::abs(rep.lhs.value), std::abs(rep.rhs.value)));
    report["checks"].push_back(check_entry(std::string("fiberwise-integration:") + names[i],
                                           std::abs(rep.lhs.value - rep.rhs.value), tol,
                                           rep.pass(3.0)));
  }
  return finish(report, out_path);
}

// ----------------------------------------------------------------- algebra

int run_decompose(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) {
    std::cerr << "algebra decompose: cannot open " << in_path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  GradedForm form = form_from_json(buf.str());
  const int d = form.dim();
  if (d % 2 != 0) {
    std::cerr << "algebra decompose: dimension must be even\n";
    return 2;
  }
  const LinearComplexStructure J(canonical_j_matrix(d / 2), Eigen::MatrixXd::Identity(d, d));
  json report{{"schema", kSchema}, {"command", "algebra decompose"}, {"pieces", json::array()}};
  for (const PrimitivePiece& piece : primitive_decompose(form, J))
    report["pieces"].push_back(
        {{"level", piece.level}, {"form", json::parse(form_to_json(piece.form))}});
  emit(report, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cpsys: systole curves, balanced metrics and integral geometry on CP^n"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  int workers = 1;
  std::string out_path;

  // ---- table
  CLI::App* table = app.add_subcommand("table", "closed-form tables");
  table->require_subcommand(1);
  CLI::App* tab_sys = table->add_subcommand("systole", "normalized systole curves of g_t");
  int tab_n = 1, tab_steps = 50;
  double t_min = 1e-2, t_max = 1e2;
  std::string format = "csv";
  tab_sys->add_option("--n", tab_n, "half fiber index: forms live on CP^{2n+1}")
      ->check(CLI::PositiveNumber);
  tab_sys->add_option("--t-min", t_min)->check(CLI::PositiveNumber);
  tab_sys->add_option("--t-max", t_max)->check(CLI::PositiveNumber);
  tab_sys->add_option("--steps", tab_steps)->check(CLI::PositiveNumber);
  tab_sys->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  tab_sys->add_option("--out", out_path, "output path (default stdout)");

  // ---- verify
  CLI::App* verify = app.add_subcommand("verify", "numerical verification suites");
  verify->require_subcommand(1);

  CLI::App* bal = verify->add_subcommand("balanced", "balancedness of g_t");
  bal->set_help_flag("--help", "print help");
  int bal_n = 1, bal_points = 50;
  double bal_t = 1.0, bal_h = 1e-4, bal_tol = 1e-5;
  bal->add_option("--n", bal_n)->check(CLI::PositiveNumber);
  bal->add_option("--t", bal_t)->check(CLI::PositiveNumber);
  bal->add_option("--points", bal_points)->check(CLI::PositiveNumber);
  bal->add_option("--h", bal_h)->check(CLI::PositiveNumber);
  bal->add_option("--tol", bal_tol)->check(CLI::PositiveNumber);
  bal->add_option("--seed", seed);
  bal->add_option("--out", out_path);

  CLI::App* ident = verify->add_subcommand("identities", "almost-Hermitian identity residuals");
  ident->set_help_flag("--help", "print help");
  int id_n = 1, id_points = 50;
  double id_t = 2.0, id_h = 3e-4, id_tol = 1e-4;
  ident->add_option("--n", id_n)->check(CLI::PositiveNumber);
  ident->add_option("--t", id_t)->check(CLI::PositiveNumber);
  ident->add_option("--points", id_points)->check(CLI::PositiveNumber);
  ident->add_option("--h", id_h)->check(CLI::PositiveNumber);
  ident->add_option("--tol", id_tol)->check(CLI::PositiveNumber);
  ident->add_option("--seed", seed);
  ident->add_option("--out", out_path);

  CLI::App* var = verify->add_subcommand("variation", "variational formulas of the functional");
  var->set_help_flag("--help", "print help");
  int var_n = 3;
  std::int64_t var_samples = 20000;
  double var_h = 1e-3;
  std::string directions_path;
  var->add_option("--n", var_n)->check(CLI::Range(3, 16));
  var->add_option("--samples", var_samples)->check(CLI::PositiveNumber);
  var->add_option("--h", var_h)->check(CLI::PositiveNumber);
  var->add_option("--directions", directions_path, "JSON direction library")
      ->check(CLI::ExistingFile);
  var->add_option("--seed", seed);
  var->add_option("--workers", workers)->check(CLI::PositiveNumber);
  var->add_option("--out", out_path);

  CLI::App* igf = verify->add_subcommand("igf", "integral geometric formulas");
  std::string family = "penrose";
  int igf_n = 1;
  double igf_t = 1.0;
  std::int64_t igf_samples = 40000;
  igf->add_option("--family", family)->check(CLI::IsMember({"penrose", "equatorial"}));
  igf->add_option("--n", igf_n)->check(CLI::PositiveNumber);
  igf->add_option("--t", igf_t)->check(CLI::PositiveNumber);
  igf->add_option("--samples", igf_samples)->check(CLI::PositiveNumber);
  igf->add_option("--seed", seed);
  igf->add_option("--workers", workers)->check(CLI::PositiveNumber);
  igf->add_option("--out", out_path);

  // ---- algebra
  CLI::App* algebra = app.add_subcommand("algebra", "graded-form utilities");
  algebra->require_subcommand(1);
  CLI::App* dec = algebra->add_subcommand("decompose", "Lefschetz primitive decomposition");
  std::string in_path;
  dec->add_option("--in", in_path, "input form JSON")->required()->check(CLI::ExistingFile);
  dec->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (tab_sys->parsed()) return run_table(tab_n, t_min, t_max, tab_steps, format, out_path);
    if (bal->parsed()) return run_balanced(bal_n, bal_t, bal_points, bal_h, bal_tol, seed, out_path);
    if (ident->parsed())
      return run_identities(id_n, id_t, id_points, id_h, id_tol, seed, out_path);
    if (var->parsed())
      return run_variation(var_n, var_samples, seed, var_h, workers, directions_path, out_path);
    if (igf->parsed())
      return run_igf(family, igf_n, igf_t, igf_samples, seed, workers, out_path);
    if (dec->parsed()) return run_decompose(in_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
