#pragma once

// lie-spectra command line. Exit codes: 0 verified, 1 verification failed,
// 2 usage or configuration error.

#include "acceptance.hpp"
#include "serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace liespectra {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string command;
  std::string spec;            // path, or inline JSON starting with '{'
  std::optional<int> p;
  std::string format = "table";
  std::string out;
  std::string form;
  std::string function;
  int factor = 1;
  bool pullback = true;
  bool tilde = false;
  int mu0 = 2;
  std::string t;
  long n = 0;
  std::string dimE, dimH;
  bool allow_large = false;
};

namespace cli {

struct Output {
  json data;
  std::string csv;
  std::string table;
  int code = kOk;
};

inline json load_json(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("--spec is required for this command");
  if (spec.front() == '{') return json::parse(spec);
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot open spec file '" + spec + "'");
  return json::parse(in);
}

/// A GroupSpec ({"factors": ...}) or raw structure constants ({"dim", "structure"}).
inline LieAlgebraMetric load_algebra(const RunConfig& cfg, std::optional<GroupSpec>* spec_out = nullptr) {
  json j = load_json(cfg.spec);
  if (j.contains("structure")) return algebra_from_json(j);
  auto spec = group_spec_from_json(j);
  if (spec_out) *spec_out = spec;
  return build_group(spec);
}

inline std::string yes(bool b) { return b ? "true" : "false"; }

inline Output validate_cmd(const RunConfig& cfg) {
  auto r = validate(load_algebra(cfg));
  Output o;
  o.data = to_json(r);
  o.csv = "check,passed,witness\n";
  std::ostringstream t;
  for (const auto& c : r.checks) {
    o.csv += c.name + "," + yes(c.passed) + "," + c.witness + "\n";
    t << "  " << (c.passed ? "ok  " : "FAIL") << " " << c.name << (c.witness.empty() ? "" : "  witness " + c.witness)
      << "\n";
  }
  o.table = (r.ok() ? "valid\n" : "INVALID\n") + t.str();
  o.code = r.ok() ? kOk : kFailed;
  return o;
}

inline Output spectrum_cmd(const RunConfig& cfg) {
  auto g = load_algebra(cfg);
  auto cx = cfg.tilde ? tilde_complex(g) : invariant_complex(g);
  std::vector<SpectrumTable> tables;
  if (cfg.p) {
    cx.check_degree(*cfg.p);
    tables.push_back(cx.spectrum(*cfg.p));
  } else {
    for (int p = 0; p <= cx.generators(); ++p) tables.push_back(cx.spectrum(p));
  }
  Output o;
  o.data = json::array();
  std::ostringstream t;
  t << "degree  eigenvalue  multiplicity\n";
  for (const auto& tab : tables) {
    o.data.push_back(to_json(tab));
    for (const auto& e : tab.entries) t << "  " << tab.degree << "     " << to_string(e.eigenvalue) << "     " << e.multiplicity << "\n";
  }
  if (cfg.p) o.data = o.data[0];
  o.csv = spectrum_csv(tables);
  o.table = t.str();
  return o;
}

inline Output split_cmd(const RunConfig& cfg) {
  auto g = load_algebra(cfg);
  auto phi = parse_form(cfg.form.empty() ? "e1" : cfg.form, generator_names(g.dim(), false));
  auto r = split_pullback(g, phi);
  Output o;
  o.data = to_json(r);
  o.csv = flat_csv({{"lambda", to_string(r.lambda)},
                    {"lambda1", to_string(r.lambda1)},
                    {"lambda2", to_string(r.lambda2)},
                    {"phi1", form_string(r.phi1, generator_names(2 * g.dim(), true))},
                    {"phi2", form_string(r.phi2, generator_names(2 * g.dim(), true))},
                    {"verified", r.verified()}});
  auto names = generator_names(2 * g.dim(), true);
  std::ostringstream t;
  t << "lambda " << to_string(r.lambda) << "\n"
    << "  " << to_string(r.lambda1) << ": " << form_string(r.phi1, names) << (r.phi1_verified ? "" : "  (not verified)") << "\n"
    << "  " << to_string(r.lambda2) << ": " << form_string(r.phi2, names) << (r.phi2_verified ? "" : "  (not verified)") << "\n"
    << "sum equals m^*phi: " << yes(r.sum_matches_pullback) << "\n";
  o.table = t.str();
  o.code = r.verified() ? kOk : kFailed;
  return o;
}

/// Variable names of one group factor: x1..x4 on S^3, c and s on S^1.
inline std::vector<std::string> function_names(const SphereLayout& layout) {
  std::vector<std::string> names;
  for (const auto& s : layout) {
    if (s.ambient == 4)
      for (int i = 1; i <= 4; ++i) names.push_back("x" + std::to_string(i));
    else
      names.insert(names.end(), {"c", "s"});
  }
  return names;
}

inline Output mu_cmd(const RunConfig& cfg) {
  auto g = load_algebra(cfg);
  if (cfg.factor < 1 || cfg.factor > static_cast<int>(g.factors().size()))
    throw std::invalid_argument("--factor must be between 1 and " + std::to_string(g.factors().size()));
  if (cfg.form.empty() == cfg.function.empty()) throw std::invalid_argument("give exactly one of --form and --function");
  const auto b = static_cast<std::size_t>(cfg.factor - 1);
  auto src = space_for_group(g);
  const auto& blk = src->block(b);
  const int nv = layout_variables(blk.spheres);
  Piece piece = cfg.function.empty()
                    ? Piece::form_piece(parse_form(cfg.form, generator_names(blk.complex.generators(), false)), nv)
                    : Piece::function(parse_polynomial(cfg.function, function_names(blk.spheres)));
  auto f = single_piece(src, b, std::move(piece));
  auto r = mu_count(cfg.pullback ? pullback(f, space_for_product(g)) : f);
  Output o;
  o.data = to_json(r);
  o.csv = fourier_csv(r);
  std::ostringstream t;
  t << "mu " << r.mu << "\n";
  for (const auto& e : r.entries) t << "  " << to_string(e.lambda) << "  |pi|^2 = " << to_string(e.norm_sq) << "\n";
  o.table = t.str();
  return o;
}

inline Output harmonic_cmd(const RunConfig& cfg) {
  auto g = load_algebra(cfg);
  auto r = harmonic_test(g, parse_form(cfg.form.empty() ? "e1" : cfg.form, generator_names(g.dim(), false)));
  Output o;
  o.data = to_json(r);
  o.csv = flat_csv(o.data);
  o.table = "harmonic on G: " + yes(r.phi_harmonic) + "\npullback harmonic on GxG: " + yes(r.pullback_harmonic) +
            "\nin wedge of harmonic 1-forms: " + yes(r.in_wedge_e0) + "\n";
  return o;
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_rational(part));
  return out;
}

inline Output thm14_cmd(const RunConfig& cfg) {
  Thm14Config c;
  c.mu0 = cfg.mu0;
  c.p = cfg.p.value_or(1);
  c.t = parse_rational_list(cfg.t);
  c.allow_large = cfg.allow_large;
  auto r = run_thm14(c);
  Output o;
  o.data = to_json(r);
  o.csv = flat_csv(o.data);
  std::ostringstream t;
  t << (r.passed ? "PASS" : "FAIL") << "  mu0=" << r.mu0 << " p=" << r.p << " mu=" << r.mu << "\n"
    << "  predicted " << acceptance::list(r.predicted) << "\n"
    << "  computed  " << acceptance::list(r.computed) << "\n"
    << "  t " << acceptance::list(r.t) << "  s " << acceptance::list(r.s) << "\n"
    << "  bound " << r.bound.get_str() << (r.bound_respected ? " respected" : " VIOLATED") << "\n";
  if (!r.passed) t << "  " << r.message << "\n";
  o.table = t.str();
  o.code = r.passed ? kOk : kFailed;
  return o;
}

inline Output bounds_cmd(const RunConfig& cfg) {
  if (cfg.dimE.empty()) throw std::invalid_argument("--dimE is required");
  BoundInput in{cfg.n, cfg.p.value_or(0), Integer(cfg.dimE, 10), Integer(cfg.dimH.empty() ? cfg.dimE : cfg.dimH, 10)};
  auto r = compute_bounds(in);
  Output o;
  o.data = to_json(r);
  o.csv = flat_csv(o.data);
  o.table = "lemma_3_1  C(n,p) dimH            = " + r.lemma_3_1.get_str() + "\nthm_1_2    C(2n,p) dimE           = " +
            r.thm_1_2.get_str() + "\nthm_1_6    C(2n,p)^2 C(n,p)^2 dimE^4 = " + r.thm_1_6.get_str() + "\n";
  return o;
}

inline Output demo_cmd() {
  auto results = run_acceptance();
  Output o;
  o.data = json::array();
  o.csv = "criterion,name,passed,detail\n";
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    o.data.push_back({{"criterion", r.id}, {"detail", r.detail}, {"name", r.name}, {"passed", r.passed}});
    o.table += format_criterion(r) + "\n";
    o.csv += std::to_string(r.id) + "," + r.name + "," + yes(r.passed) + ",\"" + r.detail + "\"\n";
  }
  o.table += all ? "all criteria pass\n" : "SOME CRITERIA FAIL\n";
  o.code = all ? kOk : kFailed;
  return o;
}

inline Output dispatch(const RunConfig& cfg) {
  if (cfg.command == "validate") return validate_cmd(cfg);
  if (cfg.command == "spectrum") return spectrum_cmd(cfg);
  if (cfg.command == "split") return split_cmd(cfg);
  if (cfg.command == "mu") return mu_cmd(cfg);
  if (cfg.command == "harmonic") return harmonic_cmd(cfg);
  if (cfg.command == "thm14") return thm14_cmd(cfg);
  if (cfg.command == "bounds") return bounds_cmd(cfg);
  if (cfg.command == "demo") return demo_cmd();
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace cli

/// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Exact spectra of invariant forms on compact Lie groups", "lie-spectra"};
  app.require_subcommand(0, 1);
  bool demo_flag = false;
  app.add_flag("--demo", demo_flag, "Run every acceptance criterion and print a pass/fail matrix");

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", cfg.out, "Write output to FILE instead of stdout");
  };
  auto with_spec = [&](CLI::App* sub) {
    sub->add_option("--spec", cfg.spec, "GroupSpec JSON file, or inline JSON")->required();
    common(sub);
  };

  auto* validate_app = app.add_subcommand("validate", "Check antisymmetry, Jacobi and positivity of a Lie algebra");
  with_spec(validate_app);
  auto* spectrum_app = app.add_subcommand("spectrum", "Exact Laplace spectrum of invariant p-forms");
  with_spec(spectrum_app);
  spectrum_app->add_option("--p", cfg.p, "Form degree (all degrees if omitted)");
  spectrum_app->add_flag("--tilde", cfg.tilde, "Use the invariant complex on G x G");
  auto* split_app = app.add_subcommand("split", "Split the pullback of an invariant 1-form into its two eigenparts");
  with_spec(split_app);
  split_app->add_option("--form", cfg.form, "1-form such as \"e1\" or \"e1 - 2*e3\"");
  auto* mu_app = app.add_subcommand("mu", "Fourier eigenvalues of the pullback of a function or invariant form");
  with_spec(mu_app);
  mu_app->add_option("--factor", cfg.factor, "1-based group factor holding the input");
  mu_app->add_option("--form", cfg.form, "Invariant form on the factor, e.g. \"e1^e2\"");
  mu_app->add_option("--function", cfg.function, "Polynomial on the factor: x1..x4 on S^3, c and s on S^1");
  mu_app->add_flag("--no-pullback{false}", cfg.pullback, "Decompose on G itself");
  auto* harmonic_app = app.add_subcommand("harmonic", "Harmonicity of an invariant form and of its pullback");
  with_spec(harmonic_app);
  harmonic_app->add_option("--form", cfg.form, "Invariant form, e.g. \"e1^e2^e3\"");
  auto* thm14_app = app.add_subcommand("thm14", "Build and verify an eigenform with prescribed Fourier support size");
  common(thm14_app);
  thm14_app->add_option("--mu0", cfg.mu0, "Target number of eigenvalues")->required();
  thm14_app->add_option("--t", cfg.t, "Comma-separated t values in (0,1), e.g. \"1/3,2/3\"");
  thm14_app->add_option("--p", cfg.p, "Form degree (p-1 circle factors are appended)");
  thm14_app->add_flag("--allow-large", cfg.allow_large, "Lift the limit of two factor pairs");
  auto* bounds_app = app.add_subcommand("bounds", "Combinatorial bounds on the number of Fourier eigenvalues");
  common(bounds_app);
  bounds_app->add_option("--n", cfg.n, "dim G")->required();
  bounds_app->add_option("--p", cfg.p, "Form degree")->required();
  bounds_app->add_option("--dimE", cfg.dimE, "Eigenspace dimension or lower bound")->required();
  bounds_app->add_option("--dimH", cfg.dimH, "Invariant subspace dimension (defaults to dimE)");
  auto* demo_app = app.add_subcommand("demo", "Run every acceptance criterion");
  common(demo_app);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lie-spectra: " << e.what() << "\n";
    return kUsage;
  }
  if (demo_flag) cfg.command = "demo";
  else if (!app.get_subcommands().empty()) cfg.command = app.get_subcommands().front()->get_name();
  else {
    err << "lie-spectra: a command is required\n" << app.help();
    return kUsage;
  }

  cli::Output o;
  try {
    o = cli::dispatch(cfg);
  } catch (const std::domain_error& e) {
    err << "lie-spectra: verification failed: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    err << "lie-spectra: " << e.what() << "\n";
    return kUsage;
  }

  std::string text = cfg.format == "json" ? o.data.dump(2) + "\n" : cfg.format == "csv" ? o.csv : o.table;
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "lie-spectra: cannot write '" << cfg.out << "'\n";
      return kUsage;
    }
    f << text;
  }
  return o.code;
}

}  // namespace liespectra
