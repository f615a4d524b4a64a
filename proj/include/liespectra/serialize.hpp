#pragma once

// JSON and CSV encodings of every report. Rationals are canonical strings,
// object keys are sorted, so equal values dump to identical bytes.

#include "constructions.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>

namespace liespectra {

using nlohmann::json;

inline json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(rational_json(q));
  return a;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

inline json integer_json(const Integer& z) { return z.get_str(); }
inline Integer integer_from_json(const json& j) {
  if (!j.is_string()) throw std::invalid_argument("expected an integer string, got " + j.dump());
  return Integer(j.get<std::string>(), 10);
}

// ---------------------------------------------------------------------------
// Forms: {"coeffs": {"1,3": "2/3"}, "degree": 2, "dim": 3}, 1-based indices.

inline std::string index_key(MultiIndex idx) {
  std::string s;
  for (int i : idx.positions()) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
  return s;
}

inline MultiIndex index_from_key(const std::string& key) {
  std::vector<int> idx;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("malformed multi-index '" + key + "'");
    idx.push_back(std::stoi(part));
  }
  return MultiIndex::from_indices(idx);
}

inline json to_json(const Form& f) {
  json c = json::object();
  for (const auto& [idx, q] : f.coefficients()) c[index_key(idx)] = rational_json(q);
  return {{"coeffs", c}, {"degree", f.degree()}, {"dim", f.dim()}};
}

inline Form form_from_json(const json& j) {
  Form f(j.at("dim").get<int>(), j.at("degree").get<int>());
  for (const auto& [key, v] : j.at("coeffs").items()) {
    auto idx = index_from_key(key);
    if (idx.degree() != f.degree()) throw std::invalid_argument("multi-index '" + key + "' has the wrong degree");
    if (!idx.positions().empty() && idx.positions().back() >= f.dim())
      throw std::invalid_argument("multi-index '" + key + "' exceeds the form dimension");
    f.add(idx, rational_from_json(v));
  }
  return f;
}

/// Generator names for display: e1..en on G, P1.i / P2.i on the tilde complex.
inline std::vector<std::string> generator_names(int n, bool tilde) {
  std::vector<std::string> out;
  if (!tilde)
    for (int i = 1; i <= n; ++i) out.push_back("e" + std::to_string(i));
  else
    for (int c = 1; c <= 2; ++c)
      for (int i = 1; i <= n / 2; ++i) out.push_back("P" + std::to_string(c) + "." + std::to_string(i));
  return out;
}

inline std::string form_string(const Form& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [idx, q] : f.coefficients()) {
    std::string mono;
    for (int i : idx.positions()) mono += (mono.empty() ? "" : "^") + names.at(i);
    std::string c = to_string(abs(q));
    bool neg = q < 0;
    std::string term = mono.empty() ? c : (c == "1" ? mono : c + "*" + mono);
    s += s.empty() ? (neg ? "-" : "") + term : (neg ? " - " : " + ") + term;
  }
  return s;
}

/// Parses "2*e1^e2 - e3", "1/2*P1.1 + P2.3" or a constant, given generator names.
inline Form parse_form(const std::string& text, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  auto fail = [&](const std::string& why) { throw std::invalid_argument("cannot parse form '" + text + "': " + why); };
  std::vector<std::pair<Rational, std::vector<int>>> terms;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  };
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    Rational sign(1);
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') sign = -1;
      ++pos;
      skip();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    std::size_t end = text.find_first_of("+-", pos);
    std::string body = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? text.size() : end;
    while (!body.empty() && body.back() == ' ') body.pop_back();
    if (body.empty()) fail("empty term");
    Rational coeff = sign;
    std::string mono = body;
    if (auto star = body.find('*'); star != std::string::npos) {
      coeff *= parse_rational(body.substr(0, star));
      mono = body.substr(star + 1);
    } else if (body.find_first_not_of("0123456789/") == std::string::npos) {
      coeff *= parse_rational(body);
      mono.clear();
    }
    std::vector<int> idx;
    std::stringstream ss(mono);
    std::string g;
    while (!mono.empty() && std::getline(ss, g, '^')) {
      while (!g.empty() && g.front() == ' ') g.erase(g.begin());
      while (!g.empty() && g.back() == ' ') g.pop_back();
      auto it = std::find(names.begin(), names.end(), g);
      if (it == names.end()) fail("unknown generator '" + g + "'");
      idx.push_back(static_cast<int>(it - names.begin()));
    }
    terms.push_back({coeff, idx});
  }
  if (terms.empty()) fail("empty input");
  const int degree = static_cast<int>(terms.front().second.size());
  Form out(n, degree);
  for (const auto& [c, idx] : terms) {
    if (static_cast<int>(idx.size()) != degree) fail("terms have different degrees");
    Form t = Form::constant(n, c);
    for (int i : idx) t = wedge(t, Form::generator(n, i));
    out += t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectra.

inline json to_json(const SpectrumTable& t) {
  json e = json::array();
  for (const auto& x : t.entries) e.push_back({{"eigenvalue", rational_json(x.eigenvalue)}, {"multiplicity", x.multiplicity}});
  return {{"degree", t.degree}, {"entries", e}};
}

/// Eigenbases are not serialized; the parsed table carries values and multiplicities.
inline SpectrumTable spectrum_from_json(const json& j) {
  SpectrumTable t;
  t.degree = j.at("degree").get<int>();
  for (const auto& e : j.at("entries"))
    t.entries.push_back({rational_from_json(e.at("eigenvalue")), e.at("multiplicity").get<int>(), {}});
  return t;
}

inline std::string spectrum_csv(const std::vector<SpectrumTable>& tables) {
  std::string s = "degree,eigenvalue,multiplicity\n";
  for (const auto& t : tables)
    for (const auto& e : t.entries)
      s += std::to_string(t.degree) + "," + to_string(e.eigenvalue) + "," + std::to_string(e.multiplicity) + "\n";
  return s;
}

inline std::vector<SpectrumTable> spectrum_from_csv(const std::string& csv) {
  std::stringstream ss(csv);
  std::string line;
  std::getline(ss, line);
  if (line != "degree,eigenvalue,multiplicity") throw std::invalid_argument("unexpected spectrum CSV header");
  std::vector<SpectrumTable> out;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string d, e, m;
    if (!std::getline(ls, d, ',') || !std::getline(ls, e, ',') || !std::getline(ls, m))
      throw std::invalid_argument("malformed spectrum CSV row '" + line + "'");
    int degree = std::stoi(d);
    if (out.empty() || out.back().degree != degree) out.push_back({degree, {}});
    out.back().entries.push_back({parse_rational(e), std::stoi(m), {}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fourier reports.

inline json to_json(const FourierReport& r) {
  json e = json::array();
  for (const auto& x : r.entries) e.push_back({{"lambda", rational_json(x.lambda)}, {"norm_sq", rational_json(x.norm_sq)}});
  return {{"entries", e}, {"mu", r.mu}};
}

/// input_norm_sq is not serialized; the parsed report restores it as the sum
/// of the component norms.
inline FourierReport fourier_from_json(const json& j) {
  FourierReport r;
  for (const auto& e : j.at("entries")) {
    r.entries.push_back({rational_from_json(e.at("lambda")), rational_from_json(e.at("norm_sq"))});
    if (r.entries.back().norm_sq < 0) throw std::invalid_argument("negative projection norm");
    r.input_norm_sq += r.entries.back().norm_sq;
  }
  r.mu = j.at("mu").get<int>();
  return r;
}

inline std::string fourier_csv(const FourierReport& r) {
  std::string s = "lambda,norm_sq\n";
  for (const auto& e : r.entries) s += to_string(e.lambda) + "," + to_string(e.norm_sq) + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Validation, split, harmonic, theorem 1.1, construction and bound reports.

inline json to_json(const ValidationReport& r) {
  json c = json::array();
  for (const auto& x : r.checks) c.push_back({{"name", x.name}, {"passed", x.passed}, {"witness", x.witness}});
  return {{"checks", c}, {"ok", r.ok()}};
}

inline ValidationReport validation_from_json(const json& j) {
  ValidationReport r;
  for (const auto& c : j.at("checks"))
    r.checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(), c.at("witness").get<std::string>()});
  return r;
}

inline json to_json(const SplitResult& r) {
  return {{"lambda", rational_json(r.lambda)},
          {"lambda1", rational_json(r.lambda1)},
          {"lambda2", rational_json(r.lambda2)},
          {"phi1", to_json(r.phi1)},
          {"phi2", to_json(r.phi2)},
          {"phi1_verified", r.phi1_verified},
          {"phi2_verified", r.phi2_verified},
          {"sum_matches_pullback", r.sum_matches_pullback},
          {"verified", r.verified()}};
}

inline SplitResult split_from_json(const json& j) {
  SplitResult r;
  r.lambda = rational_from_json(j.at("lambda"));
  r.lambda1 = rational_from_json(j.at("lambda1"));
  r.lambda2 = rational_from_json(j.at("lambda2"));
  r.phi1 = form_from_json(j.at("phi1"));
  r.phi2 = form_from_json(j.at("phi2"));
  r.phi1_verified = j.at("phi1_verified").get<bool>();
  r.phi2_verified = j.at("phi2_verified").get<bool>();
  r.sum_matches_pullback = j.at("sum_matches_pullback").get<bool>();
  return r;
}

inline json to_json(const HarmonicTestResult& r) {
  return {{"in_wedge_e0", r.in_wedge_e0}, {"phi_harmonic", r.phi_harmonic}, {"pullback_harmonic", r.pullback_harmonic}};
}

inline HarmonicTestResult harmonic_from_json(const json& j) {
  return {j.at("phi_harmonic").get<bool>(), j.at("pullback_harmonic").get<bool>(), j.at("in_wedge_e0").get<bool>()};
}

inline json to_json(const Thm11Report& r) {
  return {{"component_eigenvalues", rationals_json(r.component_eigenvalues)},
          {"input_is_eigenfunction", r.input_is_eigenfunction},
          {"lambda", rational_json(r.lambda)},
          {"offending", r.offending},
          {"passed", r.passed}};
}

inline Thm11Report thm11_from_json(const json& j) {
  Thm11Report r;
  r.lambda = rational_from_json(j.at("lambda"));
  r.input_is_eigenfunction = j.at("input_is_eigenfunction").get<bool>();
  r.component_eigenvalues = rationals_from_json(j.at("component_eigenvalues"));
  r.offending = j.at("offending").get<std::string>();
  r.passed = j.at("passed").get<bool>();
  return r;
}

inline json to_json(const Thm14Report& r) {
  return {{"bound", integer_json(r.bound)},
          {"bound_respected", r.bound_respected},
          {"computed", rationals_json(r.computed)},
          {"constraint_holds", r.constraint_holds},
          {"eigenform_fourier", r.eigenform_fourier},
          {"eigenform_product_rule", r.eigenform_product_rule},
          {"message", r.message},
          {"mu", r.mu},
          {"mu0", r.mu0},
          {"p", r.p},
          {"parseval", r.parseval},
          {"passed", r.passed},
          {"predicted", rationals_json(r.predicted)},
          {"predictions_distinct", r.predictions_distinct},
          {"s", rationals_json(r.s)},
          {"t", rationals_json(r.t)}};
}

inline Thm14Report thm14_from_json(const json& j) {
  Thm14Report r;
  r.bound = integer_from_json(j.at("bound"));
  r.bound_respected = j.at("bound_respected").get<bool>();
  r.computed = rationals_from_json(j.at("computed"));
  r.constraint_holds = j.at("constraint_holds").get<bool>();
  r.eigenform_fourier = j.at("eigenform_fourier").get<bool>();
  r.eigenform_product_rule = j.at("eigenform_product_rule").get<bool>();
  r.message = j.at("message").get<std::string>();
  r.mu = j.at("mu").get<int>();
  r.mu0 = j.at("mu0").get<int>();
  r.p = j.at("p").get<int>();
  r.parseval = j.at("parseval").get<bool>();
  r.passed = j.at("passed").get<bool>();
  r.predicted = rationals_from_json(j.at("predicted"));
  r.predictions_distinct = j.at("predictions_distinct").get<bool>();
  r.s = rationals_from_json(j.at("s"));
  r.t = rationals_from_json(j.at("t"));
  return r;
}

struct BoundsReport {
  BoundInput input;
  Integer lemma_3_1, thm_1_2, thm_1_6;
};

/// The two degree-n bounds need p <= n; callers with n < p <= 2n get only thm_1_2.
inline BoundsReport compute_bounds(const BoundInput& in) {
  BoundsReport r{in, 0, 0, 0};
  r.thm_1_2 = bound_thm_1_2(in.n, in.p, in.dimE);
  if (in.p <= in.n) {
    r.lemma_3_1 = bound_lemma_3_1(in.n, in.p, in.dimH);
    r.thm_1_6 = bound_thm_1_6(in.n, in.p, in.dimE);
  }
  return r;
}

inline json to_json(const BoundsReport& r) {
  return {{"dimE", integer_json(r.input.dimE)},
          {"dimH", integer_json(r.input.dimH)},
          {"lemma_3_1", integer_json(r.lemma_3_1)},
          {"n", r.input.n},
          {"p", r.input.p},
          {"thm_1_2", integer_json(r.thm_1_2)},
          {"thm_1_6", integer_json(r.thm_1_6)}};
}

inline BoundsReport bounds_from_json(const json& j) {
  BoundsReport r;
  r.input.n = j.at("n").get<long>();
  r.input.p = j.at("p").get<long>();
  r.input.dimE = integer_from_json(j.at("dimE"));
  r.input.dimH = integer_from_json(j.at("dimH"));
  r.lemma_3_1 = integer_from_json(j.at("lemma_3_1"));
  r.thm_1_2 = integer_from_json(j.at("thm_1_2"));
  r.thm_1_6 = integer_from_json(j.at("thm_1_6"));
  return r;
}

inline json to_json(const DegreeChecks& c) {
  return {{"commutes_with_d", c.commutes_with_d},
          {"commutes_with_delta", c.commutes_with_delta},
          {"d_squared_zero", c.d_squared_zero},
          {"degree", c.degree},
          {"delta_adjoint", c.delta_adjoint},
          {"dimension", c.dimension},
          {"hodge_decomposition", c.hodge_decomposition},
          {"kernel_dimension", c.kernel_dimension},
          {"laplacian_psd", c.laplacian_psd},
          {"laplacian_self_adjoint", c.laplacian_self_adjoint},
          {"rank_d_in", c.rank_d_in},
          {"rank_delta_in", c.rank_delta_in}};
}

/// Flat key,value CSV for a JSON object whose values are scalars or arrays.
inline std::string flat_csv(const json& j) {
  std::string s = "key,value\n";
  for (const auto& [k, v] : j.items()) {
    std::string val;
    if (v.is_string())
      val = v.get<std::string>();
    else if (v.is_array()) {
      for (const auto& e : v) val += (val.empty() ? "" : ";") + (e.is_string() ? e.get<std::string>() : e.dump());
    } else
      val = v.dump();
    if (val.find_first_of(",\"\n") != std::string::npos) {
      std::string q = "\"";
      for (char c : val) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      val = q + "\"";
    }
    s += k + "," + val + "\n";
  }
  return s;
}

}  // namespace liespectra
