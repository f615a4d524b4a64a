// Builds the mu0 = 1..4 eigenform instances, pulls each back under the group
// multiplication and prints the Fourier support next to the prediction.
#include <liespectra/constructions.hpp>
#include <liespectra/serialize.hpp>

#include <iostream>

using namespace liespectra;

namespace {
std::string join(const std::vector<Rational>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + to_string(x);
  return s;
}
}  // namespace

int main() {
  int failures = 0;
  for (int mu0 = 1; mu0 <= 4; ++mu0) {
    Thm14Config cfg;
    cfg.mu0 = mu0;
    auto inst = build_thm14_instance(cfg);
    std::cout << "mu0 = " << mu0 << "  G = ";
    for (std::size_t i = 0; i < inst.spec.factors.size(); ++i) {
      const auto& f = inst.spec.factors[i];
      std::cout << (i ? " x " : "") << (f.atom == Atom::circle ? "S1" : "S3") << "(" << to_string(f.scale) << ")";
    }
    std::cout << "\n  psi = " << inst.psi.terms().size() << " terms, Delta psi = " << to_string(inst.eigenvalue)
              << " psi\n";

    auto rep = mu_count(pullback(inst.psi, inst.product_space));
    std::cout << "  predicted " << join(inst.predicted) << "\n  computed  " << join(rep.support())
              << "\n  mu = " << rep.mu << " <= " << to_string(bound_thm_1_2(inst.g.dim(), cfg.p, inst.dimE_lower))
              << "\n";
    if (rep.support() != inst.predicted || rep.mu != mu0 ||
        !verify_thm_1_2_bound(inst.g.dim(), cfg.p, inst.dimE_lower, rep))
      ++failures;
  }

  // A single report in the CLI's JSON shape.
  Thm14Config two;
  two.t = {ratio(1, 2)};
  std::cout << to_json(run_thm14(two)).dump(2) << "\n";
  return failures == 0 ? 0 : 1;
}
