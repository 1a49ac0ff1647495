#pragma once

#include <string>
#include <vector>

#include "rbl/common.hpp"
#include "rbl/point.hpp"
#include "rbl/rotation.hpp"

namespace rbl {

// One monomial correction: adds coeff * z^exponents to coordinate `target`.
// The total degree (sum of exponents) must be at least GermSpec::l.
struct PerturbationTerm {
  int target = 1;                 // 1-based coordinate index
  cplx coeff{0.0, 0.0};
  std::vector<int> exponents;     // length k, entries >= 0

  int degree() const;
};

// A germ fixing the origin: the resonant model map plus optional
// higher-order corrections of order >= l.
struct GermSpec {
  int k = 2;
  std::vector<RotationNumber> alphas;  // size k
  int l = 15;                          // perturbation order bound
  std::vector<PerturbationTerm> perturbation;

  // Cached by finalize().
  std::vector<cplx> lambdas;  // e^{2 pi i alpha_j}
  double inv_k = 0.5;

  bool has_perturbation() const { return !perturbation.empty(); }

  // Validates invariants and fills the caches. Throws Error("config-invalid"):
  //  - k in [2, kMaxDim], alphas.size() == k
  //  - every term: target in [1,k], exponents length k, degree >= l
  //  - l >= 4 and default_beta * (l + 1) >= 4, so the perturbed orbit
  //    estimates used downstream are valid with the default basin aperture
  void finalize();
};

// The unperturbed model step: z_j -> lambda_j z_j (1 - u/k), u = prod z_j.
ComplexPoint eval_model(const GermSpec& spec, const ComplexPoint& p);

// Full germ step: model plus the perturbation monomials.
ComplexPoint eval(const GermSpec& spec, const ComplexPoint& p);

// --- Built-in examples -----------------------------------------------------

GermSpec default_germ_k2();         // golden + completing rotation, no terms
GermSpec default_germ_k3();         // golden, silver, completing rotation
GermSpec default_germ_perturbed();  // k=2 with two order-15 corrections

// --- Config text ------------------------------------------------------------
//
// Line-oriented format:
//   dimension <k>
//   alphas <tok_1> ... <tok_k>
//   order <l>
//   perturb <target> <re> <im> <e_1> ... <e_k>     (repeatable)
// '#' starts a comment; blank lines ignored.

GermSpec parse_germ_config(const std::string& text);
std::string germ_config_text(const GermSpec& spec);
GermSpec load_germ_file(const std::string& path);

// --- Local inversion ---------------------------------------------------------

// Newton preimage of `target` under one germ step, seeded at `guess`.
// Throws Error("no-preimage") if the iteration fails to converge.
ComplexPoint germ_preimage(const GermSpec& spec, const ComplexPoint& target,
                           const ComplexPoint& guess);

}  // namespace rbl
