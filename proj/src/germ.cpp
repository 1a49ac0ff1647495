#include "rbl/germ.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rbl/detail/linsolve.hpp"
#include "rbl/detail/step_ops.hpp"

namespace rbl {

namespace {

void to_raw(const ComplexPoint& p, detail::D2* out) {
  for (int j = 0; j < p.k; ++j) out[j] = {p.c[j].real(), p.c[j].imag()};
}

ComplexPoint from_raw(const detail::D2* z, int k) {
  ComplexPoint p(k);
  for (int j = 0; j < k; ++j) p.c[j] = cplx(z[j].re, z[j].im);
  return p;
}

}  // namespace

int PerturbationTerm::degree() const {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

void GermSpec::finalize() {
  if (k < 2 || k > kMaxDim) {
    throw Error("config-invalid", "dimension must be between 2 and " +
                                      std::to_string(kMaxDim));
  }
  if (static_cast<int>(alphas.size()) != k) {
    throw Error("config-invalid", "need exactly one rotation number per "
                                  "coordinate");
  }
  int completes = 0;
  for (const auto& a : alphas) {
    if (a.kind == RotationNumber::Kind::complete) ++completes;
  }
  if (completes > 1) {
    throw Error("config-invalid",
                "at most one completing rotation entry per tuple");
  }
  if (l < 4) {
    throw Error("config-invalid", "correction order bound must be >= 4");
  }
  if (defaults::kBeta * (l + 1) < 4.0) {
    throw Error("config-invalid",
                "correction order bound too small for the default wedge "
                "exponent: need beta*(l+1) >= 4");
  }
  for (const auto& t : perturbation) {
    if (t.target < 1 || t.target > k) {
      throw Error("config-invalid", "correction term targets coordinate " +
                                        std::to_string(t.target) +
                                        " outside 1.." + std::to_string(k));
    }
    if (static_cast<int>(t.exponents.size()) != k) {
      throw Error("config-invalid",
                  "correction term needs one exponent per coordinate");
    }
    for (int e : t.exponents) {
      if (e < 0) throw Error("config-invalid", "negative exponent");
    }
    if (t.degree() < l) {
      throw Error("config-invalid",
                  "correction term degree " + std::to_string(t.degree()) +
                      " below the order bound " + std::to_string(l));
    }
  }
  lambdas.resize(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) lambdas[static_cast<size_t>(j)] = lambda_value(alphas, j);
  inv_k = 1.0 / static_cast<double>(k);
}

ComplexPoint eval_model(const GermSpec& spec, const ComplexPoint& p) {
  if (p.k != spec.k) throw Error("dimension-mismatch", "point vs germ");
  detail::D2 z[kMaxDim], lam[kMaxDim], out[kMaxDim];
  to_raw(p, z);
  for (int j = 0; j < spec.k; ++j) {
    lam[j] = {spec.lambdas[static_cast<size_t>(j)].real(),
              spec.lambdas[static_cast<size_t>(j)].imag()};
  }
  detail::model_step(z, lam, spec.k, spec.inv_k, out);
  return from_raw(out, spec.k);
}

ComplexPoint eval(const GermSpec& spec, const ComplexPoint& p) {
  if (p.k != spec.k) throw Error("dimension-mismatch", "point vs germ");
  detail::D2 z[kMaxDim], lam[kMaxDim], out[kMaxDim];
  to_raw(p, z);
  for (int j = 0; j < spec.k; ++j) {
    lam[j] = {spec.lambdas[static_cast<size_t>(j)].real(),
              spec.lambdas[static_cast<size_t>(j)].imag()};
  }
  detail::model_step(z, lam, spec.k, spec.inv_k, out);
  for (const auto& t : spec.perturbation) {
    const detail::D2 c = {t.coeff.real(), t.coeff.imag()};
    const detail::D2 m = detail::monomial(c, z, t.exponents.data(), spec.k);
    out[t.target - 1] = detail::cadd(out[t.target - 1], m);
  }
  return from_raw(out, spec.k);
}

GermSpec default_germ_k2() {
  GermSpec s;
  s.k = 2;
  s.alphas = {RotationNumber::golden(), RotationNumber::parse("complete")};
  s.l = 15;
  s.finalize();
  return s;
}

GermSpec default_germ_k3() {
  GermSpec s;
  s.k = 3;
  s.alphas = {RotationNumber::golden(), RotationNumber::silver(),
              RotationNumber::parse("complete")};
  s.l = 15;
  s.finalize();
  return s;
}

GermSpec default_germ_perturbed() {
  GermSpec s;
  s.k = 2;
  s.alphas = {RotationNumber::golden(), RotationNumber::parse("complete")};
  s.l = 15;
  s.perturbation.push_back({1, cplx(1e-3, 5e-4), {9, 6}});
  s.perturbation.push_back({2, cplx(-7e-4, 2e-4), {7, 8}});
  s.finalize();
  return s;
}

GermSpec parse_germ_config(const std::string& text) {
  GermSpec s;
  s.alphas.clear();
  s.perturbation.clear();
  bool saw_dim = false, saw_alphas = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& why) -> void {
      throw Error("config-invalid",
                  "line " + std::to_string(lineno) + ": " + why);
    };
    if (key == "dimension") {
      if (!(ls >> s.k)) fail("dimension needs an integer");
      saw_dim = true;
    } else if (key == "alphas") {
      std::string tok;
      while (ls >> tok) s.alphas.push_back(RotationNumber::parse(tok));
      saw_alphas = true;
    } else if (key == "order") {
      if (!(ls >> s.l)) fail("order needs an integer");
    } else if (key == "perturb") {
      PerturbationTerm t;
      double re = 0.0, im = 0.0;
      if (!(ls >> t.target >> re >> im)) fail("perturb needs target re im e...");
      t.coeff = cplx(re, im);
      int e = 0;
      while (ls >> e) t.exponents.push_back(e);
      s.perturbation.push_back(std::move(t));
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!saw_dim || !saw_alphas) {
    throw Error("config-invalid", "germ config needs dimension and alphas");
  }
  s.finalize();
  return s;
}

std::string germ_config_text(const GermSpec& spec) {
  std::ostringstream out;
  out << "dimension " << spec.k << "\n";
  out << "alphas";
  for (const auto& a : spec.alphas) out << ' ' << a.token();
  out << "\n";
  out << "order " << spec.l << "\n";
  char buf[64];
  for (const auto& t : spec.perturbation) {
    out << "perturb " << t.target;
    std::snprintf(buf, sizeof buf, " %.17g %.17g", t.coeff.real(),
                  t.coeff.imag());
    out << buf;
    for (int e : t.exponents) out << ' ' << e;
    out << "\n";
  }
  return out.str();
}

GermSpec load_germ_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot open germ config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_germ_config(buf.str());
}

namespace {

using detail::solve_linear;

// d/dz_i of the full step's j-th coordinate at z.
void jacobian(const GermSpec& spec, const ComplexPoint& p,
              cplx J[kMaxDim][kMaxDim]) {
  const int k = spec.k;
  // prod_except[i] = product of all coordinates but z_i
  cplx prefix[kMaxDim + 1], suffix[kMaxDim + 1];
  prefix[0] = cplx(1.0, 0.0);
  for (int j = 0; j < k; ++j) prefix[j + 1] = prefix[j] * p.c[j];
  suffix[k] = cplx(1.0, 0.0);
  for (int j = k - 1; j >= 0; --j) suffix[j] = suffix[j + 1] * p.c[j];
  const cplx u = prefix[k];
  const cplx f = cplx(1.0, 0.0) - u * spec.inv_k;
  for (int j = 0; j < k; ++j) {
    const cplx lam = spec.lambdas[static_cast<size_t>(j)];
    for (int i = 0; i < k; ++i) {
      const cplx prod_except_i = prefix[i] * suffix[i + 1];
      cplx v = -p.c[j] * prod_except_i * spec.inv_k;
      if (i == j) v += f;
      J[j][i] = lam * v;
    }
  }
  for (const auto& t : spec.perturbation) {
    const int j = t.target - 1;
    for (int i = 0; i < k; ++i) {
      if (t.exponents[static_cast<size_t>(i)] == 0) continue;
      cplx d = t.coeff * static_cast<double>(t.exponents[static_cast<size_t>(i)]);
      for (int m = 0; m < k; ++m) {
        int e = t.exponents[static_cast<size_t>(m)] - (m == i ? 1 : 0);
        for (int r = 0; r < e; ++r) d *= p.c[m];
      }
      J[j][i] += d;
    }
  }
}

}  // namespace

ComplexPoint germ_preimage(const GermSpec& spec, const ComplexPoint& target,
                           const ComplexPoint& guess) {
  if (target.k != spec.k || guess.k != spec.k) {
    throw Error("dimension-mismatch", "point vs germ");
  }
  ComplexPoint z = guess;
  const double scale = 1.0 + sup_norm(target);
  for (int it = 0; it < 60; ++it) {
    const ComplexPoint fz = eval(spec, z);
    cplx r[kMaxDim];
    double rnorm = 0.0;
    for (int j = 0; j < spec.k; ++j) {
      r[j] = target.c[j] - fz.c[j];
      rnorm = std::max(rnorm, std::abs(r[j]));
    }
    if (rnorm <= 1e-14 * scale) return z;
    cplx J[kMaxDim][kMaxDim], step[kMaxDim];
    jacobian(spec, z, J);
    solve_linear(spec.k, J, r, step);
    double snorm = 0.0;
    for (int j = 0; j < spec.k; ++j) {
      z.c[j] += step[j];
      snorm = std::max(snorm, std::abs(step[j]));
    }
    if (snorm <= 1e-15 * (1.0 + sup_norm(z))) {
      const ComplexPoint check = eval(spec, z);
      if (distance(check, target) <= 1e-12 * scale) return z;
    }
  }
  const ComplexPoint fz = eval(spec, z);
  if (distance(fz, target) <= 1e-10 * scale) return z;
  throw Error("no-preimage", "step inversion did not converge");
}

}  // namespace rbl
