#include "rbl/regions.hpp"

#include <cmath>

#include "rbl/parallel.hpp"
#include "rbl/rng.hpp"

namespace rbl {

void validate(const SectorParams& s) {
  if (!(s.R > 0.0)) throw Error("config-invalid", "sector needs R > 0");
  if (!(s.theta > 0.0 && s.theta < defaults::kPi / 2.0)) {
    throw Error("config-invalid", "sector needs 0 < theta < pi/2");
  }
}

void validate(const BasinParams& bp) {
  if (bp.k < 2 || bp.k > kMaxDim) {
    throw Error("config-invalid", "basin dimension out of range");
  }
  if (!(bp.beta > 0.0 && bp.beta < 1.0 / bp.k)) {
    throw Error("config-invalid", "wedge exponent must lie in (0, 1/k)");
  }
  validate(bp.sector);
}

BasinParams default_basin(int k) {
  BasinParams bp;
  bp.k = k;
  bp.beta = defaults::kBeta;
  bp.sector.R = defaults::kRMin;
  bp.sector.theta = defaults::kTheta;
  validate(bp);
  return bp;
}

bool in_sector_S(cplx zeta, const SectorParams& s) {
  const double re = zeta.real(), im = zeta.imag();
  const double n2 = re * re + im * im;
  if (!(n2 > 0.0)) return false;
  // |zeta - 1/(2R)| < 1/(2R)  <=>  R|zeta|^2 < Re zeta
  if (!(s.R * n2 < re)) return false;
  // |Arg zeta| < theta  <=>  |zeta| cos(theta) < Re zeta  (theta < pi/2)
  return std::cos(s.theta) * std::sqrt(n2) < re;
}

bool in_W(const ComplexPoint& p, double beta) {
  const cplx u = resonant_product(p);
  const double u2 = std::norm(u);
  if (!(u2 > 0.0)) return false;
  const double bound2 = std::pow(u2, beta);  // (|u|^beta)^2
  for (int j = 0; j < p.k; ++j) {
    if (!(std::norm(p.c[j]) < bound2)) return false;
  }
  return true;
}

bool in_B(const ComplexPoint& p, const BasinParams& bp) {
  if (p.k != bp.k) throw Error("dimension-mismatch", "point vs basin params");
  const cplx u = resonant_product(p);
  const double u2 = std::norm(u);
  if (!(u2 > 0.0)) return false;
  const double re = u.real();
  if (!(bp.sector.R * u2 < re)) return false;
  if (!(std::cos(bp.sector.theta) * std::sqrt(u2) < re)) return false;
  const double bound2 = std::pow(u2, bp.beta);
  for (int j = 0; j < p.k; ++j) {
    if (!(std::norm(p.c[j]) < bound2)) return false;
  }
  return true;
}

ComplexPoint phi_coordinates(const ComplexPoint& p) {
  ComplexPoint q(p.k);
  q.c[0] = resonant_product(p);
  cplx suffix = p.c[p.k - 1];
  for (int j = p.k - 1; j >= 1; --j) {
    q.c[j] = suffix;                       // y_{j+1} = z_{j+1}...z_k at slot j
    if (j >= 2) suffix = p.c[j - 1] * suffix;
  }
  // Slots: q[0] = u, q[j] = y_{j+1} for j = 1..k-1.
  // Loop above writes q[k-1] = z_k, then q[k-2] = z_{k-1} z_k, ...
  return q;
}

ComplexPoint phi_inverse(const ComplexPoint& q) {
  const int k = q.k;
  for (int j = 1; j < k; ++j) {
    if (q.c[j] == cplx(0.0, 0.0)) {
      throw Error("domain-error", "fibered coordinates need nonzero y_j");
    }
  }
  ComplexPoint p(k);
  p.c[0] = q.c[0] / q.c[1];               // z_1 = u / y_2
  for (int j = 1; j < k - 1; ++j) p.c[j] = q.c[j] / q.c[j + 1];
  p.c[k - 1] = q.c[k - 1];                // z_k = y_k
  return p;
}

namespace {

ComplexPoint draw_candidate(const BasinParams& bp, SplitMix64& rng) {
  const int k = bp.k;
  // u in log-polar coordinates strictly inside the sector.
  const double phi = rng.uniform(-0.999 * bp.sector.theta,
                                 0.999 * bp.sector.theta);
  const double rmax = std::cos(phi) / bp.sector.R;
  const double f = std::exp(rng.uniform(std::log(1.0 / 64.0), std::log(0.9)));
  const double r = f * rmax;
  const double logr = std::log(r);
  // Coordinate moduli r^{t_j} with t_j > beta, sum t_j = 1: Dirichlet mix.
  double g[kMaxDim], gsum = 0.0;
  for (int j = 0; j < k; ++j) {
    g[j] = -std::log(1.0 - rng.uniform01());  // Exp(1)
    gsum += g[j];
  }
  const double slack = 1.0 - k * bp.beta;
  // Phases uniform, last one closing the product argument.
  double theta_sum = 0.0;
  ComplexPoint p(k);
  for (int j = 0; j < k; ++j) {
    const double t = bp.beta + slack * (g[j] / gsum);
    const double mod = std::exp(t * logr);
    double ang;
    if (j < k - 1) {
      ang = rng.uniform(-defaults::kPi, defaults::kPi);
      theta_sum += ang;
    } else {
      ang = phi - theta_sum;
    }
    p.c[j] = std::polar(mod, ang);
  }
  return p;
}

}  // namespace

std::vector<ComplexPoint> sample_B(const BasinParams& bp, int n,
                                   unsigned long long seed) {
  validate(bp);
  if (n < 1) throw Error("config-invalid", "need n >= 1 samples");
  if (1.0 - bp.k * bp.beta < 1e-12) {
    throw Error("rejection-overflow",
                "wedge exponent too close to 1/k: no interior room");
  }
  std::vector<ComplexPoint> out(static_cast<size_t>(n));
  par::parallel_for(static_cast<size_t>(n), [&](size_t i) {
    SplitMix64 rng = stream_rng(seed, i);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      ComplexPoint cand = draw_candidate(bp, rng);
      if (in_B(cand, bp)) {
        out[i] = cand;
        return;
      }
    }
    throw Error("rejection-overflow",
                "could not place a sample inside the basin");
  });
  return out;
}

CalibrationReport calibrate_R_report(const GermSpec& spec, double beta,
                                     double theta, int samples, long horizon,
                                     unsigned long long seed) {
  if (spec.has_perturbation() && !(beta * (spec.l + 1) >= 4.0)) {
    throw Error("config-invalid",
                "perturbed germ needs beta*(order+1) >= 4 for calibration");
  }
  if (samples < 1) throw Error("config-invalid", "need samples >= 1");
  if (horizon < 0) throw Error("config-invalid", "horizon must be >= 0");
  CalibrationReport rep;
  rep.beta = beta;
  rep.samples = samples;
  rep.horizon = horizon;
  rep.seed = seed;
  for (int j = 0; defaults::kRMin * static_cast<double>(1 << j) <=
                  defaults::kRMax;
       ++j) {
    const double R = defaults::kRMin * static_cast<double>(1 << j);
    BasinParams bp;
    bp.k = spec.k;
    bp.beta = beta;
    bp.sector = {R, theta};
    const auto pts = sample_B(bp, samples, mix_key(seed, 1000 + static_cast<unsigned>(j)));
    bool invariant = true;
    for (size_t i = 0; i < pts.size() && invariant; ++i) {
      ComplexPoint p = pts[i];
      for (long s = 0; s < horizon; ++s) {
        p = eval(spec, p);
        if (!in_B(p, bp)) {
          invariant = false;
          break;
        }
      }
    }
    if (invariant) {
      rep.sector = bp.sector;
      return rep;
    }
    rep.rejected_R.push_back(R);
  }
  throw Error("calibration-failed",
              "no candidate R up to the cap kept all orbits inside");
}

SectorParams calibrate_R(const GermSpec& spec, double beta, double theta,
                         int samples, long horizon, unsigned long long seed) {
  return calibrate_R_report(spec, beta, theta, samples, horizon, seed).sector;
}

}  // namespace rbl
