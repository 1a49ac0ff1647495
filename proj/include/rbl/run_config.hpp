#pragma once

#include <string>

#include "rbl/germ.hpp"
#include "rbl/regions.hpp"
#include "rbl/report.hpp"

namespace rbl {

// Shared run configuration for the CLI and the verification suites. Every
// tolerance must be strictly positive; validate() throws
// Error("config-invalid") otherwise. The seed and the hash of the canonical
// text below are stamped into every emitted report.
struct RunConfig {
  std::string germ_file;  // empty -> built-in dimension-2 default germ
  double beta = defaults::kBeta;
  double theta = defaults::kTheta;
  double R = defaults::kRMin;
  double tol_psi = defaults::kTolPsi;
  double tol_sigma = defaults::kTolSigma;
  double resonance_tol = defaults::kResonanceTol;
  double stagnation_tol = defaults::kStagnationTol;
  long horizon_classify = defaults::kHorizonClassify;
  long horizon_invariance = defaults::kHorizonInvariance;
  unsigned long long seed = defaults::kSeed;
  int threads = 0;                // 0 -> hardware default
  std::string out_dir = "reports";
  std::string format = "json";    // json | csv | pgm
};

// Throws Error("config-invalid") on any violated invariant (non-positive
// tolerance or horizon, unknown format, bad basin parameters).
void validate(const RunConfig& cfg);

// Reads a JSON config file. Recognized keys mirror the RunConfig fields:
// germ, beta, theta, R, tol_psi, tol_sigma, resonance_tol, stagnation_tol,
// horizon_classify, horizon_invariance, seed, threads, out, format.
// Unknown keys and wrong-typed values throw Error("config-invalid").
RunConfig load_run_config(const std::string& path);

// Canonical one-line serialization; equal configs hash equal, and any field
// change (including the germ file's content) changes the hash.
std::string canonical_text(const RunConfig& cfg);
std::string config_hash(const RunConfig& cfg);

// The germ this run acts on: parsed from germ_file when set, the built-in
// dimension-2 default otherwise.
GermSpec resolve_germ(const RunConfig& cfg);

// Basin parameters for a germ of dimension k under this config.
BasinParams basin_of(const RunConfig& cfg, int k);

// {version, seed, config_hash} header common to every report.
json report_header(const RunConfig& cfg);

}  // namespace rbl
