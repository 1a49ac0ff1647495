#include "rbl/rotation.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace rbl {

namespace {

double frac01(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guard against floor rounding at the boundary
  return f;
}

}  // namespace

double RotationNumber::value() const {
  switch (kind) {
    case Kind::golden:
      return (std::sqrt(5.0) - 1.0) / 2.0;
    case Kind::silver:
      return std::sqrt(2.0) - 1.0;
    case Kind::fraction:
      return static_cast<double>(p) / static_cast<double>(q);
    case Kind::cf: {
      double x = static_cast<double>(cf.back());
      for (int i = static_cast<int>(cf.size()) - 2; i >= 0; --i) {
        x = static_cast<double>(cf[i]) + 1.0 / x;
      }
      return frac01(x);
    }
    case Kind::decimal: {
      return std::strtod(text.c_str(), nullptr);
    }
    case Kind::complete:
      throw Error("domain-error",
                  "a completing rotation entry has no standalone value; "
                  "resolve it through alpha_value with its tuple");
  }
  throw Error("internal", "unreachable rotation kind");
}

std::string RotationNumber::token() const {
  switch (kind) {
    case Kind::golden:
      return "golden";
    case Kind::silver:
      return "silver";
    case Kind::complete:
      return "complete";
    case Kind::fraction:
      return std::to_string(p) + "/" + std::to_string(q);
    case Kind::cf: {
      std::string s = "cf:";
      for (size_t i = 0; i < cf.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cf[i]);
      }
      return s;
    }
    case Kind::decimal:
      return text;
  }
  throw Error("internal", "unreachable rotation kind");
}

RotationNumber RotationNumber::golden() {
  RotationNumber r;
  r.kind = Kind::golden;
  return r;
}

RotationNumber RotationNumber::silver() {
  RotationNumber r;
  r.kind = Kind::silver;
  return r;
}

RotationNumber RotationNumber::parse(const std::string& token) {
  RotationNumber r;
  if (token == "golden") {
    r.kind = Kind::golden;
    return r;
  }
  if (token == "silver") {
    r.kind = Kind::silver;
    return r;
  }
  if (token == "complete") {
    r.kind = Kind::complete;
    return r;
  }
  if (token.rfind("cf:", 0) == 0) {
    r.kind = Kind::cf;
    std::string body = token.substr(3);
    size_t pos = 0;
    while (pos <= body.size()) {
      size_t comma = body.find(',', pos);
      std::string part =
          body.substr(pos, comma == std::string::npos ? std::string::npos
                                                      : comma - pos);
      if (part.empty()) {
        throw Error("config-invalid",
                    "empty continued-fraction entry in '" + token + "'");
      }
      char* end = nullptr;
      long long a = std::strtoll(part.c_str(), &end, 10);
      if (end == nullptr || *end != '\0') {
        throw Error("config-invalid",
                    "bad continued-fraction entry '" + part + "'");
      }
      r.cf.push_back(a);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (r.cf.empty() || r.cf[0] < 0) {
      throw Error("config-invalid", "continued fraction needs a0 >= 0");
    }
    for (size_t i = 1; i < r.cf.size(); ++i) {
      if (r.cf[i] < 1) {
        throw Error("config-invalid",
                    "continued-fraction entries after a0 must be >= 1");
      }
    }
    return r;
  }
  if (token.find('/') != std::string::npos) {
    r.kind = Kind::fraction;
    size_t slash = token.find('/');
    char* end = nullptr;
    long long pv = std::strtoll(token.substr(0, slash).c_str(), &end, 10);
    if (end == nullptr || *end != '\0') {
      throw Error("config-invalid", "bad fraction numerator in '" + token + "'");
    }
    end = nullptr;
    long long qv = std::strtoll(token.substr(slash + 1).c_str(), &end, 10);
    if (end == nullptr || *end != '\0' || qv <= 0) {
      throw Error("config-invalid",
                  "bad fraction denominator in '" + token + "'");
    }
    pv %= qv;
    if (pv < 0) pv += qv;
    long long g = std::gcd(pv, qv);
    if (g > 1) {
      pv /= g;
      qv /= g;
    }
    r.p = pv;
    r.q = qv;
    return r;
  }
  // Decimal literal.
  char* end = nullptr;
  double v = std::strtod(token.c_str(), &end);
  if (end == nullptr || *end != '\0' || token.empty()) {
    throw Error("config-invalid", "unrecognized rotation token '" + token + "'");
  }
  if (!(v >= 0.0 && v < 1.0)) {
    throw Error("config-invalid",
                "rotation number must lie in [0,1): '" + token + "'");
  }
  r.kind = Kind::decimal;
  r.text = token;
  return r;
}

double alpha_value(const std::vector<RotationNumber>& alphas, int idx) {
  if (idx < 0 || idx >= static_cast<int>(alphas.size())) {
    throw Error("dimension-mismatch", "rotation index out of range");
  }
  const RotationNumber& a = alphas[idx];
  if (a.kind != RotationNumber::Kind::complete) return a.value();
  double sum = 0.0;
  for (size_t i = 0; i < alphas.size(); ++i) {
    if (static_cast<int>(i) == idx) continue;
    if (alphas[i].kind == RotationNumber::Kind::complete) {
      throw Error("config-invalid",
                  "at most one completing rotation entry per tuple");
    }
    sum += alphas[i].value();
  }
  double f = sum - std::floor(sum);
  double v = 1.0 - f;
  if (v >= 1.0) v = 0.0;
  return v;
}

cplx lambda_value(const std::vector<RotationNumber>& alphas, int idx) {
  const double a = alpha_value(alphas, idx);
  return std::polar(1.0, 2.0 * defaults::kPi * a);
}

}  // namespace rbl
