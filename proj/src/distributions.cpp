#include "sbs/distributions.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sbs/error.hpp"

namespace sbs {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite_nonnegative(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "distribution evaluated at " + std::to_string(x) + "; need finite x >= 0");
  }
}

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw Error(ErrorCode::InvalidParameter,
                std::string(name) + " must be a finite positive number, got " + std::to_string(value));
  }
}

double lognormal_mu(double sigma) { return -0.5 * sigma * sigma; }

double lognormal_z(const LogNormal& p, double x) {
  return (std::log(x) - lognormal_mu(p.sigma)) / p.sigma;
}

double normal_log_pdf(double z) {
  return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double normal_log_cdf(double z) {
  if (z > 0.0) {
    return std::log1p(-0.5 * std::erfc(z / std::numbers::sqrt2));
  }
  if (z > -20.0) {
    return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
  }
  // Asymptotic expansion of the Mills ratio; terms shrink until n ~ z^2/2,
  // far beyond the point where they drop below double precision.
  const double inv_z2 = 1.0 / (z * z);
  double term = 1.0;
  double series = 1.0;
  for (int n = 1; n < 30; ++n) {
    term *= -(2.0 * n - 1.0) * inv_z2;
    series += term;
    if (std::abs(term) < 1e-18) break;
  }
  return normal_log_pdf(z) - std::log(-z) + std::log(series);
}

double normal_quantile(double u) {
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

Cdf::Cdf(FamilyParams params) : params_(params) {
  std::visit(overloaded{
                 [](const PowerOnInterval& p) {
                   require_positive(p.exponent, "power exponent k");
                   require_positive(p.cap, "power cap c");
                 },
                 [](const Exponential& p) { require_positive(p.rate, "exponential rate"); },
                 [](const LogNormal& p) { require_positive(p.sigma, "lognormal sigma"); },
                 [](const CappedLinear&) {},
             },
             params_);
}

Cdf Cdf::power(double exponent, double cap) { return Cdf(PowerOnInterval{exponent, cap}); }
Cdf Cdf::exponential(double rate) { return Cdf(Exponential{rate}); }
Cdf Cdf::lognormal(double sigma) { return Cdf(LogNormal{sigma}); }
Cdf Cdf::capped_linear() { return Cdf(CappedLinear{}); }

std::string_view Cdf::family_name() const noexcept {
  return std::visit(overloaded{
                        [](const PowerOnInterval&) { return std::string_view("power"); },
                        [](const Exponential&) { return std::string_view("exponential"); },
                        [](const LogNormal&) { return std::string_view("lognormal"); },
                        [](const CappedLinear&) { return std::string_view("capped_linear"); },
                    },
                    params_);
}

bool Cdf::is_smooth() const noexcept { return !std::holds_alternative<CappedLinear>(params_); }

double Cdf::support_upper() const noexcept {
  return std::visit(overloaded{
                        [](const PowerOnInterval& p) { return p.cap; },
                        [](const Exponential&) { return kInf; },
                        [](const LogNormal&) { return kInf; },
                        [](const CappedLinear&) { return 1.0; },
                    },
                    params_);
}

double Cdf::cdf(double x) const {
  require_finite_nonnegative(x);
  return std::visit(overloaded{
                        [x](const PowerOnInterval& p) {
                          return x >= p.cap ? 1.0 : std::pow(x / p.cap, p.exponent);
                        },
                        [x](const Exponential& p) { return -std::expm1(-p.rate * x); },
                        [x](const LogNormal& p) {
                          if (x == 0.0) return 0.0;
                          return 0.5 * std::erfc(-lognormal_z(p, x) / std::numbers::sqrt2);
                        },
                        [x](const CappedLinear&) { return std::min(x, 1.0); },
                    },
                    params_);
}

double Cdf::log_cdf(double x) const {
  require_finite_nonnegative(x);
  if (x == 0.0) return -kInf;
  return std::visit(overloaded{
                        [x](const PowerOnInterval& p) {
                          return x >= p.cap ? 0.0 : p.exponent * std::log(x / p.cap);
                        },
                        [x](const Exponential& p) {
                          const double t = p.rate * x;
                          // log(1 - e^-t): two forms, each accurate on one side of ln 2.
                          return t < std::numbers::ln2 ? std::log(-std::expm1(-t))
                                                       : std::log1p(-std::exp(-t));
                        },
                        [x](const LogNormal& p) { return normal_log_cdf(lognormal_z(p, x)); },
                        [x](const CappedLinear&) { return std::min(std::log(x), 0.0); },
                    },
                    params_);
}

double Cdf::pdf(double x) const {
  require_finite_nonnegative(x);
  return std::visit(overloaded{
                        [x](const PowerOnInterval& p) {
                          if (x > p.cap) return 0.0;
                          if (x == 0.0) {
                            if (p.exponent == 1.0) return 1.0 / p.cap;
                            return p.exponent < 1.0 ? kInf : 0.0;
                          }
                          return p.exponent / p.cap * std::pow(x / p.cap, p.exponent - 1.0);
                        },
                        [x](const Exponential& p) { return p.rate * std::exp(-p.rate * x); },
                        [x](const LogNormal& p) {
                          if (x == 0.0) return 0.0;
                          const double z = lognormal_z(p, x);
                          return std::exp(normal_log_pdf(z)) / (p.sigma * x);
                        },
                        [x](const CappedLinear&) { return x <= 1.0 ? 1.0 : 0.0; },
                    },
                    params_);
}

double Cdf::score(double x) const {
  require_finite_nonnegative(x);
  if (x == 0.0) {
    throw Error(ErrorCode::DivisionByZeroCdf,
                std::string("score of ") + std::string(family_name()) + " at x = 0 where cdf is 0");
  }
  return std::visit(overloaded{
                        [x](const PowerOnInterval& p) { return x > p.cap ? 0.0 : p.exponent / x; },
                        [x](const Exponential& p) { return p.rate / std::expm1(p.rate * x); },
                        [x](const LogNormal& p) {
                          const double z = lognormal_z(p, x);
                          return std::exp(normal_log_pdf(z) - normal_log_cdf(z)) / (p.sigma * x);
                        },
                        [x](const CappedLinear&) { return x <= 1.0 ? 1.0 / x : 0.0; },
                    },
                    params_);
}

double Cdf::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "quantile level must lie in (0, 1), got " + std::to_string(u));
  }
  return std::visit(overloaded{
                        [u](const PowerOnInterval& p) { return p.cap * std::pow(u, 1.0 / p.exponent); },
                        [u](const Exponential& p) { return -std::log1p(-u) / p.rate; },
                        [u](const LogNormal& p) {
                          return std::exp(lognormal_mu(p.sigma) + p.sigma * normal_quantile(u));
                        },
                        [u](const CappedLinear&) { return u; },
                    },
                    params_);
}

OpponentBidCdf::OpponentBidCdf(const Cdf& noise, double scale) : noise_(noise), scale_(scale) {
  if (!std::isfinite(scale) || scale < 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "opponent bid level must be finite and >= 0, got " + std::to_string(scale));
  }
}

double OpponentBidCdf::cdf(double x) const {
  if (absent()) {
    require_finite_nonnegative(x);
    return x > 0.0 ? 1.0 : 0.0;
  }
  return noise_.cdf(x / scale_);
}

double OpponentBidCdf::log_cdf(double x) const {
  if (absent()) {
    require_finite_nonnegative(x);
    return x > 0.0 ? 0.0 : -kInf;
  }
  return noise_.log_cdf(x / scale_);
}

double OpponentBidCdf::pdf(double x) const {
  if (absent()) {
    require_finite_nonnegative(x);
    return 0.0;
  }
  return noise_.pdf(x / scale_) / scale_;
}

double OpponentBidCdf::score(double x) const {
  if (absent()) {
    require_finite_nonnegative(x);
    if (x == 0.0) throw Error(ErrorCode::DivisionByZeroCdf, "opponent bid cdf is 0 at x = 0");
    return 0.0;
  }
  return noise_.score(x / scale_) / scale_;
}

LogConcavityReport verify_log_concavity(const Cdf& dist, double lo, double hi,
                                        std::size_t n_points) {
  if (!(lo > 0.0 && lo < hi && std::isfinite(hi)) || n_points < 3) {
    throw Error(ErrorCode::InvalidArgument,
                "log-concavity grid needs 0 < lo < hi and at least 3 points");
  }
  const double step = (hi - lo) / static_cast<double>(n_points - 1);
  auto log_at = [&](std::size_t i) {
    const double x = i + 1 == n_points ? hi : lo + step * static_cast<double>(i);
    const double value = dist.log_cdf(x);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::ZeroCdfOnGrid,
                  std::string(dist.family_name()) + " cdf is 0 at grid point " + std::to_string(x));
    }
    return value;
  };

  LogConcavityReport report;
  report.max_second_difference = -kInf;
  double prev = log_at(0);
  double cur = log_at(1);
  for (std::size_t i = 2; i < n_points; ++i) {
    const double next = log_at(i);
    report.max_second_difference = std::max(report.max_second_difference, prev - 2.0 * cur + next);
    prev = cur;
    cur = next;
  }
  report.pass = report.max_second_difference <= kLogConcavitySlack;
  return report;
}

}  // namespace sbs
