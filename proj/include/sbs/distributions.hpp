#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

namespace sbs {

// Parameter blocks for the supported families. All are log-concave on the
// nonnegative reals; CappedLinear exists for the non-smooth counterexample.

/// F(x) = (x / cap)^exponent on [0, cap], 1 beyond.
struct PowerOnInterval {
  double exponent = 1.0;
  double cap = 1.0;
  bool operator==(const PowerOnInterval&) const = default;
};

/// F(x) = 1 - exp(-rate x).
struct Exponential {
  double rate = 1.0;
  bool operator==(const Exponential&) const = default;
};

/// Log-normal with mu = -sigma^2 / 2, so the mean is exactly 1.
struct LogNormal {
  double sigma = 0.1;
  bool operator==(const LogNormal&) const = default;
};

/// F(x) = min(x, 1).
struct CappedLinear {
  bool operator==(const CappedLinear&) const = default;
};

using FamilyParams = std::variant<PowerOnInterval, Exponential, LogNormal, CappedLinear>;

/// One-dimensional distribution on [0, inf). Immutable after construction;
/// parameters are validated by the constructor.
///
/// Evaluation requires finite x >= 0. At points where the CDF has a kink
/// (the cap of PowerOnInterval and CappedLinear) the density is the left
/// derivative.
class Cdf {
public:
  explicit Cdf(FamilyParams params);

  static Cdf power(double exponent, double cap);
  static Cdf exponential(double rate);
  static Cdf lognormal(double sigma);
  static Cdf capped_linear();

  const FamilyParams& params() const noexcept { return params_; }
  std::string_view family_name() const noexcept;
  bool is_smooth() const noexcept;

  /// Smallest x with cdf(x) == 1, or +inf for unbounded support.
  double support_upper() const noexcept;

  double cdf(double x) const;
  /// log cdf(x), accurate deep in the lower tail where cdf underflows.
  /// Returns -inf where cdf(x) == 0.
  double log_cdf(double x) const;
  double pdf(double x) const;
  /// pdf / cdf. Throws DivisionByZeroCdf where cdf(x) == 0.
  double score(double x) const;
  /// Smallest x with cdf(x) >= u, for u in (0, 1).
  double quantile(double u) const;

  bool operator==(const Cdf& other) const { return params_ == other.params_; }

private:
  FamilyParams params_;
};

/// CDF of the opponent's submitted bid, scale * eps with eps ~ noise.
/// A scale of zero stands for an absent opponent (the limit scale -> 0+),
/// whose CDF is identically one on (0, inf).
class OpponentBidCdf {
public:
  OpponentBidCdf(const Cdf& noise, double scale);

  double scale() const noexcept { return scale_; }
  bool absent() const noexcept { return scale_ == 0.0; }

  double cdf(double x) const;
  double log_cdf(double x) const;
  double pdf(double x) const;
  double score(double x) const;

private:
  Cdf noise_;
  double scale_;
};

struct LogConcavityReport {
  double max_second_difference = 0.0;
  bool pass = false;
};

inline constexpr double kLogConcavitySlack = 1e-8;

/// Second differences of log cdf on a uniform grid over [lo, hi]; passes
/// iff none exceeds kLogConcavitySlack. Throws ZeroCdfOnGrid if the CDF
/// vanishes at a grid point.
LogConcavityReport verify_log_concavity(const Cdf& dist, double lo, double hi,
                                        std::size_t n_points);

// Standard normal helpers shared with the sampler.
double normal_log_cdf(double z);
double normal_quantile(double u);

}  // namespace sbs
