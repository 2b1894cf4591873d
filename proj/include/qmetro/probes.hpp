#pragma once

#include <string_view>

#include "qmetro/channel.hpp"

namespace qmetro {

/// First and second moments of the collective spin J = (1/2) sum sigma.
/// <J_z> is zero for every probe used here.
struct SpinMoments {
  double mean_jx{0}, mean_jy{0};
  double var_jx{0}, var_jy{0}, var_jz{0};
  /// <{J_x, J_y}>/2 - <J_x><J_y>
  double cov_jxjy{0};

  double mean(Axis a) const { return a == Axis::x ? mean_jx : mean_jy; }
  double var(Axis a) const { return a == Axis::x ? var_jx : var_jy; }
};

enum class Geometry { scenario_a, scenario_b, css_x, css_y, ghz };

const char* to_string(Geometry g);
/// Accepts "scenario-a", "a", "scenario-b", "b", "css-x", "css-y", "ghz".
Geometry parse_geometry(std::string_view s);

struct ProbeSpec {
  double n_particles{1};
  Geometry geometry{Geometry::css_x};
  double mu{0};

  void validate() const;
  /// Direction of the initial mean spin.
  Axis alignment() const;
  /// Measured collective-spin component (unused for ghz).
  Axis observable() const;
  SpinMoments moments() const;
};

/// One-axis-twisted state with mean spin along `axis`, squeezed along the other
/// equatorial direction. Internally evaluated in extended precision through
/// logarithms of the cosine powers, so N up to ~1e15 is fine.
SpinMoments oatss_moments(double n, double mu, Axis axis);
SpinMoments css_moments(double n, Axis axis);

enum class SqueezingConvention {
  wineland,       // N var_min / <J>^2
  variance_only,  // 4 var_min / N
};

const char* to_string(SqueezingConvention c);

/// Squeezing parameter xi^2 of the state (not in dB).
double squeezing_parameter(double n, double mu,
                           SqueezingConvention conv = SqueezingConvention::wineland);
double squeezing_db(double n, double mu,
                    SqueezingConvention conv = SqueezingConvention::wineland);

/// Twist strength that minimises squeezing_db for this N.
double optimal_squeezing_mu(double n, SqueezingConvention conv = SqueezingConvention::wineland);

/// Inverse of squeezing_db on the branch below the optimum.
/// Throws UnachievableTarget when target_db is deeper than the optimum.
double mu_from_db(double n, double target_db,
                  SqueezingConvention conv = SqueezingConvention::wineland);

}  // namespace qmetro
