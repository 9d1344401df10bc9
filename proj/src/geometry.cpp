#include "trajkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajkit {

namespace {

constexpr double kDegenerateEps = 1e-12;

// One cubic + derivative evaluation for Newton polishing.
double polish_root(double c3, double c2, double c1, double c0, double t) {
  for (int i = 0; i < 3; ++i) {
    const double f = ((c3 * t + c2) * t + c1) * t + c0;
    const double df = (3.0 * c3 * t + 2.0 * c2) * t + c1;
    if (std::abs(df) < std::numeric_limits<double>::min()) break;
    const double step = f / df;
    t -= step;
    if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

}  // namespace

double wrap_angle(double theta) {
  theta = std::remainder(theta, 2.0 * M_PI);
  if (theta <= -M_PI) theta = M_PI;  // remainder returns [-pi, pi]
  return theta;
}

Vec2 rotate(Vec2 v, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 ca_propagate(const CaState& s, double tau) {
  if (!s.finite() || !std::isfinite(tau)) {
    throw InvalidInputError("ca_propagate: non-finite input");
  }
  return s.position + s.velocity * tau + s.acceleration * (0.5 * tau * tau);
}

double relative_distance_sq(const CaState& target, const CaState& other,
                            double tau) {
  const Vec2 dp = other.position - target.position;
  const Vec2 dv = other.velocity - target.velocity;
  const Vec2 da = other.acceleration - target.acceleration;
  const Vec2 r = dp + dv * tau + da * (0.5 * tau * tau);
  return r.norm_sq();
}

int solve_cubic_real(double c3, double c2, double c1, double c0,
                     std::array<double, 3>& roots) {
  const double scale =
      std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) {
    roots[0] = 0.0;
    return 1;
  }
  if (std::abs(c3) < 1e-14 * scale) {
    // Quadratic (or lower) in disguise.
    if (std::abs(c2) < 1e-14 * scale) {
      if (std::abs(c1) < 1e-14 * scale) {
        roots[0] = 0.0;
        return 1;
      }
      roots[0] = -c0 / c1;
      return 1;
    }
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0.0) {
      roots[0] = -c1 / (2.0 * c2);  // vertex; nearest real stationary point
      return 1;
    }
    const double sq = std::sqrt(disc);
    // Citardauq form for the smaller-magnitude root.
    const double q = -0.5 * (c1 + std::copysign(sq, c1));
    roots[0] = q / c2;
    roots[1] = (q != 0.0) ? c0 / q : -c1 / c2 - roots[0];
    return 2;
  }

  // Depressed cubic t = s - b/3 with monic coefficients.
  const double b = c2 / c3, c = c1 / c3, d = c0 / c3;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;

  int n = 0;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double u = std::cbrt(-q / 2.0 + sq);
    const double v = std::cbrt(-q / 2.0 - sq);
    roots[n++] = u + v + shift;
  } else if (disc == 0.0) {
    if (q == 0.0) {
      roots[n++] = shift;
    } else {
      const double u = std::cbrt(-q / 2.0);
      roots[n++] = 2.0 * u + shift;
      roots[n++] = -u + shift;
    }
  } else {
    // Three real roots: trigonometric branch.
    const double r = std::sqrt(-p * p * p / 27.0);
    const double phi = std::acos(std::clamp(-q / (2.0 * r), -1.0, 1.0));
    const double m = 2.0 * std::sqrt(-p / 3.0);
    for (int k = 0; k < 3; ++k) {
      roots[n++] = m * std::cos((phi + 2.0 * M_PI * k) / 3.0) + shift;
    }
  }
  for (int i = 0; i < n; ++i) {
    roots[i] = polish_root(c3, c2, c1, c0, roots[i]);
  }
  std::sort(roots.begin(), roots.begin() + n);
  return n;
}

double closest_approach_time(const CaState& target, const CaState& other) {
  if (!target.finite() || !other.finite()) {
    throw InvalidInputError("closest_approach_time: non-finite state");
  }
  const Vec2 dp = other.position - target.position;
  const Vec2 dv = other.velocity - target.velocity;
  const Vec2 da = other.acceleration - target.acceleration;

  const double a2 = da.norm_sq();
  const double v2 = dv.norm_sq();
  if (a2 < kDegenerateEps) {
    if (v2 < kDegenerateEps) return 0.0;  // constant distance
    return -dp.dot(dv) / v2;
  }

  // Stationary points of q(tau) = |dp + dv tau + 0.5 da tau^2|^2.
  std::array<double, 3> roots{};
  const int n = solve_cubic_real(0.5 * a2, 1.5 * dv.dot(da),
                                 v2 + dp.dot(da), dp.dot(dv), roots);

  double best_tau = roots[0];
  double best_q = relative_distance_sq(target, other, roots[0]);
  for (int i = 1; i < n; ++i) {
    const double qi = relative_distance_sq(target, other, roots[i]);
    // Ties (symmetric double minima) resolve toward the smaller tau, which
    // roots[] ordering already guarantees.
    if (qi < best_q * (1.0 - 1e-12)) {
      best_q = qi;
      best_tau = roots[i];
    }
  }
  return best_tau;
}

double clamp_tau(double tau, double horizon_T) {
  if (!(horizon_T > 0.0)) {
    throw InvalidInputError("clamp_tau: horizon must be positive");
  }
  if (tau < 0.0) return 0.0;
  if (tau > horizon_T) return horizon_T;
  return tau;
}

double closest_distance(const CaState& target, const CaState& other,
                        double tau_clamped) {
  return std::sqrt(relative_distance_sq(target, other, tau_clamped));
}

}  // namespace trajkit
