#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace trajkit {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm_sq() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

/// Wrap an angle into (-pi, pi].
double wrap_angle(double theta);

/// Rotate a vector by angle theta (counterclockwise).
Vec2 rotate(Vec2 v, double theta);

struct CaState {
  Vec2 position;      // m
  Vec2 velocity;      // m/s
  Vec2 acceleration;  // m/s^2

  bool finite() const {
    return position.finite() && velocity.finite() && acceleration.finite();
  }
};

struct Pose {
  Vec2 origin;
  double heading = 0.0;  // radians, wrapped into (-pi, pi]
};

struct InvalidInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateGeometryError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Position after propagating a constant-acceleration state for tau seconds:
/// p + v*tau + 0.5*a*tau^2.
Vec2 ca_propagate(const CaState& s, double tau);

/// Squared relative distance between two CA rollouts at time tau.
double relative_distance_sq(const CaState& target, const CaState& other,
                            double tau);

/// Unconstrained global minimizer of the squared relative distance between
/// the two CA rollouts. The squared distance is a quartic in tau; its
/// stationary points are real roots of a cubic. Returns the root with the
/// smallest squared distance (ties broken toward smaller tau). Returns 0
/// when the relative motion is constant (both relative velocity and
/// acceleration vanish).
double closest_approach_time(const CaState& target, const CaState& other);

/// Clamp tau into [0, horizon_T].
double clamp_tau(double tau, double horizon_T);

/// Euclidean distance between the two CA rollouts at the clamped time.
double closest_distance(const CaState& target, const CaState& other,
                        double tau_clamped);

/// Real roots of c3*t^3 + c2*t^2 + c1*t + c0 = 0. Returns the number of
/// roots found (1..3) written into `roots`; handles degenerate leading
/// coefficients by falling through to quadratic/linear.
int solve_cubic_real(double c3, double c2, double c1, double c0,
                     std::array<double, 3>& roots);

}  // namespace trajkit
