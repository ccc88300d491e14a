#ifndef SPIKENAV_CROWDENV_TYPES_HPP_
#define SPIKENAV_CROWDENV_TYPES_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spikenav::env {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  // Counter-clockwise quarter turn.
  Vec2 left() const { return {-y, x}; }
  Vec2 rotated(double angle) const {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }
};

inline double wrap_angle(double a) {
  return std::remainder(a, 2.0 * std::numbers::pi);
}

// Observable [p, v, r] plus hidden [goal, v_pref, psi_pref, r_prox].
// psi_pref is carried for completeness; nothing consumes it.
struct AgentState {
  Vec2 position;
  Vec2 velocity;
  double radius = 0.3;
  Vec2 goal;
  double v_pref = 1.0;
  double heading = 0.0;
  double psi_pref = 0.0;
  double r_prox = 0.0;

  bool operator==(const AgentState&) const = default;
};

struct WorldState {
  AgentState robot;
  std::vector<AgentState> humans;
  std::int64_t tick = 0;
  double dt = 0.25;

  bool operator==(const WorldState&) const = default;
};

// Gap between two circular bodies; <= 0 means contact.
inline double surface_distance(const AgentState& a, const AgentState& b) {
  return (a.position - b.position).norm() - a.radius - b.radius;
}

struct Action {
  double speed = 0.0;
  double d_heading = 0.0;
};

enum class Outcome { kRunning, kGoal, kCollision, kTimeout };

std::string_view to_string(Outcome outcome);

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spikenav::env

#endif  // SPIKENAV_CROWDENV_TYPES_HPP_
