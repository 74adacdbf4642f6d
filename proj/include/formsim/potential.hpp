#pragma once

#include <span>
#include <vector>

#include "formsim/geometry.hpp"

namespace formsim {

/// ln-cosh repulsion parameters: V(r) = k * ln(cosh(r - c)) for r < b, else 0.
/// Shared by every agent; 0 < a < b < c.
struct PotentialParams {
  double k = 3.0;
  double a = 1.0;
  double b = 2.0;
  double c = 4.0;

  bool valid() const { return k > 0.0 && 0.0 < a && a < b && b < c; }
};

/// Potential ceiling at the avoidance radius: k * ln(cosh(a - c)).
/// Keeping the collective potential below this value certifies pairwise
/// separation above a.
inline double v_m(const PotentialParams& params) {
  return params.k * std::log(std::cosh(params.a - params.c));
}

inline double pairwise_potential(const Vec2& p_i, const Vec2& p_j,
                                 const PotentialParams& params) {
  const double r = distance(p_i, p_j);
  if (r < kEpsPos) throw std::domain_error("coincident positions");
  if (r >= params.b) return 0.0;
  return params.k * std::log(std::cosh(r - params.c));
}

/// Repulsive force on agent i from j: k * tanh(r - c) * (p_j - p_i)/r inside
/// the gate, zero for r >= b. Equals -grad_{p_i} V and points away from p_j
/// (tanh(r - c) < 0 there).
inline Vec2 pairwise_force(const Vec2& p_i, const Vec2& p_j,
                           const PotentialParams& params) {
  const double r = distance(p_i, p_j);
  if (r < kEpsPos) throw std::domain_error("coincident positions");
  if (r >= params.b) return Vec2::Zero();
  return (params.k * std::tanh(r - params.c) / r) * (p_j - p_i);
}

/// Agents strictly inside the detection radius b of agent i.
inline std::vector<int> neighbor_set(int i, std::span<const Vec2> positions, double b) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(positions.size()); ++j) {
    if (j != i && distance(positions[i], positions[j]) < b) out.push_back(j);
  }
  return out;
}

/// Sum of repulsive forces on agent i from gated real neighbors and from its
/// obstacle virtual robots.
inline Vec2 total_force(int i, std::span<const Vec2> positions,
                        std::span<const Vec2> virtual_positions,
                        const PotentialParams& params) {
  Vec2 f = Vec2::Zero();
  for (int j : neighbor_set(i, positions, params.b)) {
    f += pairwise_force(positions[i], positions[j], params);
  }
  for (const Vec2& pv : virtual_positions) {
    if (distance(positions[i], pv) < params.b) {
      f += pairwise_force(positions[i], pv, params);
    }
  }
  return f;
}

/// Collective potential as the ordered double sum: every agent pair counts
/// twice (both (i,j) and (j,i)); each agent's virtual robots count once.
inline double total_system_potential(std::span<const Vec2> positions,
                                     std::span<const std::vector<Vec2>> virtual_positions,
                                     const PotentialParams& params) {
  const int n = static_cast<int>(positions.size());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j : neighbor_set(i, positions, params.b)) {
      total += pairwise_potential(positions[i], positions[j], params);
    }
    if (i < static_cast<int>(virtual_positions.size())) {
      for (const Vec2& pv : virtual_positions[i]) {
        if (distance(positions[i], pv) < params.b) {
          total += pairwise_potential(positions[i], pv, params);
        }
      }
    }
  }
  return total;
}

/// Theorem-2 admissibility at t = 0: V_m > V_a over the agents alone.
inline bool admissible(std::span<const Vec2> positions, const PotentialParams& params) {
  return v_m(params) > total_system_potential(positions, {}, params);
}

}  // namespace formsim
