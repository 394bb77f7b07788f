#include "rcomp/mesh/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace rcomp::mesh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Update {
  double value = kInf;
  bool from_first = true;  // closer to the first segment endpoint
};

// min over s in [0,1] of (1-s) ra + s rb + |v - ((1-s) a + s b)|.
Update segment_update(const Vec3& v, const Vec3& a, double ra, const Vec3& b, double rb) {
  const Vec3 e = b - a;
  const double len = e.norm();
  Update best;
  const double via_a = ra + (v - a).norm();
  const double via_b = rb + (v - b).norm();
  best = via_a <= via_b ? Update{via_a, true} : Update{via_b, false};
  if (len == 0.0) {
    return best;
  }
  const double slope = (rb - ra) / len;
  if (std::abs(slope) >= 1.0) {
    return best;
  }
  const Vec3 dir = e / len;
  const Vec3 w = v - a;
  const double along = w.dot(dir);
  const double height = (w - along * dir).norm();
  const double s = along - slope * height / std::sqrt(1.0 - slope * slope);
  if (s <= 0.0 || s >= len) {
    return best;
  }
  const double value = ra + slope * s + std::hypot(s - along, height);
  if (value < best.value) {
    best = {value, s < 0.5 * len};
  }
  return best;
}

enum class State : char { Far, Trial, Accepted };

}  // namespace

FastMarchingResult fast_marching(const TriangulatedSurface& surface, std::span<const int> seeds) {
  const std::size_t nv = surface.vertex_count();
  std::vector<double> dist(nv, kInf);
  std::vector<int> source(nv, -1);
  std::vector<State> state(nv, State::Far);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int s : seeds) {
    if (s < 0 || static_cast<std::size_t>(s) >= nv) {
      throw std::out_of_range("fast_marching seed out of range");
    }
    dist[static_cast<std::size_t>(s)] = 0.0;
    source[static_cast<std::size_t>(s)] = s;
    heap.push({0.0, s});
  }

  auto relax = [&](int w, double value, int src) {
    const auto wi = static_cast<std::size_t>(w);
    if (value < dist[wi]) {
      dist[wi] = value;
      source[wi] = src;
      state[wi] = State::Trial;
      heap.push({value, w});
    }
  };

  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    const auto ui = static_cast<std::size_t>(u);
    if (state[ui] == State::Accepted || d > dist[ui]) {
      continue;
    }
    state[ui] = State::Accepted;
    const Vec3& pu = surface.position(u);
    for (int f : surface.vertex_faces(u)) {
      const Face& t = surface.face(static_cast<std::size_t>(f));
      const int i = t[0] == u ? 0 : (t[1] == u ? 1 : 2);
      const int p = t[(i + 1) % 3];
      const int q = t[(i + 2) % 3];
      for (auto [w, x] : {std::pair{p, q}, std::pair{q, p}}) {
        const auto wi = static_cast<std::size_t>(w);
        if (state[wi] == State::Accepted) {
          continue;
        }
        const Vec3& pw = surface.position(w);
        relax(w, d + (pw - pu).norm(), source[ui]);
        const auto xi = static_cast<std::size_t>(x);
        if (state[xi] == State::Accepted) {
          const Update up = segment_update(pw, pu, d, surface.position(x), dist[xi]);
          relax(w, up.value, up.from_first ? source[ui] : source[xi]);
        }
      }
    }
  }
  return {ScalarField(std::move(dist)), std::move(source)};
}

FastMarchingResult distance_to_boundary(const TriangulatedSurface& surface) {
  if (!surface.has_boundary()) {
    throw std::invalid_argument("distance_to_boundary: surface has empty boundary");
  }
  std::vector<int> seeds;
  for (const auto& loop : surface.boundary_loops()) {
    seeds.insert(seeds.end(), loop.begin(), loop.end());
  }
  return fast_marching(surface, seeds);
}

CutFlags cut_flags(const TriangulatedSurface& surface, const ScalarField& r,
                   double threshold_degrees) {
  const std::size_t nv = surface.vertex_count();
  CutFlags flags{std::vector<char>(nv, 0)};
  const double threshold = threshold_degrees * std::numbers::pi / 180.0;
  struct Wedge {
    int next, prev;
    double angle;
    bool upwind;
    double gradient_angle;  // direction of grad r, measured from edge (v, next)
  };
  std::vector<Wedge> wedges;
  std::vector<double> polar;
  for (std::size_t v = 0; v < nv; ++v) {
    const int vi = static_cast<int>(v);
    if (surface.is_boundary(vi)) {
      continue;
    }
    wedges.clear();
    const Vec3& p = surface.position(vi);
    for (int f : surface.vertex_faces(vi)) {
      const Face& t = surface.face(static_cast<std::size_t>(f));
      const int i = t[0] == vi ? 0 : (t[1] == vi ? 1 : 2);
      const int a = t[static_cast<std::size_t>((i + 1) % 3)];
      const int b = t[static_cast<std::size_t>((i + 2) % 3)];
      const Vec3 ea = surface.position(a) - p;
      const Vec3 eb = surface.position(b) - p;
      const Vec3 n = ea.cross(eb).normalized();
      const Vec3 e1 = ea.normalized();
      const Vec3 e2 = n.cross(e1);
      Wedge w{a, b, std::atan2(eb.dot(e2), eb.dot(e1)), false, 0.0};
      const double ra = r[static_cast<std::size_t>(a)] - r[v];
      const double rb = r[static_cast<std::size_t>(b)] - r[v];
      if (ra <= 0.0 && rb <= 0.0) {
        // Gradient of the linear interpolant in the face frame (e1, e2):
        // g . ea = ra and g . eb = rb.
        const double ax = ea.norm(), bx = eb.dot(e1), by = eb.dot(e2);
        const double gx = ra / ax;
        const double gy = (rb - gx * bx) / by;
        if (gx != 0.0 || gy != 0.0) {
          w.upwind = true;
          w.gradient_angle = std::atan2(gy, gx);
        }
      }
      wedges.push_back(w);
    }
    // Unfold the one-ring: walk the fan counter-clockwise accumulating
    // corner angles, so gradient directions are compared intrinsically
    // (a sharp but flat fold does not count as a kink).
    const std::size_t k = wedges.size();
    std::vector<char> seen(k, 0);
    polar.clear();
    double total = 0.0;
    std::size_t cur = 0;
    bool fan_ok = true;
    for (std::size_t step = 0; step < k; ++step) {
      seen[cur] = 1;
      if (wedges[cur].upwind) {
        polar.push_back(total + wedges[cur].gradient_angle);
      }
      total += wedges[cur].angle;
      std::size_t nxt = k;
      for (std::size_t q = 0; q < k; ++q) {
        if (!seen[q] && wedges[q].next == wedges[cur].prev) {
          nxt = q;
          break;
        }
      }
      if (nxt == k) {
        fan_ok = step + 1 == k;
        break;
      }
      cur = nxt;
    }
    bool flagged = polar.empty() || !fan_ok;
    for (std::size_t i = 0; i < polar.size() && !flagged; ++i) {
      for (std::size_t j = i + 1; j < polar.size(); ++j) {
        double d = std::fmod(std::abs(polar[i] - polar[j]), total);
        d = std::min(d, total - d);
        if (d > threshold) {
          flagged = true;
          break;
        }
      }
    }
    flags.flagged[v] = flagged ? 1 : 0;
  }
  return flags;
}

std::vector<int> descend_to_boundary(const TriangulatedSurface& surface, const ScalarField& r) {
  const std::size_t nv = surface.vertex_count();
  std::vector<int> foot(nv, -2);  // -2 unknown, -1 stuck
  std::vector<int> path;
  for (std::size_t v = 0; v < nv; ++v) {
    path.clear();
    int cur = static_cast<int>(v);
    int result = -1;
    while (true) {
      const auto ci = static_cast<std::size_t>(cur);
      if (foot[ci] != -2) {
        result = foot[ci];
        break;
      }
      if (surface.is_boundary(cur)) {
        result = cur;
        break;
      }
      path.push_back(cur);
      int next = -1;
      double best = r[ci];
      for (int w : surface.neighbors(cur)) {
        const double rw = r[static_cast<std::size_t>(w)];
        if (rw < best || (rw == best && surface.is_boundary(w))) {
          best = rw;
          next = w;
        }
      }
      if (next < 0) {
        break;
      }
      cur = next;
    }
    for (int p : path) {
      foot[static_cast<std::size_t>(p)] = result;
    }
    if (foot[v] == -2) {
      foot[v] = result;
    }
  }
  return foot;
}

double mesh_diameter(const TriangulatedSurface& surface, std::size_t extra_sources) {
  const std::size_t nv = surface.vertex_count();
  double best = 0.0;
  auto sweep = [&](int s) {
    const int seed[1] = {s};
    auto res = fast_marching(surface, seed);
    const auto& d = res.distance.values();
    auto it = std::max_element(d.begin(), d.end());
    if (std::isinf(*it)) {
      throw std::invalid_argument("mesh_diameter: surface is disconnected");
    }
    best = std::max(best, *it);
    return static_cast<int>(it - d.begin());
  };
  int s = 0;
  for (int i = 0; i < 4; ++i) {
    s = sweep(s);
  }
  for (std::size_t i = 1; i <= extra_sources; ++i) {
    sweep(static_cast<int>((nv * i) / (extra_sources + 1)));
  }
  return best;
}

double boundary_restricted_diameter(const TriangulatedSurface& surface, std::size_t sources) {
  std::vector<int> bverts;
  for (const auto& loop : surface.boundary_loops()) {
    bverts.insert(bverts.end(), loop.begin(), loop.end());
  }
  if (bverts.empty()) {
    return 0.0;
  }
  double best = 0.0;
  auto sweep = [&](int s) {
    const int seed[1] = {s};
    auto res = fast_marching(surface, seed);
    int far = s;
    for (int b : bverts) {
      const double d = res.distance[static_cast<std::size_t>(b)];
      if (d > res.distance[static_cast<std::size_t>(far)]) {
        far = b;
      }
    }
    best = std::max(best, res.distance[static_cast<std::size_t>(far)]);
    return far;
  };
  int s = bverts.front();
  for (int i = 0; i < 3; ++i) {
    s = sweep(s);
  }
  for (std::size_t i = 1; i <= sources; ++i) {
    sweep(bverts[(bverts.size() * i) / (sources + 1)]);
  }
  return best;
}

}  // namespace rcomp::mesh
