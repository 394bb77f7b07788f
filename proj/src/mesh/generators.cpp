#include "rcomp/mesh/generators.hpp"

#include "rcomp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace rcomp::mesh {

namespace {

constexpr double kPi = std::numbers::pi;

// A closed ring of vertices, sorted by angle in [0, period).
struct Ring {
  std::vector<int> ids;
  std::vector<double> angles;
};

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

// Triangulates the band between two rings. With angles increasing
// counterclockwise about the outward normal, each face is (inner, outer,
// outer') or (inner, outer', inner'). Either ring may be a single pole vertex.
void stitch(const Ring& inner, const Ring& outer, double period, std::vector<Face>& faces) {
  const std::size_t p = inner.ids.size();
  const std::size_t q = outer.ids.size();
  if (p == 1 && q == 1) {
    throw std::logic_error("stitch: two single-vertex rings");
  }
  if (p == 1) {
    for (std::size_t j = 0; j < q; ++j) {
      faces.push_back({inner.ids[0], outer.ids[j], outer.ids[(j + 1) % q]});
    }
    return;
  }
  if (q == 1) {
    for (std::size_t i = 0; i < p; ++i) {
      faces.push_back({inner.ids[i], outer.ids[0], inner.ids[(i + 1) % p]});
    }
    return;
  }
  // Start the outer ring at the vertex closest in angle to inner[0], and
  // unwrap its angles so they increase from about inner.angles[0].
  std::size_t start = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < q; ++j) {
    double d = std::fmod(std::abs(outer.angles[j] - inner.angles[0]), period);
    d = std::min(d, period - d);
    if (d < best) {
      best = d;
      start = j;
    }
  }
  auto outer_angle = [&](std::size_t j) {
    const std::size_t idx = (start + j) % q;
    double a = outer.angles[idx] + period * static_cast<double>((start + j) / q);
    if (outer.angles[start] - inner.angles[0] > 0.5 * period) {
      a -= period;
    } else if (inner.angles[0] - outer.angles[start] > 0.5 * period) {
      a += period;
    }
    return a;
  };
  auto inner_angle = [&](std::size_t i) {
    return inner.angles[i % p] + period * static_cast<double>(i / p);
  };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < p || j < q) {
    const int a = inner.ids[i % p];
    const int b = outer.ids[(start + j) % q];
    bool advance_inner;
    if (i == p) {
      advance_inner = false;
    } else if (j == q) {
      advance_inner = true;
    } else {
      advance_inner = inner_angle(i + 1) < outer_angle(j + 1);
    }
    if (advance_inner) {
      faces.push_back({a, b, inner.ids[(i + 1) % p]});
      ++i;
    } else {
      faces.push_back({a, b, outer.ids[(start + j + 1) % q]});
      ++j;
    }
  }
}

Ring make_ring(std::vector<Vec3>& vertices, std::size_t count, double period, double offset,
               const std::function<Vec3(double)>& place) {
  Ring ring;
  for (std::size_t q = 0; q < count; ++q) {
    const double phi = period * (static_cast<double>(q) + offset) / static_cast<double>(count);
    ring.ids.push_back(static_cast<int>(vertices.size()));
    ring.angles.push_back(phi);
    vertices.push_back(place(phi));
  }
  return ring;
}

Ring pole(std::vector<Vec3>& vertices, const Vec3& p) {
  Ring ring;
  ring.ids.push_back(static_cast<int>(vertices.size()));
  ring.angles.push_back(0.0);
  vertices.push_back(p);
  return ring;
}

struct RawMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
};

// Band theta in [theta_a, theta_b] of the unit sphere, longitude lifted to
// [0, 2 pi j). theta_a = 0 / theta_b = pi put a pole vertex there. Without
// poles every ring has the same vertex count, so the triangulation is
// rotation invariant (the cotangent Laplacian is only consistent pointwise on
// such regular stencils).
RawMesh sphere_band(double theta_a, double theta_b, int j, double h) {
  RawMesh m;
  const double period = 2.0 * kPi * j;
  const bool uniform = theta_a > 0.0 && theta_b < kPi;
  const double widest = (theta_a <= 0.5 * kPi && theta_b >= 0.5 * kPi)
                            ? 1.0
                            : std::max(std::sin(theta_a), std::sin(theta_b));
  const auto rows = static_cast<std::size_t>(std::max(2.0, std::ceil((theta_b - theta_a) / h)));
  std::vector<Ring> rings;
  for (std::size_t i = 0; i <= rows; ++i) {
    const double theta = theta_a + (theta_b - theta_a) * static_cast<double>(i) / static_cast<double>(rows);
    if ((i == 0 && theta_a == 0.0) || (i == rows && theta_b == kPi)) {
      rings.push_back(pole(m.vertices, Vec3(0.0, 0.0, i == 0 ? 1.0 : -1.0)));
      continue;
    }
    const double st = std::sin(theta);
    const double ct = std::cos(theta);
    const auto count =
        static_cast<std::size_t>(std::max(3.0, std::ceil(period * (uniform ? widest : st) / h)));
    rings.push_back(make_ring(m.vertices, count, period, 0.5 * static_cast<double>(i % 2),
                              [&](double phi) { return Vec3(st * std::cos(phi), st * std::sin(phi), ct); }));
  }
  for (std::size_t i = 0; i + 1 < rings.size(); ++i) {
    stitch(rings[i], rings[i + 1], period, m.faces);
  }
  return m;
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

}  // namespace

TriangulatedSurface disk_mesh(double R, double h) {
  require_positive(R, "disk radius");
  require_positive(h, "mesh size h");
  const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(R / h)));
  const auto count = static_cast<std::size_t>(std::max(6.0, std::ceil(2.0 * kPi * R / h)));
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  Ring prev = pole(vertices, Vec3::Zero());
  for (std::size_t i = 1; i <= m; ++i) {
    const double rho = R * static_cast<double>(i) / static_cast<double>(m);
    Ring ring = make_ring(vertices, count, 2.0 * kPi, 0.5 * static_cast<double>(i % 2), [&](double phi) {
      return Vec3(rho * std::cos(phi), rho * std::sin(phi), 0.0);
    });
    stitch(prev, ring, 2.0 * kPi, faces);
    prev = std::move(ring);
  }
  return TriangulatedSurface(std::move(vertices), std::move(faces));
}

TriangulatedSurface saddle_mesh(double R, double h, double amplitude) {
  const TriangulatedSurface flat = disk_mesh(R, h);
  std::vector<Vec3> vertices = flat.vertices();
  for (Vec3& p : vertices) {
    p.z() = amplitude * (p.x() * p.x() - p.y() * p.y());
  }
  return TriangulatedSurface(std::move(vertices), flat.faces());
}

TriangulatedSurface cylinder_mesh(double height, double h) {
  require_positive(height, "cylinder height");
  require_positive(h, "mesh size h");
  const auto rows = static_cast<std::size_t>(std::max(1.0, std::ceil(height / h)));
  const auto count = static_cast<std::size_t>(std::max(3.0, std::ceil(2.0 * kPi / h)));
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  Ring prev;
  for (std::size_t i = 0; i <= rows; ++i) {
    const double z = height * static_cast<double>(i) / static_cast<double>(rows);
    Ring ring = make_ring(vertices, count, 2.0 * kPi, 0.5 * static_cast<double>(i % 2),
                          [&](double phi) { return Vec3(std::cos(phi), std::sin(phi), z); });
    if (i > 0) {
      stitch(prev, ring, 2.0 * kPi, faces);
    }
    prev = std::move(ring);
  }
  return TriangulatedSurface(std::move(vertices), std::move(faces));
}

TriangulatedSurface sphere_mesh(double h, double north_cap, double south_cap) {
  require_positive(h, "mesh size h");
  if (!(north_cap >= 0.0) || !(south_cap >= 0.0) || !(north_cap + south_cap < kPi)) {
    throw std::invalid_argument("sphere_mesh: caps must be nonnegative and leave a band");
  }
  RawMesh m = sphere_band(north_cap, kPi - south_cap, 1, h);
  return TriangulatedSurface(std::move(m.vertices), std::move(m.faces));
}

TriangulatedSurface sphere_jfold(int j, double h) {
  if (j < 1) {
    throw std::invalid_argument("sphere_jfold: j must be >= 1");
  }
  require_positive(h, "mesh size h");
  const double cap = 1.0 / j;
  if (h >= cap) {
    throw std::invalid_argument("sphere_jfold: h must be below the cap radius 1/j");
  }
  RawMesh m = sphere_band(cap, kPi - cap, j, h);
  return TriangulatedSurface(std::move(m.vertices), std::move(m.faces));
}

WellsAccounting wells_accounting(int N, double R_w, double v, double hole, double clearance,
                                 double max_depth) {
  if (N < 0) {
    throw std::invalid_argument("wells: N must be >= 0");
  }
  if (!(v >= 0.0) || !(hole >= 0.0) || !(hole < kPi)) {
    throw std::invalid_argument("wells: v must be >= 0 and the hole radius in [0, pi)");
  }
  if (!(max_depth > 0.0)) {
    throw std::invalid_argument("wells: max_depth must be positive");
  }
  WellsAccounting acc;
  acc.wells = N;
  acc.volume_budget = v;
  acc.hole = hole;
  const double hole_area = 2.0 * kPi * (1.0 - std::cos(hole));
  if (N == 0) {
    acc.expected_area = 4.0 * kPi - hole_area;
    acc.diameter_bound = kPi + (kPi - 2.0) * hole;
    return acc;
  }
  require_positive(R_w, "wells: cap radius R_w");
  if (R_w >= 0.5 * kPi) {
    throw std::invalid_argument("wells: cap radius must be below pi/2");
  }
  acc.cap_radius = R_w;
  acc.mouth_radius = std::sin(R_w);
  acc.cap_area = 2.0 * kPi * (1.0 - std::cos(R_w));
  const double bottom = kPi * acc.mouth_radius * acc.mouth_radius;
  if (!(v / N > bottom)) {
    throw std::invalid_argument("wells: infeasible, v/N = " + std::to_string(v / N) +
                                " does not exceed the well bottom area pi sin(R_w)^2 = " +
                                std::to_string(bottom));
  }
  acc.depth = std::min(max_depth, (v / N - bottom) / (2.0 * kPi * acc.mouth_radius));
  acc.well_area = bottom + 2.0 * kPi * acc.mouth_radius * acc.depth;
  acc.expected_area = 4.0 * kPi - hole_area - N * acc.cap_area + N * acc.well_area;
  acc.flat_bound = v + N * acc.cap_area;
  // Every point is within depth + a of a rim; a great-circle arc detours
  // around each removed cap (and the hole) at extra cost (pi - 2) * radius.
  acc.diameter_bound = kPi + 2.0 * (acc.depth + acc.mouth_radius) +
                       (kPi - 2.0) * (N * R_w + hole);

  // Centres on a Fibonacci spiral over the band below the hole.
  const double top = hole > 0.0 ? hole + R_w + clearance : 0.0;
  const double z_max = std::cos(top);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < N; ++i) {
    const double z = z_max - (z_max + 1.0) * (i + 0.5) / N;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    acc.centers.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  for (int a = 0; a < N; ++a) {
    if (hole > 0.0 && angle_between(acc.centers[a], Vec3(0, 0, 1)) < hole + R_w + clearance) {
      throw std::invalid_argument("wells: infeasible, a cap overlaps the boundary hole");
    }
    for (int b = a + 1; b < N; ++b) {
      if (angle_between(acc.centers[a], acc.centers[b]) < 2.0 * R_w + clearance) {
        throw std::invalid_argument("wells: infeasible, caps " + std::to_string(a) + " and " +
                                    std::to_string(b) + " overlap");
      }
    }
  }
  return acc;
}

TriangulatedSurface sphere_with_wells(int N, double R_w, double v, double h, double hole,
                                      double max_depth) {
  require_positive(h, "mesh size h");
  if (N > 0 && !(h < R_w / 3.0)) {
    throw std::invalid_argument("wells: resolution too coarse, need h < R_w/3");
  }
  const WellsAccounting acc = wells_accounting(N, R_w, v, hole, 4.0 * h, max_depth);
  RawMesh m = sphere_band(hole, kPi, 1, h);
  std::vector<Vec3>& V = m.vertices;
  std::vector<char> removed(V.size(), 0);
  std::vector<char> face_kept(m.faces.size(), 1);

  struct Well {
    Vec3 center;
    std::vector<int> rim;  // loop order, surface on the left
  };
  std::vector<Well> wells;

  for (const Vec3& c : acc.centers) {
    std::vector<char> inside(V.size(), 0);
    for (std::size_t i = 0; i < V.size(); ++i) {
      inside[i] = angle_between(V[i], c) < R_w ? 1 : 0;
    }
    // Faces touching the cap interior go; their remaining vertices form the
    // rim. Repeat until every rim vertex still has a kept face.
    for (;;) {
      std::vector<char> keeps_face(V.size(), 0);
      for (std::size_t f = 0; f < m.faces.size(); ++f) {
        if (!face_kept[f]) {
          continue;
        }
        const Face& t = m.faces[f];
        if (inside[t[0]] || inside[t[1]] || inside[t[2]]) {
          continue;
        }
        for (int x : t) {
          keeps_face[x] = 1;
        }
      }
      bool changed = false;
      for (std::size_t f = 0; f < m.faces.size(); ++f) {
        const Face& t = m.faces[f];
        if (!face_kept[f] || !(inside[t[0]] || inside[t[1]] || inside[t[2]])) {
          continue;
        }
        for (int x : t) {
          if (!inside[x] && !keeps_face[x]) {
            inside[x] = 1;
            changed = true;
          }
        }
      }
      if (!changed) {
        break;
      }
    }
    std::unordered_set<long long> kept_edges;
    auto key = [](int a, int b) { return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b); };
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
      const Face& t = m.faces[f];
      if (inside[t[0]] || inside[t[1]] || inside[t[2]]) {
        face_kept[f] = 0;
      }
      if (face_kept[f]) {
        for (int e = 0; e < 3; ++e) {
          kept_edges.insert(key(t[e], t[(e + 1) % 3]));
        }
      }
    }
    // Rim edges: kept directed edges (a, b) whose reverse lies in a removed
    // face of this cap.
    std::unordered_map<int, int> next;
    for (std::size_t f = 0; f < m.faces.size(); ++f) {
      const Face& t = m.faces[f];
      if (face_kept[f] || !(inside[t[0]] || inside[t[1]] || inside[t[2]])) {
        continue;
      }
      for (int e = 0; e < 3; ++e) {
        const int a = t[e];
        const int b = t[(e + 1) % 3];
        if (!inside[a] && !inside[b] && kept_edges.count(key(b, a))) {
          if (!next.emplace(b, a).second) {
            throw std::invalid_argument("wells: rim is not a simple loop; refine h");
          }
        }
      }
    }
    if (next.size() < 3) {
      throw std::invalid_argument("wells: cap not resolved by the mesh; refine h");
    }
    Well well{c, {}};
    int cur = next.begin()->first;
    for (std::size_t steps = 0; steps <= next.size(); ++steps) {
      well.rim.push_back(cur);
      const auto it = next.find(cur);
      if (it == next.end()) {
        throw std::invalid_argument("wells: rim is not closed; refine h");
      }
      cur = it->second;
      if (cur == well.rim.front()) {
        break;
      }
    }
    if (well.rim.size() != next.size()) {
      throw std::invalid_argument("wells: rim splits into several loops; refine h");
    }
    for (std::size_t i = 0; i < V.size(); ++i) {
      if (inside[i]) {
        removed[i] = 1;
      }
    }
    wells.push_back(std::move(well));
  }

  std::vector<Face> faces;
  for (std::size_t f = 0; f < m.faces.size(); ++f) {
    if (face_kept[f]) {
      faces.push_back(m.faces[f]);
    }
  }
  for (Well& well : wells) {
    const Vec3& c = well.center;
    const double a = acc.mouth_radius;
    const Vec3 mouth = std::cos(R_w) * c;
    // Snap the rim onto the mouth circle.
    for (int x : well.rim) {
      Vec3 radial = V[x] - V[x].dot(c) * c;
      V[x] = mouth + a * radial.normalized();
    }
    const auto layers = static_cast<std::size_t>(std::max(1.0, std::ceil(acc.depth / h)));
    std::vector<int> upper = well.rim;
    const std::size_t K = upper.size();
    for (std::size_t s = 1; s <= layers; ++s) {
      const double drop = acc.depth * static_cast<double>(s) / static_cast<double>(layers);
      std::vector<int> lower;
      for (int x : well.rim) {
        lower.push_back(static_cast<int>(V.size()));
        V.push_back(V[x] - drop * c);
      }
      for (std::size_t q = 0; q < K; ++q) {
        const std::size_t q1 = (q + 1) % K;
        faces.push_back({upper[q1], upper[q], lower[q]});
        faces.push_back({upper[q1], lower[q], lower[q1]});
      }
      upper = std::move(lower);
    }
    const int bottom = static_cast<int>(V.size());
    V.push_back(mouth - acc.depth * c);
    for (std::size_t q = 0; q < K; ++q) {
      faces.push_back({upper[(q + 1) % K], upper[q], bottom});
    }
  }
  removed.resize(V.size(), 0);

  std::vector<int> remap(V.size(), -1);
  std::vector<Vec3> vertices;
  for (std::size_t i = 0; i < V.size(); ++i) {
    if (!removed[i]) {
      remap[i] = static_cast<int>(vertices.size());
      vertices.push_back(V[i]);
    }
  }
  for (Face& t : faces) {
    for (int& x : t) {
      x = remap[static_cast<std::size_t>(x)];
    }
  }
  return TriangulatedSurface(std::move(vertices), std::move(faces));
}

TriangulatedSurface make_mesh(const std::string& family, const std::map<std::string, double>& params) {
  auto get = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
    const auto it = params.find(key);
    if (it != params.end()) {
      return it->second;
    }
    if (fallback) {
      return *fallback;
    }
    throw std::invalid_argument("generator '" + family + "' needs parameter '" + key + "'");
  };
  auto get_int = [&](const std::string& key) {
    const double x = get(key);
    if (x != std::floor(x) || std::abs(x) > 1e9) {
      throw std::invalid_argument("parameter '" + key + "' must be an integer");
    }
    return static_cast<int>(x);
  };
  if (family == "disk") {
    return disk_mesh(get("R", 1.0), get("h"));
  }
  if (family == "saddle") {
    return saddle_mesh(get("R", 1.0), get("h"), get("a", 0.5));
  }
  if (family == "cylinder") {
    return cylinder_mesh(get("height", 1.0), get("h"));
  }
  if (family == "sphere") {
    return sphere_mesh(get("h"), get("cap", 0.0), get("south_cap", 0.0));
  }
  if (family == "jfold") {
    return sphere_jfold(get_int("j"), get("h"));
  }
  if (family == "wells") {
    return sphere_with_wells(get_int("N"), get("R_w"), get("v"), get("h"), get("hole", 0.0),
                             get("max_depth", std::numeric_limits<double>::infinity()));
  }
  if (family == "triangle") {
    return TriangulatedSurface({Vec3(0, 0, 0), Vec3(get("a", 1.0), 0, 0), Vec3(0, get("b", 1.0), 0)},
                               {Face{0, 1, 2}});
  }
  throw std::invalid_argument("unknown mesh family '" + family + "'");
}

}  // namespace rcomp::mesh
