#include "rcomp/mesh/surface.hpp"

#include "rcomp/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <unordered_map>

namespace rcomp::mesh {

namespace {

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

std::string describe_face(std::size_t f, const Face& face) {
  std::ostringstream os;
  os << "face " << f << " (" << face[0] << " " << face[1] << " " << face[2] << ")";
  return os.str();
}

}  // namespace

TriangulatedSurface::TriangulatedSurface(std::vector<Vec3> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
  const std::size_t nv = vertices_.size();
  if (faces_.empty()) {
    throw ValidationError("mesh has no faces");
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (!vertices_[v].allFinite()) {
      throw ValidationError("vertex " + std::to_string(v) + " has a non-finite coordinate");
    }
  }

  vertex_faces_.assign(nv, {});
  {
    std::unordered_map<std::uint64_t, int> undirected;
    undirected.reserve(faces_.size() * 3);
    for (std::size_t f = 0; f < faces_.size(); ++f) {
      for (int i = 0; i < 3; ++i) {
        const int a = faces_[f][i];
        const int b = faces_[f][(i + 1) % 3];
        if (++undirected[edge_key(std::min(a, b), std::max(a, b))] > 2) {
          throw ValidationError("non-manifold edge (" + std::to_string(std::min(a, b)) + "," +
                                std::to_string(std::max(a, b)) + ") is shared by more than two faces (" +
                                describe_face(f, faces_[f]) + ")");
        }
      }
    }
  }
  std::unordered_map<std::uint64_t, int> directed;
  directed.reserve(faces_.size() * 3);
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    const Face& face = faces_[f];
    for (int i = 0; i < 3; ++i) {
      if (face[i] < 0 || static_cast<std::size_t>(face[i]) >= nv) {
        throw ValidationError(describe_face(f, face) + " references a missing vertex");
      }
    }
    if (face[0] == face[1] || face[1] == face[2] || face[0] == face[2]) {
      throw ValidationError(describe_face(f, face) + " repeats a vertex");
    }
    if (!(face_area(f) > 0.0)) {
      throw ValidationError(describe_face(f, face) + " is degenerate (zero area)");
    }
    for (int i = 0; i < 3; ++i) {
      const int a = face[i];
      const int b = face[(i + 1) % 3];
      auto [it, inserted] = directed.emplace(edge_key(a, b), static_cast<int>(f));
      if (!inserted) {
        std::ostringstream os;
        os << "inconsistent orientation: edge (" << a << "," << b
           << ") is traversed in the same direction by faces " << it->second << " and " << f;
        throw ValidationError(os.str());
      }
      vertex_faces_[static_cast<std::size_t>(a)].push_back(static_cast<int>(f));
    }
  }

  neighbors_.assign(nv, {});
  boundary_.assign(nv, 0);
  boundary_next_.assign(nv, -1);
  boundary_prev_.assign(nv, -1);
  double length_sum = 0.0;
  std::size_t edge_count = 0;
  for (const auto& [key, f] : directed) {
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    const bool has_twin = directed.count(edge_key(b, a)) > 0;
    if (!has_twin || a < b) {
      const double len = (vertices_[static_cast<std::size_t>(a)] - vertices_[static_cast<std::size_t>(b)]).norm();
      length_sum += len;
      max_edge_length_ = std::max(max_edge_length_, len);
      ++edge_count;
      neighbors_[static_cast<std::size_t>(a)].push_back(b);
      neighbors_[static_cast<std::size_t>(b)].push_back(a);
    }
    if (!has_twin) {
      if (boundary_next_[static_cast<std::size_t>(a)] != -1) {
        throw ValidationError("vertex " + std::to_string(a) +
                              " is pinched: it starts two boundary edges (non-manifold vertex)");
      }
      boundary_next_[static_cast<std::size_t>(a)] = b;
      boundary_prev_[static_cast<std::size_t>(b)] = a;
      boundary_[static_cast<std::size_t>(a)] = 1;
      boundary_[static_cast<std::size_t>(b)] = 1;
    }
  }
  mean_edge_length_ = edge_count ? length_sum / static_cast<double>(edge_count) : 0.0;

  for (std::size_t v = 0; v < nv; ++v) {
    if (vertex_faces_[v].empty()) {
      throw ValidationError("vertex " + std::to_string(v) + " is not referenced by any face");
    }
    auto& nb = neighbors_[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    // Walk the fan around v; it must reach every incident face.
    const int vi = static_cast<int>(v);
    auto local = [&](int f, int& next, int& prev) {
      const Face& t = faces_[static_cast<std::size_t>(f)];
      const int i = t[0] == vi ? 0 : (t[1] == vi ? 1 : 2);
      next = t[(i + 1) % 3];
      prev = t[(i + 2) % 3];
    };
    std::size_t reached = 1;
    const int start = vertex_faces_[v].front();
    for (int dir = 0; dir < 2; ++dir) {
      int f = start;
      while (true) {
        int next, prev;
        local(f, next, prev);
        // Forward: the face owning v->prev; backward: the face owning next->v.
        auto it = dir == 0 ? directed.find(edge_key(vi, prev)) : directed.find(edge_key(next, vi));
        if (it == directed.end() || it->second == start) {
          break;
        }
        f = it->second;
        ++reached;
      }
      if (!boundary_[v]) {
        break;
      }
    }
    if (reached != vertex_faces_[v].size()) {
      throw ValidationError("vertex " + std::to_string(v) +
                            " has a non-manifold neighbourhood (more than one fan)");
    }
  }

  // Chain boundary edges into loops.
  std::vector<char> visited(nv, 0);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!boundary_[v] || visited[v]) {
      continue;
    }
    std::vector<int> loop;
    int cur = static_cast<int>(v);
    while (!visited[static_cast<std::size_t>(cur)]) {
      visited[static_cast<std::size_t>(cur)] = 1;
      loop.push_back(cur);
      cur = boundary_next_[static_cast<std::size_t>(cur)];
      if (cur < 0) {
        throw ValidationError("boundary edges do not close into loops at vertex " +
                              std::to_string(loop.back()));
      }
    }
    if (cur != static_cast<int>(v)) {
      throw ValidationError("boundary loop through vertex " + std::to_string(v) + " is not closed");
    }
    boundary_loops_.push_back(std::move(loop));
  }
}

std::pair<int, int> TriangulatedSurface::boundary_neighbors(int v) const {
  return {boundary_prev_[static_cast<std::size_t>(v)], boundary_next_[static_cast<std::size_t>(v)]};
}

double TriangulatedSurface::face_area(std::size_t f) const {
  const Face& t = faces_[f];
  const Vec3& a = vertices_[static_cast<std::size_t>(t[0])];
  const Vec3& b = vertices_[static_cast<std::size_t>(t[1])];
  const Vec3& c = vertices_[static_cast<std::size_t>(t[2])];
  return 0.5 * (b - a).cross(c - a).norm();
}

double TriangulatedSurface::total_area() const {
  double sum = 0.0;
  for (std::size_t f = 0; f < faces_.size(); ++f) {
    sum += face_area(f);
  }
  return sum;
}

double ScalarField::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

std::size_t CutFlags::count() const {
  return static_cast<std::size_t>(std::count(flagged.begin(), flagged.end(), 1));
}

}  // namespace rcomp::mesh
