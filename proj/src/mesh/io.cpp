#include "rcomp/mesh/io.hpp"

#include "rcomp/errors.hpp"
#include "rcomp/fileio.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace rcomp::mesh {

namespace {

std::string extension(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  for (auto& c : ext) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return ext;
}

// Line reader that skips blank lines and '#' comments, tracking line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::istringstream& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      if (line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      out.clear();
      out.str(line);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(source_, line_, message); }
  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 0;
};


}  // namespace

TriangulatedSurface read_off(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::istringstream ss;
  if (!reader.next(ss)) {
    reader.fail("empty file");
  }
  std::string magic;
  ss >> magic;
  if (magic != "OFF") {
    reader.fail("expected 'OFF' header, found '" + magic + "'");
  }
  long nv = -1, nf = -1, ne = 0;
  if (!(ss >> nv)) {
    if (!reader.next(ss)) {
      reader.fail("missing element counts");
    }
    ss >> nv;
  }
  if (!(ss >> nf) || nv < 0 || nf < 0) {
    reader.fail("malformed element counts");
  }
  ss >> ne;

  std::vector<Vec3> vertices;
  vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    if (!reader.next(ss)) {
      reader.fail("unexpected end of file in vertex list");
    }
    Vec3 p;
    if (!(ss >> p.x() >> p.y() >> p.z())) {
      reader.fail("malformed vertex");
    }
    vertices.push_back(p);
  }
  std::vector<Face> faces;
  faces.reserve(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    if (!reader.next(ss)) {
      reader.fail("unexpected end of file in face list");
    }
    int count = 0;
    Face f{};
    if (!(ss >> count)) {
      reader.fail("malformed face");
    }
    if (count != 3) {
      reader.fail("only triangles are supported (face with " + std::to_string(count) + " vertices)");
    }
    if (!(ss >> f[0] >> f[1] >> f[2])) {
      reader.fail("malformed face");
    }
    for (int idx : f) {
      if (idx < 0 || idx >= nv) {
        reader.fail("face index " + std::to_string(idx) + " out of range");
      }
    }
    faces.push_back(f);
  }
  return TriangulatedSurface(std::move(vertices), std::move(faces));
}

TriangulatedSurface read_obj(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  std::istringstream ss;
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  // OBJ face tokens look like "i", "i/t", "i/t/n" or "i//n"; negative = relative.
  auto parse_index = [&](const std::string& token) {
    const std::string head = token.substr(0, token.find('/'));
    std::size_t used = 0;
    long idx = 0;
    try {
      idx = std::stol(head, &used);
    } catch (const std::exception&) {
      reader.fail("malformed face index '" + token + "'");
    }
    if (used != head.size() || idx == 0) {
      reader.fail("malformed face index '" + token + "'");
    }
    const long resolved = idx > 0 ? idx - 1 : static_cast<long>(vertices.size()) + idx;
    if (resolved < 0 || resolved >= static_cast<long>(vertices.size())) {
      reader.fail("face index " + token + " out of range");
    }
    return static_cast<int>(resolved);
  };
  while (reader.next(ss)) {
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 p;
      if (!(ss >> p.x() >> p.y() >> p.z())) {
        reader.fail("malformed vertex");
      }
      vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string token;
      while (ss >> token) {
        idx.push_back(parse_index(token));
      }
      if (idx.size() != 3) {
        reader.fail("only triangles are supported (face with " + std::to_string(idx.size()) +
                    " vertices)");
      }
      faces.push_back({idx[0], idx[1], idx[2]});
    }
    // Other records (vt, vn, g, o, s, usemtl, ...) carry no geometry we use.
  }
  return TriangulatedSurface(std::move(vertices), std::move(faces));
}

TriangulatedSurface load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open mesh file");
  }
  const std::string ext = extension(path);
  if (ext == ".off") {
    return read_off(in, path);
  }
  if (ext == ".obj") {
    return read_obj(in, path);
  }
  throw ParseError(path, 0, "unsupported mesh extension '" + ext + "' (expected .off or .obj)");
}

void write_off(const TriangulatedSurface& surface, std::ostream& out) {
  out << "OFF\n" << surface.vertex_count() << ' ' << surface.face_count() << " 0\n";
  for (const Vec3& p : surface.vertices()) {
    out << format_double(p.x()) << ' ' << format_double(p.y()) << ' ' << format_double(p.z()) << '\n';
  }
  for (const Face& f : surface.faces()) {
    out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  }
}

void write_obj(const TriangulatedSurface& surface, std::ostream& out) {
  for (const Vec3& p : surface.vertices()) {
    out << "v " << format_double(p.x()) << ' ' << format_double(p.y()) << ' ' << format_double(p.z())
        << '\n';
  }
  for (const Face& f : surface.faces()) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
}

void save_mesh(const TriangulatedSurface& surface, const std::string& path) {
  std::ostringstream out;
  const std::string ext = extension(path);
  if (ext == ".off") {
    write_off(surface, out);
  } else if (ext == ".obj") {
    write_obj(surface, out);
  } else {
    throw std::invalid_argument("unsupported mesh extension '" + ext + "' (expected .off or .obj)");
  }
  write_file_atomic(path, out.str());
}

void save_field_csv(const ScalarField& field, const std::string& path) {
  std::ostringstream out;
  out << "vertex_id,value\n";
  for (std::size_t i = 0; i < field.size(); ++i) {
    out << i << ',' << format_double(field[i]) << '\n';
  }
  write_file_atomic(path, out.str());
}

ScalarField load_field_csv(const std::string& path, std::size_t vertex_count) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path, 0, "cannot open field file");
  }
  std::vector<double> values(vertex_count, 0.0);
  std::vector<char> seen(vertex_count, 0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    if (lineno == 1 && line.rfind("vertex_id", 0) == 0) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(path, lineno, "expected 'vertex_id,value'");
    }
    long id = 0;
    double value = 0.0;
    try {
      std::size_t used = 0;
      id = std::stol(line.substr(0, comma), &used);
      value = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError(path, lineno, "expected 'vertex_id,value'");
    }
    if (id < 0 || static_cast<std::size_t>(id) >= vertex_count) {
      throw ParseError(path, lineno, "vertex id " + std::to_string(id) + " out of range");
    }
    if (!std::isfinite(value)) {
      throw ParseError(path, lineno, "non-finite field value");
    }
    values[static_cast<std::size_t>(id)] = value;
    seen[static_cast<std::size_t>(id)] = 1;
  }
  for (std::size_t i = 0; i < vertex_count; ++i) {
    if (!seen[i]) {
      throw ParseError(path, 0, "no value for vertex " + std::to_string(i));
    }
  }
  return ScalarField(std::move(values));
}

}  // namespace rcomp::mesh
