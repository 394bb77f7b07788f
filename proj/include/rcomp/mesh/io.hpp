#pragma once

#include "rcomp/mesh/surface.hpp"

#include <iosfwd>
#include <string>

namespace rcomp::mesh {

/// Reads an ASCII OFF or OBJ file (chosen by extension). Parse errors carry
/// line numbers; structural problems surface as ValidationError.
TriangulatedSurface load_mesh(const std::string& path);
TriangulatedSurface read_off(std::istream& in, const std::string& source = "<off>");
TriangulatedSurface read_obj(std::istream& in, const std::string& source = "<obj>");

/// Writes OFF or OBJ by extension with 17 significant digits, so an OFF
/// save/load/save cycle reproduces the file byte for byte.
void save_mesh(const TriangulatedSurface& surface, const std::string& path);
void write_off(const TriangulatedSurface& surface, std::ostream& out);
void write_obj(const TriangulatedSurface& surface, std::ostream& out);

/// CSV with header "vertex_id,value".
void save_field_csv(const ScalarField& field, const std::string& path);
ScalarField load_field_csv(const std::string& path, std::size_t vertex_count);

}  // namespace rcomp::mesh
