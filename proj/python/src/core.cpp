// Python bindings for the rcomp core. Reports and sweep results cross the
// boundary as the same canonical JSON the CLI writes, parsed into dicts on
// the Python side.

#include "rcomp/currents.hpp"
#include "rcomp/errors.hpp"
#include "rcomp/mesh/generators.hpp"
#include "rcomp/mesh/io.hpp"
#include "rcomp/mesh/manifold.hpp"
#include "rcomp/profiles.hpp"
#include "rcomp/verify.hpp"
#include "rcomp/warped.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;
using namespace rcomp;

namespace {

py::object to_python(const std::string& json_text) {
  return py::module_::import("json").attr("loads")(json_text);
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

VerifyConfig make_config(std::uint64_t seed, const std::vector<double>& delta_grid, double tol_scale,
                         const std::vector<std::string>& checks) {
  VerifyConfig cfg;
  cfg.seed = seed;
  cfg.delta_grid = delta_grid;
  cfg.tol_scale = tol_scale;
  cfg.enabled = checks;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Comparison-geometry checks for manifolds with boundary";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<FocalPoleError>(m, "FocalPoleError", PyExc_ArithmeticError);

  py::class_<ComparisonProfile>(m, "ComparisonProfile")
      .def(py::init<int, double>(), py::arg("n"), py::arg("H"))
      .def_property_readonly("n", &ComparisonProfile::dimension)
      .def_property_readonly("H", &ComparisonProfile::mean_curvature)
      .def("__repr__", [](const ComparisonProfile& p) {
        return "ComparisonProfile(n=" + std::to_string(p.dimension()) +
               ", H=" + std::to_string(p.mean_curvature()) + ")";
      });

  m.def("area_ratio", &area_ratio, py::arg("profile"), py::arg("delta"));
  m.def("area_ratio_integral", &area_ratio_integral, py::arg("profile"), py::arg("delta2"),
        py::arg("delta1"));
  m.def("laplacian_bound", &laplacian_bound, py::arg("n"), py::arg("H"), py::arg("r"));
  m.def("focal_radius", &focal_radius, py::arg("profile"));
  m.def("diameter_bound", &diameter_bound, py::arg("profile"), py::arg("boundary_diameter"));
  m.def("volume_annulus_bound", &volume_annulus_bound, py::arg("profile"), py::arg("boundary_area"),
        py::arg("delta2"), py::arg("delta1"));
  m.def("swif_tail", &swif_tail, py::arg("profile"), py::arg("boundary_area"), py::arg("delta"));

  py::class_<WarpedProductManifold>(m, "WarpedManifold")
      .def_property_readonly("name", &WarpedProductManifold::name)
      .def_property_readonly("parameters", &WarpedProductManifold::parameters)
      .def_property_readonly("dimension", &WarpedProductManifold::dimension)
      .def_property_readonly("length", &WarpedProductManifold::length)
      .def_property_readonly("hypotheses_certified", &WarpedProductManifold::hypotheses_certified)
      .def("boundary_area", &WarpedProductManifold::boundary_area)
      .def("boundary_mean_curvature", &WarpedProductManifold::boundary_mean_curvature)
      .def("total_volume", &WarpedProductManifold::total_volume)
      .def("annulus_volume", &WarpedProductManifold::annulus_volume, py::arg("delta2"), py::arg("delta1"))
      .def("level_area", &WarpedProductManifold::level_area, py::arg("delta"))
      .def("radial_laplacian", &WarpedProductManifold::radial_laplacian, py::arg("delta"))
      .def("diameter", [](const WarpedProductManifold& w) { return w.diameter(); });

  m.def("make_warped", &make_warped, py::arg("family"), py::arg("params") = std::map<std::string, double>{},
        "Warped generator: ball (n, R), cylinder_cap (k, j), spherical_cap (k, theta0), "
        "exponential (k, L).");

  py::class_<mesh::MeshManifold>(m, "MeshManifold")
      .def_property_readonly("name", &mesh::MeshManifold::name)
      .def_property_readonly("parameters", &mesh::MeshManifold::parameters)
      .def_property_readonly("resolution", &mesh::MeshManifold::resolution)
      .def_property_readonly("vertex_count", [](const mesh::MeshManifold& mm) { return mm.surface().vertex_count(); })
      .def_property_readonly("face_count", [](const mesh::MeshManifold& mm) { return mm.surface().face_count(); })
      .def_property_readonly("hypotheses_certified", &mesh::MeshManifold::hypotheses_certified)
      .def_property_readonly("max_mean_curvature", &mesh::MeshManifold::max_mean_curvature)
      .def_property_readonly("boundary_length", &mesh::MeshManifold::boundary_length)
      .def_property_readonly("total_area", &mesh::MeshManifold::total_area)
      .def_property_readonly("max_distance", &mesh::MeshManifold::max_distance)
      .def("distance", [](const mesh::MeshManifold& mm) { return to_array(mm.distance().values()); })
      .def("cut_flags", [](const mesh::MeshManifold& mm) {
        std::vector<bool> out(mm.cut().flagged.size());
        for (std::size_t i = 0; i < out.size(); ++i) {
          out[i] = mm.cut()[i];
        }
        return out;
      });

  m.def(
      "make_mesh",
      [](const std::string& family, const std::map<std::string, double>& params) {
        return mesh::MeshManifold::build(mesh::make_mesh(family, params), family, params);
      },
      py::arg("family"), py::arg("params"),
      "Mesh generator: disk, saddle, cylinder, sphere, jfold, wells, triangle.");
  m.def(
      "load_mesh",
      [](const std::string& path, std::optional<std::vector<double>> field) {
        auto s = mesh::load_mesh(path);
        std::optional<mesh::ScalarField> f;
        if (field) {
          f = mesh::ScalarField(std::move(*field));
        }
        return mesh::MeshManifold::build(std::move(s), "mesh", {}, std::move(f));
      },
      py::arg("path"), py::arg("field") = py::none());
  m.def(
      "save_mesh", [](const mesh::MeshManifold& mm, const std::string& path) { mesh::save_mesh(mm.surface(), path); },
      py::arg("manifold"), py::arg("path"), "Writes OFF or OBJ by extension.");

  const std::vector<double> no_grid;
  const std::vector<std::string> all_checks;
  m.def(
      "verify",
      [](const WarpedProductManifold& w, std::uint64_t seed, const std::vector<double>& grid,
         double tol_scale, const std::vector<std::string>& checks) {
        const auto cfg = make_config(seed, grid, tol_scale, checks);
        std::string text;
        {
          py::gil_scoped_release release;
          text = run_suite(w, cfg).to_json();
        }
        return to_python(text);
      },
      py::arg("manifold"), py::arg("seed") = 1, py::arg("delta_grid") = no_grid,
      py::arg("tol_scale") = 1.0, py::arg("checks") = all_checks);
  m.def(
      "verify",
      [](const mesh::MeshManifold& mm, std::uint64_t seed, const std::vector<double>& grid,
         double tol_scale, const std::vector<std::string>& checks) {
        const auto cfg = make_config(seed, grid, tol_scale, checks);
        std::string text;
        {
          py::gil_scoped_release release;
          text = run_suite(mm, cfg).to_json();
        }
        return to_python(text);
      },
      py::arg("manifold"), py::arg("seed") = 1, py::arg("delta_grid") = no_grid,
      py::arg("tol_scale") = 1.0, py::arg("checks") = all_checks);

  m.def("flat_upper_inner", py::overload_cast<const WarpedProductManifold&, double>(&flat_upper_inner),
        py::arg("manifold"), py::arg("delta"));
  m.def("flat_upper_inner", py::overload_cast<const mesh::MeshManifold&, double>(&flat_upper_inner),
        py::arg("manifold"), py::arg("delta"));
  m.def("wells_flat_bound", &wells_flat_bound, py::arg("N"), py::arg("R_w"), py::arg("v"));

  m.def(
      "sweep",
      [](const std::string& family, int j_first, int j_last, const std::map<std::string, double>& params,
         std::vector<double> deltas, unsigned jobs) {
        SequenceOptions opts;
        opts.parameters = params;
        if (!deltas.empty()) {
          opts.deltas = std::move(deltas);
        }
        opts.jobs = jobs;
        std::string records;
        std::string verdict;
        std::string csv;
        {
          py::gil_scoped_release release;
          auto recs = classify_sequence(family, j_first, j_last, opts);
          records = sequence_json(recs).dump();
          verdict = summarize_sequence(recs, opts.thresholds).to_json().dump();
          csv = sequence_csv(recs);
        }
        py::dict out;
        out["records"] = to_python(records);
        out["verdict"] = to_python(verdict);
        out["csv"] = csv;
        return out;
      },
      py::arg("family"), py::arg("j_first"), py::arg("j_last"),
      py::arg("params") = std::map<std::string, double>{}, py::arg("deltas") = std::vector<double>{},
      py::arg("jobs") = 1);
}
