#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eitmono/io.hpp"
#include "eitmono/scan.hpp"

namespace py = pybind11;
using namespace eitmono;

PYBIND11_MODULE(_core, m) {
  m.doc() = "electrode-model simulation and definiteness-based anomaly detection";

  py::class_<Point2>(m, "Point2")
      .def(py::init([](double x, double y) { return Point2{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Point2::x)
      .def_readwrite("y", &Point2::y);

  py::class_<RegionSpec>(m, "RegionSpec")
      .def_static(
          "disk",
          [](double cx, double cy, double r) { return RegionSpec::disk(Point2{cx, cy}, r); },
          py::arg("cx"), py::arg("cy"), py::arg("radius"))
      .def_static(
          "polygon",
          [](const std::vector<std::pair<double, double>>& pts) {
            std::vector<Point2> vertices;
            for (const auto& [x, y] : pts) vertices.push_back({x, y});
            return RegionSpec::polygon(std::move(vertices));
          },
          py::arg("vertices"))
      .def("contains", [](const RegionSpec& r, double x, double y) {
        return r.contains(Point2{x, y});
      });

  py::class_<ElectrodeLayout>(m, "ElectrodeLayout")
      .def(py::init<>())
      .def_readwrite("count", &ElectrodeLayout::count)
      .def_readwrite("coverage", &ElectrodeLayout::coverage)
      .def_readwrite("start_angle", &ElectrodeLayout::start_angle);

  py::class_<Mesh>(m, "Mesh")
      .def_readonly("nodes", &Mesh::nodes)
      .def_readonly("triangles", &Mesh::triangles)
      .def_readonly("boundary_edges", &Mesh::boundary_edges)
      .def_readonly("electrode_of_edge", &Mesh::electrode_of_edge)
      .def_readonly("electrode_count", &Mesh::electrode_count)
      .def_readonly("level", &Mesh::level)
      .def_readonly("radius", &Mesh::radius)
      .def("node_count", &Mesh::node_count)
      .def("triangle_count", &Mesh::triangle_count)
      .def("total_area", &Mesh::total_area);

  m.def("build_disk_mesh", &build_disk_mesh, py::arg("radius"), py::arg("layout"),
        py::arg("target_h"));
  m.def("refine_mesh", &refine_mesh, py::arg("mesh"));
  m.def("elements_in_region", &elements_in_region, py::arg("mesh"), py::arg("region"));
  m.def("validate_mesh", &validate_mesh, py::arg("mesh"));

  py::enum_<FreqMode>(m, "FreqMode").value("DC", FreqMode::DC).value("AC", FreqMode::AC);
  py::enum_<TestCase>(m, "TestCase")
      .value("CaseA", TestCase::CaseA)
      .value("CaseB", TestCase::CaseB);

  py::class_<Inclusion>(m, "Inclusion")
      .def(py::init([](const RegionSpec& region, double sigma, double eps) {
             return Inclusion{region, sigma, eps};
           }),
           py::arg("region"), py::arg("sigma"), py::arg("eps"))
      .def_readwrite("region", &Inclusion::region)
      .def_readwrite("sigma", &Inclusion::sigma)
      .def_readwrite("eps", &Inclusion::eps);

  py::class_<Modulation>(m, "Modulation")
      .def(py::init([](const RegionSpec& region, double beta, int sign) {
             return Modulation{region, beta, sign};
           }),
           py::arg("region"), py::arg("beta"), py::arg("sign"))
      .def_readwrite("region", &Modulation::region)
      .def_readwrite("beta", &Modulation::beta)
      .def_readwrite("sign", &Modulation::sign);

  py::class_<Phantom>(m, "Phantom")
      .def(py::init<>())
      .def_readwrite("sigma_bg", &Phantom::sigma_bg)
      .def_readwrite("eps_bg", &Phantom::eps_bg)
      .def_readwrite("inclusions", &Phantom::inclusions)
      .def_readwrite("omega", &Phantom::omega);

  py::class_<ContrastConstants>(m, "ContrastConstants")
      .def_readonly("c", &ContrastConstants::c)
      .def_readonly("big_c", &ContrastConstants::big_c)
      .def_readonly("big_c_prime", &ContrastConstants::big_c_prime)
      .def_readonly("alpha", &ContrastConstants::alpha)
      .def_readonly("beta_max_a", &ContrastConstants::beta_max_a)
      .def_readonly("beta_max_b", &ContrastConstants::beta_max_b);

  m.def("contrast_constants", &contrast_constants, py::arg("phantom"));
  m.def("applicable_case", &applicable_case, py::arg("constants"));
  m.def("applicable_beta_max", &applicable_beta_max, py::arg("constants"), py::arg("test_case"));
  m.def("modulation_sign_for", &modulation_sign_for, py::arg("test_case"));
  m.def(
      "element_admittivity",
      [](const Phantom& phantom, const Mesh& mesh, FreqMode mode, const Modulation* modulation) {
        return element_admittivity(phantom, mesh, mode, modulation);
      },
      py::arg("phantom"), py::arg("mesh"), py::arg("mode"), py::arg("modulation") = nullptr);

  py::class_<DrivePatternSet>(m, "DrivePatternSet")
      .def_readonly("pairs", &DrivePatternSet::pairs)
      .def("size", &DrivePatternSet::size);

  m.def("adjacent_dipole_patterns", &adjacent_dipole_patterns, py::arg("electrode_count"));

  py::class_<MatrixProvenance>(m, "MatrixProvenance")
      .def_readonly("mode", &MatrixProvenance::mode)
      .def_readonly("modulation", &MatrixProvenance::modulation)
      .def_readonly("mesh_level", &MatrixProvenance::mesh_level)
      .def_readonly("omega", &MatrixProvenance::omega);

  py::class_<MeasurementMatrix>(m, "MeasurementMatrix")
      .def_readonly("entries", &MeasurementMatrix::entries)
      .def_readonly("provenance", &MeasurementMatrix::provenance)
      .def("symmetry_defect_rel", &MeasurementMatrix::symmetry_defect_rel)
      .def("symmetrize", &MeasurementMatrix::symmetrize);

  m.def(
      "simulate_matrix",
      [](const Mesh& mesh, const Phantom& phantom, FreqMode mode, const Modulation* modulation,
         const DrivePatternSet& patterns) {
        return simulate_matrix(mesh, phantom, mode, modulation, patterns);
      },
      py::arg("mesh"), py::arg("phantom"), py::arg("mode"), py::arg("modulation"),
      py::arg("patterns"));
  m.def("weighted_real_part", &weighted_real_part, py::arg("matrix"), py::arg("alpha"));
  m.def("difference_matrix", &difference_matrix, py::arg("modulated"), py::arg("ac"),
        py::arg("alpha"), py::arg("test_case"));
  m.def("eigen_spectrum", &eigen_spectrum, py::arg("A"));

  py::class_<DefinitenessReport>(m, "DefinitenessReport")
      .def_readonly("eigenvalues", &DefinitenessReport::eigenvalues)
      .def_readonly("delta", &DefinitenessReport::delta)
      .def_readonly("direction", &DefinitenessReport::direction)
      .def_readonly("verdict", &DefinitenessReport::verdict)
      .def_readonly("margin", &DefinitenessReport::margin);

  m.def("regularized_test", &regularized_test, py::arg("A"), py::arg("delta"),
        py::arg("test_case"));

  py::class_<ScanConfig>(m, "ScanConfig")
      .def(py::init<>())
      .def_readwrite("ball_radius", &ScanConfig::ball_radius)
      .def_readwrite("spacing", &ScanConfig::spacing)
      .def_readwrite("margin", &ScanConfig::margin)
      .def_readwrite("beta", &ScanConfig::beta)
      .def_readwrite("delta", &ScanConfig::delta)
      .def_readwrite("test_case", &ScanConfig::test_case)
      .def_readwrite("threads", &ScanConfig::threads);

  py::class_<BallResult>(m, "BallResult")
      .def_readonly("index", &BallResult::index)
      .def_property_readonly("center_x", [](const BallResult& b) { return b.center.x; })
      .def_property_readonly("center_y", [](const BallResult& b) { return b.center.y; })
      .def_readonly("radius", &BallResult::radius)
      .def_readonly("verdict", &BallResult::verdict)
      .def_readonly("margin", &BallResult::margin)
      .def_readonly("min_eigenvalue", &BallResult::min_eigenvalue)
      .def_readonly("failed", &BallResult::failed)
      .def_readonly("error", &BallResult::error);

  py::class_<ScanResult>(m, "ScanResult")
      .def_readonly("balls", &ScanResult::balls)
      .def_readonly("delta_used", &ScanResult::delta_used)
      .def_readonly("case_used", &ScanResult::case_used)
      .def_readonly("beta_used", &ScanResult::beta_used)
      .def_readonly("beta_exceeds_bound", &ScanResult::beta_exceeds_bound)
      .def_readonly("mesh_level", &ScanResult::mesh_level);

  m.def("run_scan", &run_scan, py::arg("phantom"), py::arg("mesh"), py::arg("patterns"),
        py::arg("config"), py::call_guard<py::gil_scoped_release>());
}
