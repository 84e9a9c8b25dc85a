#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "framelab/framelab.hpp"

namespace py = pybind11;
namespace fl = framelab;

namespace {

fl::TolerancePolicy make_tol(double rel_eq, double rank_rel, double psd_floor) {
  fl::TolerancePolicy tol{rel_eq, rank_rel, psd_floor};
  tol.validate();
  return tol;
}

py::object as_python(const fl::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_framelab, m) {
  m.doc() = "Finite frames and discrete Gabor systems";

  // Messages already lead with the error kind.
  py::register_exception<fl::Error>(m, "FramelabError", PyExc_ValueError);

  py::class_<fl::TolerancePolicy>(m, "TolerancePolicy")
      .def(py::init(&make_tol), py::arg("rel_eq") = 1e-9, py::arg("rank_rel") = 1e-10,
           py::arg("psd_floor") = 1e-10)
      .def_readonly("rel_eq", &fl::TolerancePolicy::rel_eq)
      .def_readonly("rank_rel", &fl::TolerancePolicy::rank_rel)
      .def_readonly("psd_floor", &fl::TolerancePolicy::psd_floor);

  py::class_<fl::Frame>(m, "Frame")
      .def(py::init<fl::CMatrix, fl::TolerancePolicy>(), py::arg("synthesis"),
           py::arg("tol") = fl::TolerancePolicy{})
      .def_property_readonly("dim", &fl::Frame::dim)
      .def_property_readonly("size", &fl::Frame::size)
      .def_property_readonly("synthesis", &fl::Frame::synthesis)
      .def("frame_operator", &fl::Frame::frame_operator)
      .def("gram", &fl::Frame::gram)
      .def("rank", &fl::Frame::rank)
      .def("is_frame", &fl::Frame::is_frame);

  m.def("diagnostics", [](const fl::Frame& fr) { return as_python(fl::diagnostics_json(fl::diagnostics(fr))); });
  m.def("analyze", [](const fl::Frame& fr) { return as_python(fl::analyze_report(fr)); });
  m.def("canonical_dual", [](const fl::Frame& fr) { return fl::canonical_dual(fr).vectors; });
  m.def("canonical_tight", [](const fl::Frame& fr) { return fl::canonical_tight(fr).synthesis(); });
  m.def("is_dual", &fl::is_dual);
  m.def("frames_equivalent", &fl::frames_equivalent);
  m.def("naimark_projection", [](const fl::Frame& fr, bool require_tight) {
    return fl::naimark_dilate(fr, require_tight).projection;
  }, py::arg("frame"), py::arg("require_tight") = false);
  m.def("select_riesz_subset", &fl::select_riesz_subset);
  m.def("simplex_frame", [](fl::Index n) { return fl::simplex_frame(n).synthesis(); });
  m.def("repeat_staircase", [](fl::Index depth) {
    return fl::staircase_frame(fl::StaircaseKind::RepeatStaircase, depth).synthesis();
  });
  m.def("three_unitary", [](const fl::CMatrix& a, double eps) {
    const auto d = fl::three_unitary_decomposition(a, eps);
    return py::make_tuple(d.scale, d.u1, d.u2, d.u3);
  }, py::arg("a"), py::arg("eps") = 0.25);
  m.def("two_unitary", [](const fl::CMatrix& a) {
    const auto d = fl::two_unitary_decomposition(a);
    return py::make_tuple(d.scale, d.u1, d.u2);
  });

  py::class_<fl::GaborSystem>(m, "GaborSystem")
      .def(py::init<fl::CVector, fl::Index, fl::Index>(), py::arg("window"), py::arg("a"), py::arg("b"))
      .def_property_readonly("length", &fl::GaborSystem::length)
      .def_property_readonly("a", &fl::GaborSystem::a)
      .def_property_readonly("b", &fl::GaborSystem::b)
      .def_property_readonly("window", &fl::GaborSystem::window)
      .def("atoms", [](const fl::GaborSystem& s) { return fl::atoms(s).synthesis(); });

  m.def("walnut_apply", py::overload_cast<const fl::GaborSystem&, const fl::CVector&>(&fl::walnut_apply));
  m.def("direct_apply", &fl::direct_apply);
  m.def("frame_spectrum", [](const fl::GaborSystem& s) { return fl::FrameOperatorBlocks(s).spectrum(); });
  m.def("dual_window", [](const fl::GaborSystem& s) { return fl::dual_window(s); });
  m.def("canonical_tight_window", [](const fl::GaborSystem& s) { return fl::canonical_tight_window(s); });
  m.def("wexler_raz_check", [](const fl::GaborSystem& s, const fl::CVector& h) { return fl::wexler_raz_check(s, h); });
  m.def("gabor_report", [](const fl::GaborSystem& s) { return as_python(fl::gabor_report(s)); });
  m.def("periodized_gaussian", &fl::periodized_gaussian, py::arg("length"), py::arg("sigma") = 0.0);
  m.def("box_window", &fl::box_window);

  m.def("zak_forward", [](const fl::CVector& g, fl::Index a) { return fl::zak_forward(g, a).values; });
  m.def("zak_inverse", [](const fl::CMatrix& z, fl::Index length) {
    return fl::zak_inverse(fl::ZakArray{z.rows(), z.cols(), z}, length);
  });
  m.def("critical_spectrum", &fl::critical_spectrum);

  m.def("classify_translates", [](const fl::CVector& phi, fl::Index step) {
    const fl::TranslateSystem ts(phi, step);
    return as_python(fl::translates_json(ts, fl::classify_translates(ts)));
  });

  m.def("perturbation_report", [](const fl::Frame& f, const fl::Frame& g, double l1, double l2, double mu,
                                  std::uint64_t seed) {
    fl::MixedTestOptions opts;
    opts.seed = seed;
    return as_python(fl::perturbation_json(fl::perturbation_report(f, g, l1, l2, mu, opts)));
  }, py::arg("f"), py::arg("g"), py::arg("lambda1") = 0.0, py::arg("lambda2") = 0.0, py::arg("mu") = 0.0,
     py::arg("seed") = 0);

  m.def("finite_sections", [](const fl::Frame& fr, std::optional<fl::IndexSets> sets,
                              const std::vector<fl::CVector>& probes) {
    return as_python(fl::trace_json(fl::finite_sections(fr, sets.value_or(fl::prefix_sections(fr.size())), probes)));
  }, py::arg("frame"), py::arg("index_sets") = py::none(), py::arg("probes") = std::vector<fl::CVector>{});

  m.def("run_suite", [](std::uint64_t seed) { return as_python(fl::run_suite({seed, {}})); },
        py::arg("seed") = 0);
}
