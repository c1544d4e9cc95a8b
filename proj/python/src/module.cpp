#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pwgraph/pwgraph.hpp"

namespace py = pybind11;
using namespace pwgraph;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::array_t<double> to_numpy(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> to_numpy(const Signal& s) { return to_numpy(s.vector()); }

py::array_t<double> to_numpy(const Matrix& m) {
  const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())};
  return py::array_t<double>(shape, m.data().data());
}

std::vector<double> to_vector(const Array& a) {
  if (a.ndim() != 1) throw py::value_error("expected a one-dimensional array");
  return {a.data(), a.data() + a.size()};
}

Signal to_signal(const Array& a) { return Signal(to_vector(a)); }

VertexSet as_set(const Graph& g, const py::handle& h) {
  if (py::isinstance<VertexSet>(h)) return h.cast<VertexSet>();
  return VertexSet::make(g, h.cast<std::vector<Vertex>>());
}

py::dict trace_dict(const ReconstructionTrace& t) {
  py::list entries;
  for (const auto& e : t.entries) {
    py::dict d;
    d["l"] = e.l;
    d["k"] = e.k;
    d["error"] = e.error ? py::cast(*e.error) : py::none();
    d["bound"] = e.bound;
    d["gram_condition"] = e.gram_condition;
    entries.append(d);
  }
  py::dict out;
  out["omega"] = t.omega;
  out["lambda"] = t.lambda;
  out["eps"] = t.eps;
  out["gamma"] = t.gamma;
  out["bound_is_relative"] = t.bound_is_relative;
  out["stop_reason"] = std::string(to_string(t.stop_reason));
  out["entries"] = entries;
  return out;
}

}  // namespace

PYBIND11_MODULE(_pwgraph, m) {
  m.doc() = "Variational splines and Paley-Wiener reconstruction on graphs";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<Error> numerical(m, "NumericalError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyObject* type = is_numerical(e.code()) ? numerical.ptr() : error.ptr();
      py::object exc = py::reinterpret_borrow<py::object>(type)(e.what());
      exc.attr("module") = e.module();
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(type, exc.ptr());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); },
          py::arg("n"), py::arg("edges"))
      .def_static("from_edge_list",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return read_edge_list(in);
                  })
      .def_property_readonly("vertex_count", &Graph::vertex_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("max_degree", &Graph::max_degree)
      .def("degree", &Graph::degree)
      .def("neighbors",
           [](const Graph& g, Vertex v) {
             if (v >= g.vertex_count()) throw py::index_error("vertex out of range");
             auto n = g.neighbors(v);
             return std::vector<Vertex>(n.begin(), n.end());
           })
      .def("adjacent", &Graph::adjacent)
      .def("edges", &Graph::edges)
      .def("to_edge_list",
           [](const Graph& g) {
             std::ostringstream out;
             write_edge_list(out, g);
             return out.str();
           })
      .def("__len__", &Graph::vertex_count)
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.vertex_count()) + " edges=" + std::to_string(g.edge_count()) + ">";
      });

  m.def("cycle_graph", &cycle_graph, py::arg("m"));
  m.def("path_graph", &path_graph, py::arg("m"));
  m.def(
      "torus_graph", [](const std::vector<std::size_t>& dims) { return torus_graph(dims); }, py::arg("dims"));
  m.def(
      "laplacian", [](const Graph& g) { return to_numpy(dense_laplacian(g)); }, py::arg("graph"),
      "Dense normalized Laplacian.");
  m.def(
      "apply_laplacian", [](const Graph& g, const Array& f) { return to_numpy(apply_laplacian(g, to_signal(f))); },
      py::arg("graph"), py::arg("f"));

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_property_readonly("graph", &SpectralDecomposition::graph)
      .def_property_readonly("eigenvalues", [](const SpectralDecomposition& d) { return to_numpy(d.eigenvalues()); })
      .def_property_readonly("basis", [](const SpectralDecomposition& d) { return to_numpy(d.basis()); },
                             "Orthonormal eigenvectors as columns.")
      .def_property_readonly("residual", &SpectralDecomposition::residual)
      .def("band_size", &SpectralDecomposition::band_size, py::arg("omega"))
      .def("__len__", &SpectralDecomposition::size);

  m.def("decompose", [](const Graph& g) { return decompose(g); }, py::arg("graph"));
  m.def(
      "fourier", [](const SpectralDecomposition& d, const Array& f) { return to_numpy(fourier(d, to_signal(f))); },
      py::arg("d"), py::arg("f"));
  m.def(
      "inverse_fourier",
      [](const SpectralDecomposition& d, const Array& c) { return to_numpy(inverse_fourier(d, to_vector(c))); },
      py::arg("d"), py::arg("coefficients"));
  m.def(
      "operator_power",
      [](const SpectralDecomposition& d, double eps, double t, const Array& f) {
        return to_numpy(operator_power(d, eps, t, to_signal(f)));
      },
      py::arg("d"), py::arg("eps"), py::arg("t"), py::arg("f"), "(eps I + L)^t f");
  m.def(
      "sobolev_norm",
      [](const SpectralDecomposition& d, double eps, double t, const Array& f) {
        return sobolev_norm(d, eps, t, to_signal(f));
      },
      py::arg("d"), py::arg("eps"), py::arg("t"), py::arg("f"));
  m.def(
      "pw_project",
      [](const SpectralDecomposition& d, double omega, const Array& f) {
        return to_numpy(pw_project(d, omega, to_signal(f)));
      },
      py::arg("d"), py::arg("omega"), py::arg("f"));
  m.def(
      "bernstein_ratio",
      [](const SpectralDecomposition& d, const Array& f, double s) { return bernstein_ratio(d, to_signal(f), s); },
      py::arg("d"), py::arg("f"), py::arg("s"));
  m.def(
      "min_bandwidth",
      [](const SpectralDecomposition& d, const Array& f, double tol) { return min_bandwidth(d, to_signal(f), tol); },
      py::arg("d"), py::arg("f"), py::arg("tol") = 1e-10);

  py::class_<SplineModel>(m, "SplineModel")
      .def_readonly("constraint_set", &SplineModel::constraint_set)
      .def_readonly("order", &SplineModel::order)
      .def_readonly("eps", &SplineModel::eps)
      .def_property_readonly("targets", [](const SplineModel& s) { return to_numpy(s.targets); })
      .def_property_readonly("alpha", [](const SplineModel& s) { return to_numpy(s.alpha); })
      .def_property_readonly("solution", [](const SplineModel& s) { return to_numpy(s.solution); })
      .def_readonly("sobolev_energy", &SplineModel::sobolev_energy)
      .def_readonly("gram_condition", &SplineModel::gram_condition);

  m.def(
      "fit_spline",
      [](const SpectralDecomposition& d, std::vector<Vertex> w, const Array& y, double t, double eps,
         double max_condition) { return fit_spline(d, std::move(w), to_vector(y), t, eps, max_condition); },
      py::arg("d"), py::arg("w"), py::arg("y"), py::arg("t"), py::arg("eps"),
      py::arg("max_condition") = kMaxGramCondition);
  m.def("lagrangian_splines", &lagrangian_splines, py::arg("d"), py::arg("w"), py::arg("t"), py::arg("eps"));
  m.def(
      "optimality_margin",
      [](const SpectralDecomposition& d, const SplineModel& model, const Array& g) {
        return optimality_margin(d, model, to_signal(g));
      },
      py::arg("d"), py::arg("model"), py::arg("g"));

  py::class_<VertexSet>(m, "VertexSet")
      .def(py::init([](const Graph& g, std::vector<Vertex> members) { return VertexSet::make(g, std::move(members)); }),
           py::arg("graph"), py::arg("members"))
      .def_property_readonly("members", &VertexSet::members)
      .def_property_readonly("boundary", &VertexSet::boundary)
      .def("closure", &VertexSet::closure)
      .def("complement", &VertexSet::complement)
      .def("__contains__", &VertexSet::contains)
      .def("__len__", &VertexSet::size);

  m.def(
      "poincare_constant",
      [](const SpectralDecomposition& d, const py::handle& s, double eps) {
        return poincare_constant(d, as_set(d.graph(), s), eps);
      },
      py::arg("d"), py::arg("s"), py::arg("eps") = 0.0);
  m.def("segment_bound", &segment_bound, py::arg("n"));
  m.def(
      "rectangular_bound", [](const std::vector<std::size_t>& dims) { return rectangular_bound(dims); },
      py::arg("dims"));
  m.def("uniqueness_threshold", &uniqueness_threshold, py::arg("lam"));
  m.def("omega_star", &omega_star, py::arg("graph"));
  m.def("segment_count_limit", &segment_count_limit, py::arg("omega"));
  m.def(
      "verify_uniqueness",
      [](const SpectralDecomposition& d, const py::handle& u, double omega) {
        const auto r = verify_uniqueness(d, as_set(d.graph(), u), omega);
        return py::make_tuple(r.unique, r.margin);
      },
      py::arg("d"), py::arg("u"), py::arg("omega"), "Returns (unique, margin).");
  m.def(
      "power_inequality_check",
      [](const SpectralDecomposition& d, const py::handle& s, double eps, double a, unsigned l_max,
         std::uint64_t seed, std::size_t trials) {
        py::list out;
        for (const auto& e : power_inequality_check(d, as_set(d.graph(), s), eps, a, l_max, seed, trials)) {
          py::dict row;
          row["trial"] = e.trial;
          row["k"] = e.k;
          row["lhs"] = e.lhs;
          row["rhs"] = e.rhs;
          row["holds"] = e.holds;
          out.append(row);
        }
        return out;
      },
      py::arg("d"), py::arg("s"), py::arg("eps"), py::arg("a"), py::arg("l_max"), py::arg("seed") = 0,
      py::arg("trials") = 1);

  m.def("choose_epsilon", &choose_epsilon, py::arg("lam"), py::arg("omega"), py::arg("floor") = 1.0,
        py::arg("smallest_eigenvalue") = 0.0);
  m.def(
      "synthesize_pw_signal",
      [](const SpectralDecomposition& d, double omega, std::uint64_t seed) {
        return to_numpy(synthesize_pw_signal(d, omega, seed));
      },
      py::arg("d"), py::arg("omega"), py::arg("seed") = 0);
  m.def(
      "reconstruct",
      [](const SpectralDecomposition& d, const py::handle& s, const Array& samples, double omega,
         std::optional<double> eps, unsigned l_max, std::optional<double> lam, std::optional<Array> ground_truth,
         double eps_floor) {
        const VertexSet set = as_set(d.graph(), s);
        ReconstructOptions opt;
        opt.omega = omega;
        opt.l_max = l_max;
        opt.lambda = lam ? *lam : poincare_constant(d, set);
        if (ground_truth) opt.ground_truth = to_signal(*ground_truth);
        opt.eps = eps ? *eps : choose_epsilon(*opt.lambda, omega, eps_floor, d.smallest());
        const auto r = reconstruct(d, set, to_vector(samples), opt);
        return py::make_tuple(to_numpy(r.signal), trace_dict(r.trace));
      },
      py::arg("d"), py::arg("s"), py::arg("samples"), py::arg("omega"), py::arg("eps") = py::none(),
      py::arg("l_max") = 6, py::arg("lam") = py::none(), py::arg("ground_truth") = py::none(),
      py::arg("eps_floor") = 1.0,
      "Recovers a signal from samples on V \\ S. Returns (signal, trace).");
}
