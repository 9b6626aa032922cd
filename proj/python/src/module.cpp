#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "detsketch/commands.hpp"
#include "detsketch/errors.hpp"
#include "detsketch/incoherent.hpp"
#include "detsketch/inner_product.hpp"
#include "detsketch/norm_estimation.hpp"
#include "detsketch/point_query.hpp"
#include "detsketch/sparse_recovery.hpp"

namespace py = pybind11;
using namespace detsketch;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

DenseVector to_vector(const Array& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-d array");
  return DenseVector(std::vector<double>(a.data(), a.data() + a.size()));
}

DenseMatrix to_matrix(const Array& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  return DenseMatrix(rows, cols, std::vector<double>(a.data(), a.data() + a.size()));
}

Array from_vector(const DenseVector& v) {
  Array out(static_cast<py::ssize_t>(v.dim()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

Array from_matrix(const DenseMatrix& m) {
  Array out({static_cast<py::ssize_t>(m.rows()), static_cast<py::ssize_t>(m.cols())});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

IncoherentMatrix incoherent(const Array& a, double epsilon) {
  IncoherentMatrix m{to_matrix(a)};
  m.epsilon = epsilon;
  return m;
}

MatrixKind kind_from(const std::string& name) {
  const auto kind = parse_matrix_kind(name);
  if (!kind) throw ParameterError("unknown matrix kind '" + name + "'");
  return *kind;
}

}  // namespace

PYBIND11_MODULE(_detsketch, m) {
  m.doc() = "Deterministic linear sketches: incoherent matrices, point query, "
            "inner products, basis pursuit and norm estimation.";

  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_RuntimeError);

  m.def(
      "build_matrix",
      [](const std::string& kind, std::size_t n, double epsilon, std::optional<std::size_t> k,
         std::uint64_t seed, std::optional<double> rows_constant) {
        BuildOptions o;
        o.kind = kind_from(kind);
        o.n = n;
        o.epsilon = epsilon;
        o.k = k;
        o.seed = seed;
        o.rows_constant = rows_constant;
        const BuildResult r = build_matrix(o);
        py::dict info;
        info["kind"] = std::string(to_string(r.file.header.kind));
        info["n"] = r.file.header.n;
        info["m"] = r.file.header.m;
        info["epsilon"] = r.file.header.epsilon;
        info["verified"] = r.file.header.verified;
        info["k"] = r.file.header.k;
        info["formula"] = r.formula;
        return py::make_tuple(from_matrix(r.file.matrix), info);
      },
      py::arg("kind"), py::arg("n"), py::arg("epsilon") = 0.0, py::arg("k") = py::none(),
      py::arg("seed") = 0, py::arg("rows_constant") = py::none(),
      "Build a measurement matrix; returns (matrix, info).");

  m.def(
      "verify_coherence",
      [](const Array& a, double epsilon) {
        const CoherenceReport r = verify_coherence(to_matrix(a), epsilon);
        py::dict out;
        out["pass"] = r.pass;
        out["max_coherence"] = r.max_coherence;
        out["witness"] = py::make_tuple(r.witness_i, r.witness_j);
        out["max_norm_deviation"] = r.max_norm_deviation;
        return out;
      },
      py::arg("matrix"), py::arg("epsilon"));

  m.def(
      "point_query",
      [](const Array& a, double epsilon, const Array& sketch) {
        PointQuerySystem sys(incoherent(a, epsilon));
        return from_vector(decode(sys, to_vector(sketch)).x_prime);
      },
      py::arg("matrix"), py::arg("epsilon"), py::arg("sketch"),
      "x' = A^T s; every |x'_i - x_i| <= eps ||x_{-i}||_1.");

  m.def(
      "point_query_tail",
      [](const Array& a, double epsilon, const Array& b, std::size_t k, const Array& sketch_a,
         const Array& sketch_b) {
        RipMatrix rip{to_matrix(b), k};
        PointQuerySystem sys(incoherent(a, epsilon), std::move(rip));
        return from_vector(decode_tail(sys, to_vector(sketch_a), to_vector(sketch_b)).x_prime);
      },
      py::arg("matrix"), py::arg("epsilon"), py::arg("rip"), py::arg("k"), py::arg("sketch"),
      py::arg("rip_sketch"));

  m.def(
      "estimate_ip",
      [](const Array& a, double epsilon, const Array& sx, const Array& sy) {
        return estimate_ip(PointQuerySystem(incoherent(a, epsilon)), to_vector(sx), to_vector(sy))
            .value;
      },
      py::arg("matrix"), py::arg("epsilon"), py::arg("sketch_x"), py::arg("sketch_y"));

  m.def(
      "l1_minimize",
      [](const Array& b, const Array& sketch) {
        const L1MinSolution s = l1_minimize(to_matrix(b), to_vector(sketch));
        py::dict out;
        out["z"] = from_vector(s.z);
        out["objective"] = s.objective;
        out["residual"] = s.residual;
        out["status"] = std::string(to_string(s.status));
        out["iterations"] = s.iterations;
        return out;
      },
      py::arg("matrix"), py::arg("sketch"), "min ||z||_1 subject to B z = sketch.");

  m.def(
      "separation_oracle",
      [](const Array& x, double p, double q, double epsilon,
         double level) -> std::optional<Array> {
        const auto h = separation_oracle(to_vector(x), p, q, epsilon, level);
        if (!h) return std::nullopt;
        return from_vector(*h);
      },
      py::arg("x"), py::arg("p"), py::arg("q"), py::arg("epsilon"), py::arg("level"));

  m.def(
      "estimate_norm",
      [](const Array& a, double epsilon, const Array& z, double p, double q, double bracket_tol) {
        NormEstimator est(to_matrix(a), p, q, epsilon);
        NormSearchOptions opts;
        opts.bracket_tol = bracket_tol;
        const DenseVector sketch = to_vector(z);
        NormEstimate r;
        {
          py::gil_scoped_release release;
          r = estimate_norm(est, sketch, opts);
        }
        py::dict out;
        out["value"] = r.value;
        out["lo"] = r.lo;
        out["hi"] = r.hi;
        out["iterations"] = r.iterations;
        out["budget_exceeded"] = r.budget_exceeded;
        return out;
      },
      py::arg("matrix"), py::arg("epsilon"), py::arg("sketch"), py::arg("p") = 1.0,
      py::arg("q") = 2.0, py::arg("bracket_tol") = 1e-3,
      "min ||x||_q + eps ||x||_p over x with A x = sketch; A needs orthonormal rows.");

  m.def(
      "measurement_table",
      [](const std::vector<std::uint64_t>& ns, const std::vector<double>& epsilons) {
        py::list rows;
        for (const TableRow& r : measurement_table(ns, epsilons)) {
          py::dict d;
          d["n"] = r.n;
          d["epsilon"] = r.epsilon;
          d["random_sign"] = r.random_sign;
          d["gv"] = r.gv;
          d["reed_solomon"] = r.reed_solomon;
          d["crt"] = r.crt;
          rows.append(d);
        }
        return rows;
      },
      py::arg("ns") = kDefaultTableN, py::arg("epsilons") = kDefaultTableEpsilon);
}
