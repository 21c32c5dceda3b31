#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "slgamma/errors.hpp"
#include "slgamma/jorgensen.hpp"
#include "slgamma/matrix_io.hpp"
#include "slgamma/moebius.hpp"
#include "slgamma/scalar.hpp"

namespace py = pybind11;
using namespace slgamma;

namespace {

/// Python-side scalar representation: exact "p/q" strings for rationals,
/// plain floats for float mode.
template <class S>
py::object scalar_out(const S& v) {
    if constexpr (scalar_traits<S>::exact) {
        return py::str(scalar_traits<S>::to_string(v));
    } else {
        return py::float_(v);
    }
}

template <class S>
S scalar_in(const py::object& v) {
    if (py::isinstance<py::int_>(v)) {
        return scalar_traits<S>::from_int(v.cast<long>());
    }
    if constexpr (scalar_traits<S>::exact) {
        const std::string text = py::str(v).cast<std::string>();
        auto parsed = scalar_traits<S>::parse(text);
        if (!parsed) throw Error("cannot parse scalar: '" + text + "'");
        return *parsed;
    } else {
        return v.cast<double>();
    }
}

template <class S>
void register_mode(py::module_& m) {
    using C = CliffordNumber<S>;
    using V = VectorElement<S>;
    using G = GammaElement<S>;
    using M = CliffordMatrix<S>;
    using P = ExtendedPoint<S>;

    m.attr("exact") = scalar_traits<S>::exact;
    m.attr("mode_name") = scalar_traits<S>::mode_name;

    py::class_<C>(m, "Clifford")
        .def(py::init([](const std::string& text) { return parse_clifford<S>(text); }),
             py::arg("text"), "parse the interchange grammar, e.g. '3/2 + 1*e1.e2'")
        .def_static("scalar",
                    [](const py::object& v) { return C(scalar_in<S>(v)); })
        .def_static("generator", &C::generator, py::arg("k"))
        .def("__str__", [](const C& a) { return to_string(a); })
        .def("__repr__",
             [](const C& a) {
                 return std::string("Clifford('") + to_string(a) + "', mode='" +
                        scalar_traits<S>::mode_name + "')";
             })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(-py::self)
        .def(py::self == py::self)
        .def("star", [](const C& a) { return star(a); })
        .def("prime", [](const C& a) { return prime(a); })
        .def("bar", [](const C& a) { return bar(a); })
        .def("norm_sq", [](const C& a) { return scalar_out(a.norm_sq()); })
        .def("norm", &C::norm)
        .def("real_part", [](const C& a) { return scalar_out(a.real_part()); })
        .def("is_zero", &C::is_zero)
        .def("is_real", &C::is_real)
        .def("is_vector", &C::is_vector);

    py::class_<V>(m, "Vector")
        .def(py::init([](const C& a) { return V(a); }), py::arg("value"),
             "wrap a grade <= 1 element; raises NotAVector otherwise")
        .def(py::init([](const std::string& text) { return parse_vector<S>(text); }),
             py::arg("text"))
        .def("value", &V::value)
        .def("inverse", [](const V& x) { return vector_inverse(x); })
        .def("norm_sq", [](const V& x) { return scalar_out(x.norm_sq()); })
        .def("is_zero", &V::is_zero)
        .def("__str__", [](const V& x) { return to_string(x.value()); })
        .def(py::self == py::self);

    py::class_<G>(m, "Gamma")
        .def_static(
            "from_factors",
            [](const std::vector<V>& fs) { return gamma_from_factors<S>(fs); },
            py::arg("factors"),
            "Gamma element as an ordered product of nonzero vectors")
        .def_static("scalar",
                    [](const py::object& v) { return gamma_scalar(scalar_in<S>(v)); })
        .def_readonly("value", &G::value)
        .def_readonly("factors", &G::factors)
        .def("inverse", [](const G& g) { return gamma_inverse(g); })
        .def("star", [](const G& g) { return gamma_star(g); })
        .def("prime", [](const G& g) { return gamma_prime(g); })
        .def("__str__", [](const G& g) { return to_string(g.value); });

    py::class_<P>(m, "Point")
        .def(py::init([](const V& v) { return P(v); }), py::arg("vector"))
        .def_static("infinity", &P::infinity)
        .def_static("zero", &P::zero)
        .def("is_infinity", &P::is_infinity)
        .def("vector", &P::vector)
        .def("__str__",
             [](const P& p) {
                 return p.is_infinity() ? std::string("inf")
                                        : to_string(p.vector().value());
             })
        .def(py::self == py::self);

    py::class_<M>(m, "Matrix")
        .def(py::init([](const C& a, const C& b, const C& c, const C& d) {
                 return M::from_entries(a, b, c, d);
             }),
             py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
        .def_static("identity", &M::identity)
        .def_static("diagonal",
                    [](const py::object& r, const py::object& s) {
                        return M::diagonal(scalar_in<S>(r), scalar_in<S>(s));
                    })
        .def_readonly("a", &M::a)
        .def_readonly("b", &M::b)
        .def_readonly("c", &M::c)
        .def_readonly("d", &M::d)
        .def_property_readonly(
            "level", [](const M& g) { return std::string(to_string(g.level)); })
        .def("set_evidence",
             [](M& g, const std::string& entry, const G& ev) {
                 if (entry == "a") g.ev_a = ev;
                 else if (entry == "b") g.ev_b = ev;
                 else if (entry == "c") g.ev_c = ev;
                 else if (entry == "d") g.ev_d = ev;
                 else throw Error("entry must be one of a, b, c, d");
             })
        .def("delta", [](const M& g) { return delta(g); })
        .def("trace", [](const M& g) { return trace(g); })
        .def("inverse", [](const M& g) { return inverse(g); })
        .def("__matmul__", [](const M& g, const M& h) { return matmul(g, h); })
        .def("apply",
             [](const M& g, const P& x, double tol) { return apply(g, x, tol); },
             py::arg("x"), py::arg("tol") = 1e-12)
        .def("is_vectorial",
             [](const M& g, double tol) { return is_vectorial(g, tol); },
             py::arg("tol") = 1e-12)
        .def("to_json", [](const M& g) { return io::matrix_to_json(g).dump(2); })
        .def("__repr__", [](const M& g) {
            return "Matrix(a=" + to_string(g.a) + ", b=" + to_string(g.b) +
                   ", c=" + to_string(g.c) + ", d=" + to_string(g.d) + ")";
        });

    m.def(
        "parse", [](const std::string& text) { return parse_clifford<S>(text); },
        py::arg("text"));
    m.def(
        "matrix_from_json",
        [](const std::string& text) {
            return io::matrix_from_json<S>(io::parse_json_text(text));
        },
        py::arg("json_text"));
    m.def(
        "validate",
        [](const M& g, const std::string& level, double tol) {
            ValidationLevel target = ValidationLevel::DeterminantChecked;
            if (level == "unchecked") target = ValidationLevel::Unchecked;
            else if (level == "determinant") target = ValidationLevel::DeterminantChecked;
            else if (level == "full") target = ValidationLevel::FullyCertified;
            else throw Error("level must be unchecked, determinant or full");
            return validate(g, target, tol);
        },
        py::arg("matrix"), py::arg("level") = "determinant", py::arg("tol") = 1e-12);
    m.def(
        "validate_best",
        [](M g, double tol) {
            const ValidationOutcome out = validate_best(g, tol);
            py::dict d;
            d["matrix"] = g;
            d["achieved"] = std::string(to_string(out.achieved));
            d["delta"] = out.delta_text;
            d["blocker"] = out.blocker;
            return d;
        },
        py::arg("matrix"), py::arg("tol") = 1e-12);
    m.def(
        "commutator",
        [](const M& f, const M& g, double tol) { return commutator(f, g, tol); },
        py::arg("f"), py::arg("g"), py::arg("tol") = 1e-12);
    m.def(
        "make_loxodromic",
        [](const py::object& r, const G& lambda, double tol) {
            return make_loxodromic(scalar_in<S>(r), lambda, tol);
        },
        py::arg("r"), py::arg("lambda_"), py::arg("tol") = 1e-12);
    m.def(
        "make_hyperbolic",
        [](const py::object& r, double tol) {
            return make_hyperbolic(scalar_in<S>(r), tol);
        },
        py::arg("r"), py::arg("tol") = 1e-12);
    m.def(
        "make_parabolic",
        [](const G& a, const G& b, double tol) { return make_parabolic(a, b, tol); },
        py::arg("a"), py::arg("b"), py::arg("tol") = 1e-12);
    m.def(
        "hyperbolic_trace_check",
        [](const M& g, double tol) { return hyperbolic_trace_check(g, tol); },
        py::arg("g"), py::arg("tol") = 1e-12);
    m.def(
        "orbit_probe",
        [](const std::vector<M>& gens, const P& x, std::size_t depth, double tol) {
            const OrbitReport rep = orbit_probe(gens, x, depth, tol);
            py::dict d;
            d["points_found"] = rep.points_found;
            d["saturated"] = rep.saturated;
            return d;
        },
        py::arg("generators"), py::arg("x"), py::arg("depth"), py::arg("tol") = 1e-12);

    using Label = ClassLabel<S>;
    py::class_<Label>(m, "ClassLabel")
        .def_property_readonly("kind", &Label::name)
        .def_property_readonly("r", [](const Label& l) { return scalar_out(l.r); })
        .def_readonly("lambda_", &Label::lambda)
        .def_readonly("a", &Label::a)
        .def_readonly("b", &Label::b);
    py::class_<LabeledMatrix<S>>(m, "LabeledMatrix")
        .def_readonly("matrix", &LabeledMatrix<S>::matrix)
        .def_readonly("label", &LabeledMatrix<S>::label);

    using Rep = JorgensenReport<S>;
    py::class_<Rep>(m, "JorgensenReport")
        .def_property_readonly("K", [](const Rep& r) { return scalar_out(r.K); })
        .def_readonly("w0", &Rep::w0)
        .def_property_readonly("term_f",
                               [](const Rep& r) { return scalar_out(r.term_f); })
        .def_property_readonly("term_comm",
                               [](const Rep& r) { return scalar_out(r.term_comm); })
        .def_property_readonly("J", [](const Rep& r) { return scalar_out(r.J); })
        .def_readonly("commutator_vectorial", &Rep::commutator_vectorial)
        .def_readonly("trace_f_real", &Rep::trace_f_real)
        .def_readonly("trace_comm_real", &Rep::trace_comm_real);

    using St = IterationState<S>;
    py::class_<St>(m, "IterationState")
        .def_readonly("m", &St::m)
        .def_readonly("g_m", &St::g_m)
        .def_readonly("w_m", &St::w_m)
        .def_property_readonly("w_re", [](const St& s) { return scalar_out(s.w_re); })
        .def_readonly("w_norm", &St::w_norm)
        .def_property_readonly("alpha",
                               [](const St& s) { return scalar_out(s.alpha); })
        .def_property_readonly("J_m", [](const St& s) { return scalar_out(s.J_m); })
        .def_readonly("entry_max_norm", &St::entry_max_norm);

    using Tr = IterationTrace<S>;
    py::class_<Tr>(m, "IterationTrace")
        .def_readonly("states", &Tr::states)
        .def_property_readonly(
            "status", [](const Tr& t) { return std::string(to_string(t.status)); })
        .def_property_readonly("r", [](const Tr& t) { return scalar_out(t.r); })
        .def_property_readonly("K", [](const Tr& t) { return scalar_out(t.K); })
        .def("to_csv", [](const Tr& t) { return io::trace_to_csv(t); });

    using Cert = CertificateOutcome<S>;
    py::class_<Cert>(m, "CertificateOutcome")
        .def_property_readonly("outcome", &Cert::name)
        .def_readonly("m", &Cert::m)
        .def_property_readonly("alpha",
                               [](const Cert& c) { return scalar_out(c.alpha); })
        .def_property_readonly("J", [](const Cert& c) { return scalar_out(c.J); })
        .def_property_readonly("K", [](const Cert& c) { return scalar_out(c.K); })
        .def("to_json", [](const Cert& c) { return io::certificate_to_json(c).dump(2); });

    using Row = ScanRow<S>;
    py::class_<Row>(m, "ScanRow")
        .def_property_readonly("r", [](const Row& r) { return scalar_out(r.r); })
        .def_property_readonly("w0", [](const Row& r) { return scalar_out(r.w0); })
        .def_property_readonly("K", [](const Row& r) { return scalar_out(r.K); })
        .def_property_readonly("J", [](const Row& r) { return scalar_out(r.J); })
        .def_readonly("outcome", &Row::outcome_name)
        .def_readonly("m", &Row::m)
        .def_property_readonly("alpha",
                               [](const Row& r) { return scalar_out(r.alpha); });

    m.def(
        "K_of", [](const M& f, double tol) { return scalar_out(K_of(f, tol)); },
        py::arg("f"), py::arg("tol") = 1e-12);
    m.def(
        "jorgensen_value",
        [](const M& f, const M& g, double tol) { return jorgensen_value(f, g, tol); },
        py::arg("f"), py::arg("g"), py::arg("tol") = 1e-12);
    m.def(
        "commutator_trace_identity_check",
        [](const M& f, const M& g, double tol) {
            return commutator_trace_identity_check(f, g, tol);
        },
        py::arg("f"), py::arg("g"), py::arg("tol") = 1e-12);
    m.def(
        "iterate",
        [](const M& f, const M& g, std::size_t max_steps, double tol, double bound) {
            return iterate(f, g, max_steps, tol, bound);
        },
        py::arg("f"), py::arg("g"), py::arg("max_steps") = 100,
        py::arg("tol") = 1e-12, py::arg("overflow_bound") = 1e30);
    m.def(
        "recursion_check",
        [](const Tr& trace, const py::object& K, double tol) {
            std::vector<py::dict> out;
            for (const RecursionStepCheck& chk :
                 recursion_check(trace, scalar_in<S>(K), tol)) {
                py::dict d;
                d["m"] = chk.m;
                d["applicable"] = chk.applicable;
                d["passed"] = chk.passed;
                out.push_back(std::move(d));
            }
            return out;
        },
        py::arg("trace"), py::arg("K"), py::arg("tol") = 1e-12);
    m.def(
        "contraction_bound_check",
        [](const Tr& trace, const py::object& K, std::size_t at, double tol) {
            return contraction_bound_check(trace, scalar_in<S>(K), at, tol);
        },
        py::arg("trace"), py::arg("K"), py::arg("m"), py::arg("tol") = 1e-12);
    m.def(
        "strictness_certificate",
        [](const M& f, const M& g, std::size_t max_steps, double tol) {
            return strictness_certificate(f, g, max_steps, tol);
        },
        py::arg("f"), py::arg("g"), py::arg("max_steps") = 100,
        py::arg("tol") = 1e-12);
    m.def(
        "scan_grid",
        [](const std::vector<py::object>& r_values,
           const std::vector<py::object>& w0_values, std::size_t max_steps,
           double tol) {
            std::vector<S> rs, ws;
            for (const auto& v : r_values) rs.push_back(scalar_in<S>(v));
            for (const auto& v : w0_values) ws.push_back(scalar_in<S>(v));
            const ScanResult<S> res = scan_grid(rs, ws, max_steps, tol);
            py::dict d;
            d["rows"] = res.rows;
            py::list skipped;
            for (const S& r : res.skipped_r) skipped.append(scalar_out(r));
            d["skipped_r"] = skipped;
            return d;
        },
        py::arg("r_values"), py::arg("w0_values"), py::arg("max_steps") = 100,
        py::arg("tol") = 1e-12);
    m.def(
        "scan_to_csv",
        [](const std::vector<Row>& rows) { return io::scan_to_csv(rows); },
        py::arg("rows"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Clifford-algebra Moebius toolkit: SL(Gamma), the Jorgensen "
              "functional and the strictness certificate engine";
    m.attr("__version__") = "0.1.0";

    const py::exception<Error> base_exc(m, "SlgammaError");
    py::register_exception<ParseError>(m, "SlgammaParseError", base_exc);
    py::register_exception<NotDiagonalHyperbolic>(m, "NotDiagonalHyperbolicError",
                                                  base_exc);
    py::register_exception<ZeroVector>(m, "ZeroVectorError", base_exc);
    py::register_exception<NotAVector>(m, "NotAVectorError", base_exc);
    py::register_exception<DeterminantNotOne>(m, "DeterminantNotOneError", base_exc);
    py::register_exception<EntryNotVectorCondition>(m, "EntryNotVectorConditionError",
                                                    base_exc);
    py::register_exception<MissingGammaEvidence>(m, "MissingGammaEvidenceError",
                                                 base_exc);
    py::register_exception<BadParameter>(m, "BadParameterError", base_exc);
    py::register_exception<NonVectorResult>(m, "NonVectorResultError", base_exc);
    py::register_exception<PreconditionNotMet>(m, "PreconditionNotMetError", base_exc);

    py::module_ rational = m.def_submodule("rational", "exact rational scalars");
    register_mode<Rational>(rational);
    py::module_ floating = m.def_submodule("floating", "float64 scalars");
    register_mode<double>(floating);

    m.def(
        "detect_mode",
        [](const std::string& path) {
            return io::detect_scalar_mode(io::load_json_file(path));
        },
        py::arg("path"), "scalar_mode declared by a matrix file");
    m.def(
        "load_matrix",
        [](const std::string& path) -> py::object {
            const nlohmann::json j = io::load_json_file(path);
            if (io::detect_scalar_mode(j) == "rational") {
                return py::cast(io::matrix_from_json<Rational>(j));
            }
            return py::cast(io::matrix_from_json<double>(j));
        },
        py::arg("path"), "load a matrix file in its declared scalar mode");
}
