#include "curvtree/commands.hpp"
#include "curvtree/errors.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace curvtree;

namespace {

std::vector<std::string> strings(const Vector &v) {
    std::vector<std::string> out;
    for (const auto &x : v)
        out.push_back(to_string(x));
    return out;
}

Vector scalars(const std::vector<std::string> &v) {
    Vector out;
    for (const auto &s : v)
        out.push_back(parse_scalar(s));
    return out;
}

// thin handle on a built algebra with its restricted roots
struct Algebra {
    Realization r;

    explicit Algebra(const std::string &descriptor) : r(build_from_descriptor(descriptor)) {}
    std::size_t dim() const { return r.algebra->dim(); }
    const std::vector<std::string> &labels() const { return r.algebra->labels(); }
    std::vector<std::string> roots() const {
        std::vector<std::string> out;
        if (r.roots)
            for (const auto &nu : r.roots->roots())
                out.push_back(r.roots->render(nu));
        return out;
    }
    std::vector<std::string> simple_roots() const {
        std::vector<std::string> out;
        if (r.roots)
            for (auto s : r.roots->simples())
                out.push_back(r.roots->render(r.roots->roots()[s]));
        return out;
    }
    std::string killing(const std::string &x, const std::string &y) const {
        return to_string(r.algebra->killing_form(basis_vector(*r.algebra, x), basis_vector(*r.algebra, y)));
    }
    std::string bracket(const std::string &x, const std::string &y) const {
        return render_vector(*r.algebra,
                             r.algebra->bracket(basis_vector(*r.algebra, x), basis_vector(*r.algebra, y)));
    }
    const RestrictedRootSystem &system() const {
        if (!r.roots)
            throw Error("algebra has no restricted root system");
        return *r.roots;
    }
    std::string inner(const std::string &a, const std::string &b) const {
        const auto &rs = system();
        return to_string(rs.inner(rs.parse_root(a), rs.parse_root(b)));
    }
    std::vector<std::string> dual(const std::string &a) const {
        const auto &rs = system();
        return strings(epsilon_values(rs, rs.dual(rs.parse_root(a))));
    }
    bool is_root(const std::string &a) const { return system().is_root(system().parse_root(a)); }
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact certification of harmonic curvature seeds";

    // translators run newest first, so the subclass goes last
    py::register_exception<Error>(m, "CurvtreeError", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "InputError", PyExc_ValueError);

    py::class_<Algebra>(m, "Algebra")
        .def(py::init<const std::string &>(), py::arg("descriptor"))
        .def_property_readonly("dim", &Algebra::dim)
        .def_property_readonly("labels", &Algebra::labels)
        .def_property_readonly("roots", &Algebra::roots)
        .def_property_readonly("simple_roots", &Algebra::simple_roots)
        .def("killing", &Algebra::killing, "Killing form of two basis vectors, as p/q")
        .def("bracket", &Algebra::bracket, "bracket of two basis vectors, rendered")
        .def("inner", &Algebra::inner, "Killing form on covectors of a")
        .def("dual", &Algebra::dual, "epsilon values of the Killing dual of a covector")
        .def("is_root", &Algebra::is_root);

    m.def("fixture_directory", &fixture_directory);
    m.def("list_fixtures", &list_fixtures);
    m.def(
        "enumerate",
        [](const std::string &algebra, const std::vector<std::size_t> &cross, unsigned parallel) {
            py::gil_scoped_release unlock;
            return cmd_enumerate(algebra, cross, parallel).to_json();
        },
        py::arg("algebra"), py::arg("cross"), py::arg("parallel") = 1);
    m.def(
        "certify_fixture",
        [](const std::string &name) {
            py::gil_scoped_release unlock;
            return cmd_certify(find_fixture(name)).to_json();
        },
        py::arg("name"));
    m.def(
        "certify_seed",
        [](const std::string &algebra, const std::vector<std::size_t> &cross, const std::string &seed) {
            py::gil_scoped_release unlock;
            return cmd_certify_inline(algebra, cross, seed).to_json();
        },
        py::arg("algebra"), py::arg("cross"), py::arg("seed"));
    m.def(
        "audit",
        [](const std::string &algebra, const std::vector<std::size_t> &cross, bool hodge) {
            py::gil_scoped_release unlock;
            AuditOptions o;
            o.hodge = hodge;
            return cmd_audit(algebra, cross, o).to_json();
        },
        py::arg("algebra"), py::arg("cross"), py::arg("hodge") = true);
    m.def(
        "cartan_from_epsilon",
        [](const std::string &algebra, const std::vector<std::string> &values) {
            Algebra a(algebra);
            return strings(epsilon_values(a.system(), cartan_from_epsilon(a.system(), scalars(values))));
        },
        "round trip of epsilon values through an element of a");
}
