// Python bindings. Documents cross the boundary as JSON text in the same
// shapes the command line tool reads and writes.

#include "crnf/error.hpp"
#include "crnf/io.hpp"
#include "crnf/random.hpp"

#include <pybind11/pybind11.h>

#include <string>

namespace py = pybind11;
using crnf::io::Json;

namespace {

Json parse_text(const std::string &text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        throw crnf::ParseError(std::string("invalid JSON: ") + e.what());
    }
}

// Accepts a bare manifold document or a report carrying one.
crnf::Manifold load_manifold(const std::string &text)
{
    Json doc = parse_text(text);
    if (doc.is_object() && doc.contains("status") && doc.contains("manifold")) {
        doc = doc["manifold"];
    }
    return crnf::io::manifold_from_json(doc);
}

crnf::FormalMap load_map(const std::string &text)
{
    Json doc = parse_text(text);
    if (doc.is_object() && doc.contains("status") && doc.contains("map")) {
        doc = doc["map"];
    }
    return crnf::io::map_from_json(doc);
}

std::string extended_moser(const std::string &text)
{
    const auto r = crnf::extended_moser(load_manifold(text));
    const auto inv = crnf::moser_invariants(r.normalized);
    const std::string status = r.certificate.ok() ? crnf::kStatusPartial : "certificate violated";
    return crnf::io::report_to_json({status, &inv, &r.map, &r.normalized}).dump();
}

std::string full_normalize(const std::string &text)
{
    const auto r = crnf::full_normalize(load_manifold(text));
    return crnf::io::report_to_json({r.status, &r.invariants, &r.map, &r.normalized, &r.residuals, &r.solver_log})
        .dump();
}

std::string verify(const std::string &text)
{
    const auto m = load_manifold(text);
    const auto inv = crnf::moser_invariants(m);
    const auto res = crnf::verify_normal_form(m, inv);
    const std::string status = res.all_zero() ? "normal form verified" : "normalization conditions violated";
    return crnf::io::report_to_json({status, &inv, nullptr, &m, &res}).dump();
}

std::string push_forward(const std::string &manifold, const std::string &map)
{
    const auto m = load_manifold(manifold);
    const auto t = load_map(map);
    if (t.n_vars() != m.n_vars()) {
        throw crnf::DimensionError("map and manifold have different numbers of variables");
    }
    return crnf::io::manifold_to_json(crnf::push_forward(m, t)).dump();
}

std::string random_manifold(std::uint64_t seed, int n_vars, int degree, int s, const std::string &profile)
{
    return crnf::io::manifold_to_json(crnf::random_manifold(seed, n_vars, degree, s, crnf::parse_profile(profile)))
        .dump();
}

std::string invariants(const std::string &text)
{
    const auto inv = crnf::moser_invariants(crnf::extended_moser(load_manifold(text)).normalized);
    return crnf::io::invariants_to_json(inv).dump();
}

} // namespace

PYBIND11_MODULE(_crnf, m)
{
    m.doc() = "Exact normal forms of codimension-two real submanifolds with a CR singularity";

    py::register_exception<crnf::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<crnf::DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<crnf::DomainError>(m, "DomainError", PyExc_ArithmeticError);

    m.def("extended_moser", &extended_moser, py::arg("manifold"));
    m.def("full_normalize", &full_normalize, py::arg("manifold"));
    m.def("verify", &verify, py::arg("manifold"));
    m.def("push_forward", &push_forward, py::arg("manifold"), py::arg("map"));
    m.def("random_manifold", &random_manifold, py::arg("seed"), py::arg("n_vars"), py::arg("degree"), py::arg("s") = 3,
          py::arg("profile") = "generic");
    m.def("invariants", &invariants, py::arg("manifold"),
          "Invariants of the partial normal form: s, Delta, its partials and nondegeneracy.");
}
