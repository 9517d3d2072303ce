#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "siegel/report.hpp"

namespace py = pybind11;
using namespace siegel;

namespace {

std::vector<std::string> coeff_strings(const IntPolynomial& p)
{
    std::vector<std::string> out;
    for (const auto& c : p.coeffs()) out.push_back(c.str());
    return out;
}

std::vector<std::complex<double>> centers(const std::vector<ComplexBall>& balls)
{
    std::vector<std::complex<double>> out;
    for (const auto& b : balls) out.push_back(b.center());
    return out;
}

std::string report_string(const CertificationReport& rep, RunConfig cfg)
{
    return render(report_json(rep, cfg));
}

}  // namespace

PYBIND11_MODULE(_siegel, m)
{
    m.doc() = "Siegel disk certification core";
    m.attr("__version__") = SIEGEL_VERSION;

    // Held for the life of the interpreter; the module keeps its own reference too.
    static PyObject* error_type = py::exception<Error>(m, "SiegelError").inc_ref().ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error_type)(std::string(e.what()));
            exc.attr("kind") = to_string(e.kind());
            PyErr_SetObject(error_type, exc.ptr());
        }
    });

    m.def("poly_roots", [](const std::vector<long long>& coeffs) {
        return centers(poly_roots(ComplexPolynomial(IntPolynomial::from_ints(coeffs))).balls);
    }, py::arg("coeffs"), "Root centers of an integer polynomial, constant term first.");

    m.def("is_salem", [](const std::vector<long long>& coeffs) {
        SalemCheck c = is_salem(IntPolynomial::from_ints(coeffs));
        py::dict d;
        d["accepted"] = c.accepted;
        d["reason"] = c.reason;
        if (c.accepted) {
            d["lambda"] = c.certificate.lambda.center().real();
            d["n_circle_roots"] = c.certificate.n_circle_roots;
        }
        return d;
    }, py::arg("coeffs"));

    m.def("orbit_polynomial", [](int n) { return coeff_strings(orbit_polynomial(n)); }, py::arg("n"));
    m.def("salem_from_orbit", [](const std::vector<int>& ms, const std::vector<int>& ns) {
        return coeff_strings(salem_from_orbit(OrbitData{ms, ns}));
    }, py::arg("m"), py::arg("n"));

    m.def("action_matrix", [](const std::vector<int>& quad, const std::vector<int>& ms, const std::vector<int>& ns) {
        if (!quad.empty() && quad.size() != 3) fail(ErrorKind::InvalidArgument, "quad needs three orbit lengths");
        ActionMatrix a = quad.empty() ? tl_action_matrix(OrbitData{ms, ns}) : quad_action_matrix(quad[0], quad[1], quad[2]);
        SpectralData sd = spectral_data(a);
        py::dict d;
        d["labels"] = a.labels;
        d["entries"] = a.entries;
        d["trace"] = a.trace();
        d["bound"] = fixed_point_bound(a);
        d["preserves_form"] = preserves_form(a);
        d["charpoly"] = coeff_strings(sd.charpoly);
        d["salem"] = coeff_strings(sd.salem_part);
        d["entropy"] = sd.entropy;
        return d;
    }, py::arg("quad") = std::vector<int>{}, py::arg("m") = std::vector<int>{}, py::arg("n") = std::vector<int>{});

    m.def("certify_cuspidal", [](int n, bool strict) {
        RunConfig cfg;
        cfg.command = "cuspidal";
        cfg.family = "cuspidal";
        cfg.n = n;
        cfg.strict = strict;
        CertificationReport rep;
        {
            py::gil_scoped_release release;
            rep = certify_cuspidal(n, {.strict = strict});
        }
        return report_string(rep, cfg);
    }, py::arg("n"), py::arg("strict") = false, "JSON report text.");

    m.def("certify_three_lines", [](const std::vector<int>& ms, const std::vector<int>& ns, bool strict) {
        RunConfig cfg;
        cfg.command = "three-lines";
        cfg.family = "three-lines";
        cfg.orbit = OrbitData{ms, ns};
        cfg.strict = strict;
        CertificationReport rep;
        {
            py::gil_scoped_release release;
            rep = certify_three_lines(*cfg.orbit, {.strict = strict});
        }
        return report_string(rep, cfg);
    }, py::arg("m"), py::arg("n"), py::arg("strict") = false, "JSON report text.");

    m.def("theorem1", [](int k, std::uint64_t seed, bool strict) {
        RunConfig cfg;
        cfg.command = "theorem1";
        cfg.family = k == 2 ? "cuspidal" : "three-lines";
        cfg.k = k;
        cfg.seed = seed;
        cfg.strict = strict;
        PipelineOptions opts;
        opts.seed = seed;
        opts.certify.strict = strict;
        CertificationReport rep;
        {
            py::gil_scoped_release release;
            rep = theorem1_pipeline(k, opts);
        }
        return report_string(rep, cfg);
    }, py::arg("k"), py::arg("seed") = 1, py::arg("strict") = false, "JSON report text.");

    m.def("g_function", &g_function, py::arg("n"));
    m.def("equal_parameter_value", &equal_parameter_value, py::arg("n"), py::arg("a0"), py::arg("b0"), py::arg("d"),
          py::arg("l"));
}
