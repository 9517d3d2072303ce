#include "siegel/report.hpp"

namespace siegel {

using nlohmann::ordered_json;

namespace {

ordered_json pair_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json coeffs_json(const IntPolynomial& p)
{
    // Strings keep arbitrary-precision coefficients exact.
    ordered_json out = ordered_json::array();
    for (const auto& c : p.coeffs()) out.push_back(c.str());
    return out;
}

ordered_json orbit_json(const OrbitData& o) { return {{"m", o.m}, {"n", o.n}}; }

const char* chart_name(Chart c) { return c == Chart::AffineZ ? "z=1" : "y=1"; }

ordered_json fixed_point_json(const FixedPointRecord& r)
{
    ordered_json j;
    j["label"] = r.label;
    j["location"] = to_string(r.location);
    j["chart"] = chart_name(r.chart);
    j["coords"] = ordered_json::array({pair_json(r.coords.x), pair_json(r.coords.y), pair_json(r.coords.z)});
    j["trace"] = to_json(r.trace);
    j["det"] = to_json(r.det);
    j["s"] = to_json(r.s);
    j["s_real"] = r.s_real;
    j["eigenvalues"] = ordered_json::array({to_json(r.eigenvalues[0]), to_json(r.eigenvalues[1])});
    j["resonance"] = r.resonance ? ordered_json::array({r.resonance->first, r.resonance->second}) : ordered_json(nullptr);
    j["residual"] = r.residual;
    return j;
}

ordered_json verdict_json(const PointVerdict& v)
{
    return {{"label", v.label},
            {"verdict", to_string(v.verdict)},
            {"s_in_0_4", to_string(v.s_verdict)},
            {"witness", v.witness ? ordered_json(*v.witness) : ordered_json(nullptr)},
            {"reason", v.reason}};
}

ordered_json strict_json(const StrictEvidence& e)
{
    return {{"class", e.fixed_class},
            {"resultant_degree", e.resultant_degree},
            {"squarefree_degree", e.squarefree_degree},
            {"prime", e.prime},
            {"irreducible", e.irreducible},
            {"note", e.note}};
}

const char* position_name(CirclePosition p)
{
    switch (p) {
    case CirclePosition::Outside: return "outside";
    case CirclePosition::Inside: return "inside";
    case CirclePosition::OnCircle: return "circle";
    }
    return "?";
}

}  // namespace

void RunConfig::validate() const
{
    if (!(root_tol > 0.0) || !(residual_tol > 0.0)) fail(ErrorKind::InvalidArgument, "tolerances must be positive");
}

ordered_json to_json(const ComplexBall& b) { return {{"center", pair_json(b.center())}, {"radius", b.radius()}}; }

ordered_json to_json(const RunConfig& cfg)
{
    ordered_json j;
    j["version"] = SIEGEL_VERSION;
    j["command"] = cfg.command;
    j["family"] = cfg.family;
    if (cfg.n) j["n"] = *cfg.n;
    if (cfg.k) j["k"] = *cfg.k;
    if (cfg.orbit) j["orbit"] = orbit_json(*cfg.orbit);
    j["tolerances"] = {{"root_tol", cfg.root_tol}, {"residual_tol", cfg.residual_tol}};
    j["strict"] = cfg.strict;
    j["seed"] = cfg.seed;
    return j;
}

ordered_json report_json(const CertificationReport& rep, const RunConfig& cfg)
{
    ordered_json j;
    j["config"] = to_json(cfg);
    j["family"] = rep.family;

    ordered_json params;
    params["delta0"] = to_json(rep.delta0);
    if (rep.cusp_n) params["n"] = *rep.cusp_n;
    if (rep.orbit) params["orbit"] = orbit_json(*rep.orbit);
    j["parameters"] = params;

    ordered_json roots = ordered_json::array();
    for (std::size_t i = 0; i < rep.salem_cert.roots.size(); ++i) {
        ordered_json r = to_json(rep.salem_cert.roots[i]);
        r["position"] = position_name(rep.salem_cert.positions[i]);
        roots.push_back(r);
    }
    j["salem"] = {{"coeffs", coeffs_json(rep.salem)},
                  {"degree", rep.salem.degree()},
                  {"roots", roots},
                  {"lambda", to_json(rep.lambda)},
                  {"entropy", rep.entropy}};

    ordered_json fps = ordered_json::array(), verdicts = ordered_json::array();
    for (const auto& r : rep.fixed_points) fps.push_back(fixed_point_json(r));
    for (const auto& v : rep.verdicts) verdicts.push_back(verdict_json(v));
    j["fixed_points"] = fps;
    j["verdicts"] = verdicts;
    j["counts"] = {{"SiegelCertified", rep.count(Verdict::SiegelCertified)},
                   {"NotRotation", rep.count(Verdict::NotRotation)},
                   {"Inconclusive", rep.count(Verdict::Inconclusive)}};
    j["matrix"] = {{"dim", rep.matrix.dim}, {"trace", rep.trace()}, {"bound", rep.bound()}};

    ordered_json ev;
    ev["witness_delta"] = rep.witness_delta ? to_json(*rep.witness_delta) : ordered_json(nullptr);
    if (rep.orbit_check) {
        ordered_json steps = ordered_json::array();
        for (const auto& s : rep.orbit_check->orbits)
            steps.push_back({{"label", s.label},
                             {"length", s.length},
                             {"residual", s.residual},
                             {"collision_step", s.collision_step ? ordered_json(*s.collision_step) : ordered_json(nullptr)},
                             {"collision_with", s.collision_with}});
        ev["orbit_check"] = {{"ok", rep.orbit_check->ok}, {"max_residual", rep.orbit_check->max_residual}, {"orbits", steps}};
    }
    if (!rep.strict.empty()) {
        ordered_json s = ordered_json::array();
        for (const auto& e : rep.strict) s.push_back(strict_json(e));
        ev["strict"] = s;
    }
    if (!rep.stages.empty()) ev["stages"] = rep.stages;
    if (rep.search) {
        const ApproxResult& a = *rep.search;
        ev["search"] = {{"orbit", orbit_json(a.orbit)},
                        {"salem_degree", a.salem.degree()},
                        {"delta0", to_json(a.delta0)},
                        {"delta_star", to_json(a.delta_star)},
                        {"dist0", a.dist0},
                        {"dist_star", a.dist_star},
                        {"polynomials_tried", a.polynomials_tried}};
    }
    j["evidence"] = ev;
    return j;
}

std::string render(const ordered_json& j) { return j.dump(2) + "\n"; }

int exit_code(const CertificationReport& rep) { return rep.count(Verdict::Inconclusive) > 0 ? 2 : 0; }

}  // namespace siegel
