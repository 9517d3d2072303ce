#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <iostream>

#include "siegel/report.hpp"

using namespace siegel;
using nlohmann::ordered_json;

namespace {

struct StageError {
    std::string stage;
    Error error;
};

template <class F>
auto run_stage(const std::string& stage, F&& fn)
{
    try {
        return fn();
    } catch (const Error& e) {
        throw StageError{stage, e};
    }
}

int emit(const ordered_json& j, const RunConfig& cfg)
{
    std::string text = render(j);
    if (cfg.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    f << text;
    if (!f) {
        std::cerr << "error [write] cannot write " << cfg.out << "\n";
        return 1;
    }
    return 0;
}

void check_residuals(const CertificationReport& rep, const RunConfig& cfg)
{
    if (rep.orbit_check && rep.orbit_check->max_residual > cfg.residual_tol)
        fail(ErrorKind::OrbitCollision, "orbit closure residual " + std::to_string(rep.orbit_check->max_residual) +
                                            " exceeds residual tolerance");
    for (const auto& r : rep.fixed_points)
        if (r.residual > cfg.residual_tol)
            fail(ErrorKind::NonConvergence, "fixed point " + r.label + " residual " + std::to_string(r.residual) +
                                                " exceeds residual tolerance");
}

void summarize(const CertificationReport& rep)
{
    std::cerr << rep.family << ": " << rep.count(Verdict::SiegelCertified) << " SiegelCertified, "
              << rep.count(Verdict::NotRotation) << " NotRotation, " << rep.count(Verdict::Inconclusive)
              << " Inconclusive of " << rep.fixed_points.size() << " fixed points (bound " << rep.bound() << ")\n";
}

int finish(const CertificationReport& rep, ordered_json j, const RunConfig& cfg)
{
    summarize(rep);
    if (int rc = emit(j, cfg)) return rc;
    return exit_code(rep);
}

CertifyOptions certify_options(const RunConfig& cfg) { return {.strict = cfg.strict, .root_tol = cfg.root_tol}; }

int cmd_cuspidal(RunConfig cfg)
{
    cfg.family = "cuspidal";
    if (*cfg.n < 1) fail(ErrorKind::InvalidArgument, "--n must be at least 1");
    CertificationReport rep = run_stage("certify_cuspidal", [&] { return certify_cuspidal(*cfg.n, certify_options(cfg)); });
    run_stage("residual_check", [&] {
        check_residuals(rep, cfg);
        return 0;
    });
    return finish(rep, report_json(rep, cfg), cfg);
}

int cmd_three_lines(RunConfig cfg)
{
    cfg.family = "three-lines";
    const OrbitData& orbit = *cfg.orbit;
    run_stage("validate", [&] {
        orbit.validate();
        return 0;
    });
    CertificationReport rep = run_stage("certify_three_lines", [&] { return certify_three_lines(orbit, certify_options(cfg)); });
    run_stage("residual_check", [&] {
        check_residuals(rep, cfg);
        return 0;
    });
    ordered_json j = report_json(rep, cfg);

    ordered_json per_root = ordered_json::array();
    for (int idx : upper_circle_roots(rep.salem_cert)) {
        const ComplexBall& delta = rep.salem_cert.roots[idx];
        ordered_json entry{{"delta", to_json(delta)}};
        try {
            CertificationReport at = certify_three_lines_at(orbit, delta, certify_options(cfg));
            ordered_json verdicts = ordered_json::array();
            for (const auto& v : at.verdicts) verdicts.push_back({v.label, to_string(v.verdict)});
            entry["verdicts"] = verdicts;
        } catch (const Error& e) {
            entry["error"] = std::string(to_string(e.kind())) + ": " + e.detail();
        }
        per_root.push_back(entry);
    }
    j["per_root"] = per_root;
    return finish(rep, j, cfg);
}

int cmd_theorem1(RunConfig cfg, const ApproxOptions& search)
{
    cfg.family = *cfg.k == 2 ? "cuspidal" : "three-lines";
    if (*cfg.k < 2) {
        std::cerr << "error [usage] k must be at least 2: k = 0 and k = 1 come from earlier constructions "
                     "(McMullen; Bedford-Kim) and are not built here\n";
        return 1;
    }
    PipelineOptions opts;
    opts.certify = certify_options(cfg);
    opts.seed = cfg.seed;
    opts.search = search;
    CertificationReport rep = run_stage("theorem1_pipeline", [&] { return theorem1_pipeline(*cfg.k, opts); });
    ordered_json j = report_json(rep, cfg);
    j["config"]["search"] = {{"eps", search.eps},
                             {"cap", search.cap},
                             {"acceptance", search.acceptance == Acceptance::Certified ? "certified" : "neighborhood"}};
    j["target"] = *cfg.k;
    return finish(rep, j, cfg);
}

int cmd_matrix(RunConfig cfg, const std::vector<int>& quad)
{
    ActionMatrix m = run_stage("matrix", [&] {
        if (!quad.empty()) {
            if (quad.size() != 3) fail(ErrorKind::InvalidArgument, "--quad takes three orbit lengths");
            return quad_action_matrix(quad[0], quad[1], quad[2]);
        }
        if (!cfg.orbit) fail(ErrorKind::InvalidArgument, "give --quad n1,n2,n3 or --m/--n");
        cfg.orbit->validate();
        return tl_action_matrix(*cfg.orbit);
    });
    SpectralData sd = run_stage("spectral_data", [&] { return spectral_data(m); });
    std::ostringstream os;
    os << dump_matrix(m);
    os << "trace " << m.trace() << "\n";
    os << "bound " << fixed_point_bound(m) << "\n";
    os << "charpoly " << sd.charpoly.str() << "\n";
    os << "salem " << sd.salem_part.str() << "\n";
    os << "cyclotomic";
    for (int k : sd.cyclo_orders) os << " " << k;
    os << "\n";
    os << "lambda " << sd.lambda.str() << "\n";
    os << "entropy " << ordered_json(sd.entropy).dump() << "\n";
    if (cfg.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        f << os.str();
        if (!f) return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Siegel disk certification for rational surface automorphisms"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool strict = false;
    double root_tol = 1e-12, residual_tol = 1e-8;
    std::uint64_t seed = 1;
    std::string out;
    auto common = [&](CLI::App* sub) {
        sub->add_flag("--strict", strict, "Add resultant / mod-p irreducibility evidence");
        sub->add_option("--seed", seed, "Seed for perturbations")->capture_default_str();
        sub->add_option("--root-tol", root_tol, "Root isolation tolerance")->capture_default_str();
        sub->add_option("--residual-tol", residual_tol, "Largest accepted orbit/fixed-point residual")->capture_default_str();
        sub->add_option("--out", out, "Write the report here instead of stdout");
    };

    int n = 8;
    auto* cusp = app.add_subcommand("cuspidal", "Cuspidal-cubic family with orbit lengths (n, n, n)");
    cusp->add_option("--n", n, "Orbit length")->capture_default_str();
    common(cusp);

    std::vector<int> mlist, nlist;
    auto* lines = app.add_subcommand("three-lines", "Three-lines family with given orbit data");
    lines->add_option("--m", mlist, "Orbit lengths of the a-points")->delimiter(',')->required();
    lines->add_option("--n", nlist, "Orbit lengths of the b-points")->delimiter(',')->required();
    common(lines);

    int k = 2;
    ApproxOptions search{.eps = 0.05, .cap = 12, .acceptance = Acceptance::Certified};
    bool neighborhood = false;
    auto* thm = app.add_subcommand("theorem1", "Exactly k Siegel centers");
    thm->add_option("--k", k, "Number of Siegel centers")->required();
    thm->add_option("--eps", search.eps, "Target neighborhood radius")->capture_default_str();
    thm->add_option("--cap", search.cap, "Largest orbit entry searched")->capture_default_str();
    thm->add_flag("--neighborhood", neighborhood, "Accept orbit data only within eps of both targets");
    common(thm);

    std::vector<int> quad, mm, mn;
    auto* mat = app.add_subcommand("matrix", "Action matrix, characteristic polynomial and entropy");
    mat->add_option("--quad", quad, "Orbit lengths n1,n2,n3 of the quadratic map")->delimiter(',');
    mat->add_option("--m", mm, "Three-lines a-orbit lengths")->delimiter(',');
    mat->add_option("--n", mn, "Three-lines b-orbit lengths")->delimiter(',');
    mat->add_option("--out", out, "Write the dump here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    cfg.strict = strict;
    cfg.seed = seed;
    cfg.root_tol = root_tol;
    cfg.residual_tol = residual_tol;
    cfg.out = out;
    try {
        cfg.validate();
        if (cusp->parsed()) {
            cfg.command = "cuspidal";
            cfg.n = n;
            return cmd_cuspidal(cfg);
        }
        if (lines->parsed()) {
            cfg.command = "three-lines";
            cfg.orbit = OrbitData{mlist, nlist};
            return cmd_three_lines(cfg);
        }
        if (thm->parsed()) {
            cfg.command = "theorem1";
            cfg.k = k;
            if (neighborhood) search.acceptance = Acceptance::Neighborhood;
            return cmd_theorem1(cfg, search);
        }
        cfg.command = "matrix";
        if (!mm.empty() || !mn.empty()) cfg.orbit = OrbitData{mm, mn};
        return cmd_matrix(cfg, quad);
    } catch (const StageError& e) {
        std::cerr << "error [" << e.stage << "] " << e.error.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error [" << cfg.command << "] " << e.what() << "\n";
        return 1;
    }
}
