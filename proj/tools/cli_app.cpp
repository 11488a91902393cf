#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "micz/coeffs.hpp"
#include "micz/error.hpp"
#include "micz/interbasis.hpp"
#include "micz/sector.hpp"
#include "micz/spheroidal.hpp"
#include "micz/wavefield.hpp"

namespace micz::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    long n = 0, Q = 0, L = 0, J = 0;
    std::string Z = "1";
    std::string mode = "float";
    std::string format = "record";
    int nodes = 48;
    double tol = 1e-8;
    bool tol_given = false;
    std::string a;
    double a_min = 0.01;
    double a_max = 100.0;
    int points = 50;
    bool log_spaced = false;
};

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json exact_json(const RadicalScalar& x)
{
    return Json{{"coeff", to_string(x.coeff())}, {"radicand", to_string(x.radicand())}};
}

Json sector_json(const Sector& s)
{
    return Json{{"n", std::to_string(s.n)},
                {"Q", std::to_string(s.Q)},
                {"L", std::to_string(s.L)},
                {"J", std::to_string(s.J)},
                {"Z", to_string(s.Z)}};
}

std::string half(HalfInt h)
{
    return h.is_integer() ? std::to_string(h.as_int()) : std::to_string(h.twice()) + "/2";
}

bool exact(const Options& o)
{
    return o.mode == "exact";
}

double require_a(const Options& o)
{
    if (o.a.empty())
        throw Error(ErrorCode::InvalidArgument, "--a is required");
    double a = to_float(parse_rational(o.a));
    if (!(a > 0.0))
        throw Error(ErrorCode::DomainError, "--a must be positive");
    return a;
}

Json dense_json(const ExactMatrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j)
            row.push_back(exact_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json dense_json_float(const ExactMatrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j)
            row.push_back(fmt(to_float(m.at(i, j))));
        rows.push_back(row);
    }
    return rows;
}

Json dense_json(const Matrix& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols; ++j)
            row.push_back(fmt(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Json cmd_states(const Sector& s, const Options& o)
{
    Json lambdas = Json::array();
    for (HalfInt l : lambda_range(s))
        lambdas.push_back(half(l));
    Json nps = Json::array();
    Json m9 = Json::array();
    for (int p : np_range(s)) {
        nps.push_back(std::to_string(p));
        m9.push_back(half(m9_parabolic_eigenvalue(s, p)));
    }
    Json p;
    p["N"] = std::to_string(s.dimension());
    p["lambda"] = lambdas;
    p["n_p"] = nps;
    if (exact(o)) {
        p["E"] = to_string(energy(s));
        p["alpha"] = to_string(alpha_scale(s));
    } else {
        p["E"] = fmt(to_float(energy(s)));
        p["alpha"] = fmt(to_float(alpha_scale(s)));
    }
    p["m9_eigenvalues"] = m9;
    return p;
}

Json cmd_wmatrix(const Sector& s, const Options& o)
{
    auto w = w_matrix(s);
    Json p;
    p["N"] = std::to_string(s.dimension());
    p["entries"] = exact(o) ? dense_json(w.entries) : dense_json_float(w.entries);
    return p;
}

Json cmd_m9(const Sector& s, const Options& o)
{
    auto closed = to_dense(m9_spherical_matrix(s));
    auto brute = m9_matrix_bruteforce(s);
    Json p;
    p["matrix"] = exact(o) ? dense_json(closed) : dense_json_float(closed);
    p["bruteforce_equal"] = closed == brute ? "true" : "false";
    Json expected = Json::array();
    for (int np : np_range(s))
        expected.push_back(half(m9_parabolic_eigenvalue(s, np)));
    p["expected_eigenvalues"] = expected;
    if (!exact(o)) {
        const auto m = m9_spherical_matrix(s);
        SymTridiagonal t;
        for (const auto& d : m.diag)
            t.diag.push_back(to_float(d));
        for (const auto& e : m.offdiag)
            t.offdiag.push_back(to_float(e));
        Json ev = Json::array();
        for (double v : tridiagonal_eigenvalues(t))
            ev.push_back(fmt(v));
        p["eigenvalues"] = ev;
    }
    return p;
}

Json cmd_kspectrum(const Sector& s, const Options& o)
{
    const double a = require_a(o);
    Json p;
    if (exact(o)) {
        Rational aq = parse_rational(o.a);
        Rational aZ = aq * s.Z;
        aZ.canonicalize();
        auto k = build_k_matrix_exact(s, aZ);
        Json diag = Json::array();
        for (const auto& d : k.diag)
            diag.push_back(exact_json(d));
        Json off = Json::array();
        for (const auto& e : k.offdiag)
            off.push_back(exact_json(e));
        p["a"] = to_string(aq);
        p["diag"] = diag;
        p["offdiag"] = off;
        p["trace"] = to_string(k_matrix_trace(s, aZ));
        return p;
    }
    auto sp = separation_constants(s, a, s.z_float());
    Json K = Json::array();
    for (double v : sp.K)
        K.push_back(fmt(v));
    p["a"] = fmt(a);
    p["K"] = K;
    return p;
}

Json cmd_tcoeffs(const Sector& s, const Options& o)
{
    if (exact(o))
        throw Error(ErrorCode::InvalidArgument, "tcoeffs has no exact mode");
    const double a = require_a(o);
    auto sp = separation_constants(s, a, s.z_float());
    Json K = Json::array();
    for (double v : sp.K)
        K.push_back(fmt(v));
    Json p;
    p["a"] = fmt(a);
    p["K"] = K;
    p["T"] = dense_json(sp.T);
    p["eigen_residual"] = fmt(eigen_residual(sp));
    return p;
}

BranchSweep run_sweep(const Sector& s, const Options& o)
{
    if (o.points < 2)
        throw Error(ErrorCode::InvalidArgument, "--points must be at least 2");
    if (!(o.a_min > 0.0) || !(o.a_min < o.a_max))
        throw Error(ErrorCode::InvalidArgument, "need 0 < --a-min < --a-max");
    auto grid = make_grid(o.a_min, o.a_max, o.points, o.log_spaced);
    return sweep_branches(s, s.z_float(), grid);
}

Json cmd_sweep(const BranchSweep& sw)
{
    Json grid = Json::array();
    for (double a : sw.a_grid)
        grid.push_back(fmt(a));
    Json branches = Json::array();
    for (std::size_t k = 0; k < sw.branches.size(); ++k) {
        Json K = Json::array();
        Json Ka = Json::array();
        for (const auto& pt : sw.branches[k]) {
            K.push_back(fmt(pt.K));
            Ka.push_back(fmt(pt.K_over_a));
        }
        branches.push_back(Json{{"n_k", std::to_string(k)}, {"K", K}, {"K_over_a", Ka}});
    }
    Json p;
    p["a"] = grid;
    p["branches"] = branches;
    p["min_overlap"] = fmt(sw.min_overlap);
    return p;
}

void write_sweep_csv(const BranchSweep& sw, std::ostream& out)
{
    out << "a,n_k,K,K_over_a\n";
    for (std::size_t g = 0; g < sw.a_grid.size(); ++g)
        for (std::size_t k = 0; k < sw.branches.size(); ++k) {
            const auto& pt = sw.branches[k][g];
            out << fmt(pt.a) << ',' << k << ',' << fmt(pt.K) << ',' << fmt(pt.K_over_a) << '\n';
        }
}

Json spherical_json(const SphericalLimitReport& r)
{
    Json br = Json::array();
    for (const auto& b : r.branches)
        br.push_back(Json{{"n_k", std::to_string(b.nk)},
                          {"lambda", half(b.lambda)},
                          {"K", fmt(b.K)},
                          {"limit", fmt(b.limit)},
                          {"slope", fmt(b.slope)},
                          {"deviation", fmt(b.deviation)},
                          {"deviation_first_order", fmt(b.deviation_second)},
                          {"t_deviation", fmt(b.t_deviation)}});
    return Json{{"a", fmt(r.a)}, {"tol_K", fmt(r.tol_K)}, {"tol_T", fmt(r.tol_T)}, {"branches", br},
                {"status", r.passed ? "pass" : "fail"}};
}

Json parabolic_json(const ParabolicLimitReport& r)
{
    Json br = Json::array();
    for (const auto& b : r.branches)
        br.push_back(Json{{"n_k", std::to_string(b.nk)},
                          {"K_over_a", fmt(b.K_over_a)},
                          {"expected", fmt(b.expected)},
                          {"matched_n_p", std::to_string(b.matched_np)},
                          {"labelled_n_p", std::to_string(b.labelled_np)},
                          {"t_deviation", fmt(b.t_deviation)}});
    return Json{{"a", fmt(r.a)},
                {"tol", fmt(r.tol)},
                {"branches", br},
                {"max_set_deviation", fmt(r.max_set_deviation)},
                {"max_t_deviation", fmt(r.max_t_deviation)},
                {"status", r.passed ? "pass" : "fail"}};
}

Json cmd_limits(const Sector& s, const Options& o)
{
    const double Z = s.z_float();
    auto sph = check_spherical_limit(s, Z);
    auto par = o.tol_given ? check_parabolic_limit(s, Z, 1e6, o.tol) : check_parabolic_limit(s, Z);
    return Json{{"spherical", spherical_json(sph)}, {"parabolic", parabolic_json(par)}};
}

struct Check {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tol = 0.0;
    std::string error;
    bool internal = false;
};

Check run_check(const std::string& name, double tol, const std::function<double()>& measure)
{
    Check c;
    c.name = name;
    c.tol = tol;
    try {
        c.deviation = measure();
        c.passed = c.deviation <= tol;
    } catch (const Error& e) {
        c.error = e.what();
        c.internal = error_class(e.code()) == ErrorClass::Internal;
    }
    return c;
}

// Exact checks report the number of non-zero defects.
double count_nonzero(const std::vector<RadicalSum>& v)
{
    return static_cast<double>(std::count_if(v.begin(), v.end(), [](const RadicalSum& x) { return !x.is_zero(); }));
}

std::vector<Check> verify_checks(const Sector& s, const Options& o)
{
    const double Z = s.z_float();
    const int N = s.dimension();
    std::vector<Check> out;

    out.push_back(run_check("orthogonality", 0.0, [&] {
        auto w = w_matrix_serial(s);
        return count_nonzero(orthogonality_defect(w));
    }));
    out.push_back(run_check("w_recurrence", 0.0, [&] {
        auto w = w_matrix(s);
        std::vector<RadicalSum> res;
        for (int i = 0; i < N; ++i)
            for (int p = 0; p < N; ++p)
                res.push_back(w_recurrence_residual(s, w, i, p));
        return count_nonzero(res);
    }));
    out.push_back(run_check("m9_equivalence", 0.0, [&] {
        return to_dense(m9_spherical_matrix(s)) == m9_matrix_bruteforce(s) ? 0.0 : 1.0;
    }));
    out.push_back(run_check("m9_eigenvalues", 1e-12, [&] {
        const auto m = m9_spherical_matrix(s);
        SymTridiagonal t;
        for (const auto& d : m.diag)
            t.diag.push_back(to_float(d));
        for (const auto& e : m.offdiag)
            t.offdiag.push_back(to_float(e));
        auto ev = tridiagonal_eigenvalues(t);
        std::vector<double> expected;
        for (int p : np_range(s))
            expected.push_back(m9_parabolic_eigenvalue(s, p).value());
        std::sort(expected.begin(), expected.end());
        double d = 0.0;
        for (int i = 0; i < N; ++i)
            d = std::max(d, std::abs(ev[static_cast<std::size_t>(i)] - expected[static_cast<std::size_t>(i)]));
        return d;
    }));
    out.push_back(run_check("cg_equality", 0.0, [&] {
        double bad = 0.0;
        for (HalfInt l : lambda_range(s))
            for (int p : np_range(s))
                if (!(w_coefficient(s, l, p) == w_via_cg(s, l, p)))
                    bad += 1.0;
        return bad;
    }));
    out.push_back(run_check("quadrature", o.tol, [&] {
        auto w = w_matrix(s);
        auto q = w_overlap_converged(s, o.nodes);
        double d = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                d = std::max(d, std::abs(q.values(i, j) - to_float(w.at(i, j))));
        return d;
    }));
    out.push_back(run_check("ode_residuals", o.tol, [&] { return ode_residual_all(s); }));
    out.push_back(run_check("spheroidal_eigen", 1e-12, [&] {
        double d = 0.0;
        for (double a : {0.1, 1.0, 10.0, 100.0}) {
            auto sp = separation_constants(s, a, Z);
            d = std::max({d, eigen_residual(sp), orthonormality_defect(sp.T)});
        }
        return d;
    }));
    out.push_back(run_check("continuant", 1e-8, [&] {
        double d = 0.0;
        for (double a : make_grid(1e-2, 1e3, 11, true))
            d = std::max(d, continuant_deviation(s, a, Z));
        return d;
    }));
    out.push_back(run_check("spherical_limit", 1e-12, [&] {
        auto r = check_spherical_limit(s, Z);
        require(r);
        double d = 0.0;
        for (const auto& b : r.branches)
            d = std::max(d, b.deviation_second);
        return d;
    }));
    out.push_back(run_check("parabolic_limit", 1e-4, [&] {
        auto r = check_parabolic_limit(s, Z);
        require(r);
        return std::max(r.max_set_deviation, r.max_t_deviation);
    }));
    return out;
}

int cmd_verify(const Sector& s, const Options& o, Json& payload, std::ostream& err)
{
    auto checks = verify_checks(s, o);
    Json arr = Json::array();
    bool ok = true;
    bool internal = false;
    for (const auto& c : checks) {
        Json j{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"deviation", fmt(c.deviation)},
               {"tol", fmt(c.tol)}};
        if (!c.error.empty())
            j["error"] = c.error;
        arr.push_back(j);
        if (!c.passed)
            err << "check " << c.name << " failed: "
                << (c.error.empty() ? "deviation " + fmt(c.deviation) + " exceeds " + fmt(c.tol) : c.error) << '\n';
        ok = ok && c.passed;
        internal = internal || c.internal;
    }
    payload["checks"] = arr;
    payload["status"] = ok ? "pass" : "fail";
    if (ok)
        return 0;
    return internal ? 4 : 3;
}

int exit_code(const Error& e)
{
    switch (error_class(e.code())) {
    case ErrorClass::Validation:
        return 2;
    case ErrorClass::Numerical:
        return 3;
    case ErrorClass::Internal:
        return 4;
    }
    return 4;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Interbasis expansions and spheroidal spectra for the nine-dimensional MICZ-Kepler problem"};
    app.name("micz");
    app.require_subcommand(1, 1);
    app.fallthrough();

    app.add_option("--n", o.n, "principal quantum number")->required();
    app.add_option("--Q", o.Q, "monopole quantum number")->required();
    app.add_option("--L", o.L, "SO(8) label L")->required();
    app.add_option("--J", o.J, "SO(8) label J")->required();
    app.add_option("--Z", o.Z, "charge, integer or p/q")->capture_default_str();
    app.add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
    app.add_option("--format", o.format, "record or csv")->check(CLI::IsMember({"record", "csv"}))->capture_default_str();
    app.add_option("--nodes", o.nodes, "starting quadrature rule size")->check(CLI::Range(1, 4096))->capture_default_str();
    auto* tol = app.add_option("--tol", o.tol, "tolerance override")->capture_default_str();
    app.add_option("--a", o.a, "focal distance");
    app.add_option("--a-min", o.a_min, "sweep start")->capture_default_str();
    app.add_option("--a-max", o.a_max, "sweep end")->capture_default_str();
    app.add_option("--points", o.points, "sweep grid size")->capture_default_str();
    app.add_flag("--log", o.log_spaced, "logarithmic sweep grid");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"states", "state labels, energy and parabolic eigenvalues"},
        {"wmatrix", "spherical to parabolic transformation matrix"},
        {"m9", "M9 operator in the spherical basis"},
        {"kspectrum", "spheroidal separation constants at --a"},
        {"tcoeffs", "spheroidal expansion coefficients at --a"},
        {"sweep", "separation-constant branches over an a grid"},
        {"limits", "spherical and parabolic limits of the spheroidal basis"},
        {"verify", "run every cross-check for one sector"},
    };
    for (const auto& [name, desc] : commands)
        app.add_subcommand(name, desc);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "InvalidArgument: " << e.what() << '\n';
        return 2;
    }
    o.tol_given = tol->count() > 0;
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        Rational Z = parse_rational(o.Z);
        Sector s = validate_sector(o.n, o.Q, o.L, o.J, Z);

        if (o.format == "csv" && command != "sweep")
            throw Error(ErrorCode::InvalidArgument, "--format csv is only available for sweep");

        Json record;
        record["schema_version"] = kSchemaVersion;
        record["command"] = command;
        record["sector"] = sector_json(s);
        record["mode"] = o.mode;
        Json payload;
        int status = 0;

        if (command == "states")
            payload = cmd_states(s, o);
        else if (command == "wmatrix")
            payload = cmd_wmatrix(s, o);
        else if (command == "m9")
            payload = cmd_m9(s, o);
        else if (command == "kspectrum")
            payload = cmd_kspectrum(s, o);
        else if (command == "tcoeffs")
            payload = cmd_tcoeffs(s, o);
        else if (command == "sweep") {
            if (exact(o))
                throw Error(ErrorCode::InvalidArgument, "sweep has no exact mode");
            auto sw = run_sweep(s, o);
            if (o.format == "csv") {
                write_sweep_csv(sw, out);
                return 0;
            }
            payload = cmd_sweep(sw);
        } else if (command == "limits") {
            if (exact(o))
                throw Error(ErrorCode::InvalidArgument, "limits has no exact mode");
            payload = cmd_limits(s, o);
        } else if (command == "verify") {
            status = cmd_verify(s, o, payload, err);
        }

        record["payload"] = payload;
        out << record.dump(2) << '\n';
        return status;
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "InternalError: " << e.what() << '\n';
        return 4;
    }
}

} // namespace micz::cli
