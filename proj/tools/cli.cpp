#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "CLI11.hpp"

#include "fractel/mlfunc.hpp"

namespace fractel::cli {

using nlohmann::json;

namespace {

constexpr int schema_version = 1;

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!j.is_object())
        throw ConfigError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key))
            throw ConfigError(where + ": unknown field '" + key + "'");
}

double number(const json& j, const std::string& field)
{
    if (!j.is_number())
        throw ConfigError(field + ": expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& field)
{
    if (!j.is_number_integer())
        throw ConfigError(field + ": expected an integer");
    return j.get<int>();
}

cplx complex_value(const json& j, const std::string& field)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError(field + ": expected a number or a [re, im] pair");
}

/// "zero", "mode:j", "decay:k^-p", "alternating:k^-p" or an explicit list
std::vector<cplx> coefficients(const json& j, int K, const std::string& field)
{
    std::vector<cplx> out(K, 0.0);
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        auto power = [&](const std::string& prefix) {
            try {
                return std::stod(s.substr(prefix.size()));
            } catch (const std::exception&) {
                throw ConfigError(field + ": malformed preset '" + s + "'");
            }
        };
        if (s == "zero")
            return out;
        if (s.rfind("mode:", 0) == 0) {
            int m = static_cast<int>(power("mode:"));
            if (m < 1 || m > K)
                throw ConfigError(field + ": preset mode outside 1.." + std::to_string(K));
            out[m - 1] = 1.0;
            return out;
        }
        if (s.rfind("decay:k^", 0) == 0) {
            double p = power("decay:k^");
            for (int k = 1; k <= K; ++k)
                out[k - 1] = std::pow(double(k), p);
            return out;
        }
        if (s.rfind("alternating:k^", 0) == 0) {
            double p = power("alternating:k^");
            for (int k = 1; k <= K; ++k)
                out[k - 1] = (k % 2 ? -1.0 : 1.0) * std::pow(double(k), p);
            return out;
        }
        throw ConfigError(field + ": unknown preset '" + s + "'");
    }
    if (!j.is_array())
        throw ConfigError(field + ": expected a preset string or a list");
    if (static_cast<int>(j.size()) < K)
        throw ConfigError(field + ": has " + std::to_string(j.size()) + " entries, need " + std::to_string(K));
    for (int k = 0; k < K; ++k)
        out[k] = complex_value(j[k], field + "[" + std::to_string(k) + "]");
    return out;
}

std::vector<Forcing> forcing(const json& j, int K, double T)
{
    if (j.is_string() && j.get<std::string>() == "zero")
        return {};
    if (!j.is_object() || j.size() != 1)
        throw ConfigError("forcing: expected \"zero\" or an object with one of constant, sampled, preset");
    const auto& [kind, body] = *j.items().begin();
    std::vector<Forcing> out;
    if (kind == "constant") {
        for (cplx c : coefficients(body, K, "forcing.constant"))
            out.push_back(Forcing::constant(c));
    } else if (kind == "sampled") {
        only_keys(body, "forcing.sampled", {"steps", "values"});
        if (!body.contains("steps") || !body.contains("values"))
            throw ConfigError("forcing.sampled: needs steps and values");
        int n = integer(body["steps"], "forcing.sampled.steps");
        const auto& vals = body["values"];
        if (!vals.is_array() || static_cast<int>(vals.size()) < K)
            throw ConfigError("forcing.sampled.values: need one sample list per mode");
        for (int k = 0; k < K; ++k) {
            std::string f = "forcing.sampled.values[" + std::to_string(k) + "]";
            if (!vals[k].is_array() || static_cast<int>(vals[k].size()) != n + 1)
                throw ConfigError(f + ": need steps + 1 samples");
            SampledTrajectory s{TimeGrid{T, n}, {}};
            for (const auto& v : vals[k])
                s.values.push_back(complex_value(v, f));
            try {
                out.push_back(Forcing::sampled(std::move(s)));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(f + ": " + e.what());
            }
        }
    } else if (kind == "preset") {
        // (a + b exp(-c t)) k^-p
        only_keys(body, "forcing.preset", {"a", "b", "c", "p"});
        double a = body.contains("a") ? number(body["a"], "forcing.preset.a") : 0.0;
        double b = body.contains("b") ? number(body["b"], "forcing.preset.b") : 0.0;
        double c = body.contains("c") ? number(body["c"], "forcing.preset.c") : 1.0;
        double p = body.contains("p") ? number(body["p"], "forcing.preset.p") : 0.0;
        for (int k = 1; k <= K; ++k) {
            double w = std::pow(double(k), -p);
            out.push_back(Forcing::callable([=](double t) { return cplx(w * (a + b * std::exp(-c * t))); }, true));
        }
    } else {
        throw ConfigError("forcing: unknown kind '" + kind + "'");
    }
    return out;
}

SpectralOperator make_operator(const json& j, std::optional<int> modes)
{
    only_keys(j, "operator", {"kind", "K", "length", "eigenvalues"});
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("operator.kind: required");
    std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "laplacian_1d_dirichlet") {
            if (j.contains("eigenvalues"))
                throw ConfigError("operator.eigenvalues: not allowed for the Laplacian");
            int K = modes ? *modes : j.contains("K") ? integer(j["K"], "operator.K") : 32;
            double L = j.contains("length") ? number(j["length"], "operator.length") : std::numbers::pi;
            if (K < 1)
                throw ConfigError("operator.K: must be at least 1");
            if (!(L > 0.0))
                throw ConfigError("operator.length: must be positive");
            return SpectralOperator::laplacian_1d(L, K);
        }
        if (kind == "diagonal_explicit") {
            if (!j.contains("eigenvalues") || !j["eigenvalues"].is_array())
                throw ConfigError("operator.eigenvalues: required for diagonal_explicit");
            std::vector<double> eig;
            for (const auto& v : j["eigenvalues"])
                eig.push_back(number(v, "operator.eigenvalues"));
            int K = modes ? *modes : j.contains("K") ? integer(j["K"], "operator.K") : static_cast<int>(eig.size());
            if (K < 1 || K > static_cast<int>(eig.size()))
                throw ConfigError("operator.K: must lie in 1.." + std::to_string(eig.size()));
            eig.resize(K);
            return SpectralOperator::diagonal(eig);
        }
    } catch (const InvalidParameter& e) {
        throw ConfigError(std::string("operator: ") + e.what());
    }
    throw ConfigError("operator.kind: unknown kind '" + kind + "'");
}

std::string csv_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    f << text;
}

} // namespace

std::string format_double(double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

ProblemConfig parse_problem(const json& j, std::optional<int> modes)
{
    only_keys(j, "config", {"schema_version", "rho", "alpha", "T", "epsilon", "operator", "phi0", "phi1",
                            "forcing", "grids", "quadrature", "outputs", "threads"});
    if (!j.contains("schema_version") || integer(j["schema_version"], "schema_version") != schema_version)
        throw ConfigError("schema_version: must be " + std::to_string(schema_version));
    for (const char* req : {"rho", "alpha", "operator"})
        if (!j.contains(req))
            throw ConfigError(std::string(req) + ": required");

    ProblemConfig cfg;
    auto& p = cfg.problem;
    p.rho = number(j["rho"], "rho");
    p.alpha = number(j["alpha"], "alpha");
    p.T = j.contains("T") ? number(j["T"], "T") : 1.0;
    p.epsilon = j.contains("epsilon") ? number(j["epsilon"], "epsilon") : 0.5;
    if (!(p.rho > 0.0) || !(p.rho < 1.0))
        throw ConfigError("rho: must lie in (0, 1), got " + format_double(p.rho));
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
        throw ConfigError("alpha: must be positive");
    if (!(p.T > 0.0) || !std::isfinite(p.T))
        throw ConfigError("T: must be positive");
    if (!(p.epsilon > 0.0) || !(p.epsilon < 1.0))
        throw ConfigError("epsilon: must lie in (0, 1)");
    if (modes && *modes < 1)
        throw ConfigError("--modes: must be at least 1");

    p.op = make_operator(j["operator"], modes);
    const int K = p.op.K();
    p.phi0 = coefficients(j.value("phi0", json("zero")), K, "phi0");
    p.phi1 = coefficients(j.value("phi1", json("zero")), K, "phi1");
    p.f = forcing(j.value("forcing", json("zero")), K, p.T);

    if (j.contains("grids")) {
        const auto& g = j["grids"];
        only_keys(g, "grids", {"time_points", "x_points"});
        if (g.contains("time_points"))
            cfg.time_points = integer(g["time_points"], "grids.time_points");
        if (g.contains("x_points"))
            cfg.x_points = integer(g["x_points"], "grids.x_points");
    }
    if (cfg.time_points < 2)
        throw ConfigError("grids.time_points: must be at least 2");
    if (cfg.x_points < 2)
        throw ConfigError("grids.x_points: must be at least 2");

    if (j.contains("quadrature")) {
        const auto& q = j["quadrature"];
        only_keys(q, "quadrature", {"ml_tol", "smooth_panels", "dyadic_levels", "tol_crit"});
        auto& qs = cfg.options.quadrature;
        if (q.contains("ml_tol"))
            qs.ml_tol = number(q["ml_tol"], "quadrature.ml_tol");
        if (q.contains("smooth_panels"))
            qs.convolution.smooth_panels = integer(q["smooth_panels"], "quadrature.smooth_panels");
        if (q.contains("dyadic_levels"))
            qs.convolution.dyadic_levels = integer(q["dyadic_levels"], "quadrature.dyadic_levels");
        if (q.contains("tol_crit"))
            cfg.options.tol_crit = number(q["tol_crit"], "quadrature.tol_crit");
        if (!(qs.ml_tol > 0.0) || !(qs.ml_tol < 1.0))
            throw ConfigError("quadrature.ml_tol: must lie in (0, 1)");
        if (qs.convolution.smooth_panels < 1 || qs.convolution.dyadic_levels < 1)
            throw ConfigError("quadrature: panel counts must be positive");
        if (!(cfg.options.tol_crit >= 0.0))
            throw ConfigError("quadrature.tol_crit: must be non-negative");
    }
    cfg.options.threads = j.contains("threads") ? integer(j["threads"], "threads") : 0;
    if (cfg.options.threads < 0)
        throw ConfigError("threads: must be non-negative");

    if (j.contains("outputs")) {
        const auto& o = j["outputs"];
        if (!o.is_array())
            throw ConfigError("outputs: expected a list");
        cfg.write_solution = cfg.write_norms = cfg.write_field = false;
        for (const auto& v : o) {
            std::string s = v.is_string() ? v.get<std::string>() : "";
            if (s == "solution")
                cfg.write_solution = true;
            else if (s == "norms")
                cfg.write_norms = true;
            else if (s == "field")
                cfg.write_field = true;
            else
                throw ConfigError("outputs: unknown artifact '" + v.dump() + "'");
        }
    }
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ProblemConfig load_problem(const std::filesystem::path& path, std::optional<int> modes)
{
    std::ifstream f(path);
    if (!f)
        throw ConfigError("cannot read config " + path.string());
    json j;
    try {
        j = json::parse(f);
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_problem(j, modes);
}

SuiteConfig parse_suite(const json& j)
{
    only_keys(j, "verify config", {"schema_version", "seed", "fixtures", "max_modes", "residual_levels",
                                   "fault_inject", "threads", "only"});
    if (!j.contains("schema_version") || integer(j["schema_version"], "schema_version") != schema_version)
        throw ConfigError("schema_version: must be " + std::to_string(schema_version));
    SuiteConfig cfg;
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw ConfigError("seed: expected a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("fixtures"))
        cfg.fixtures = integer(j["fixtures"], "fixtures");
    if (j.contains("max_modes"))
        cfg.max_modes = integer(j["max_modes"], "max_modes");
    if (j.contains("threads"))
        cfg.threads = integer(j["threads"], "threads");
    if (j.contains("fault_inject")) {
        if (!j["fault_inject"].is_boolean())
            throw ConfigError("fault_inject: expected a boolean");
        cfg.fault_inject = j["fault_inject"].get<bool>();
    }
    if (j.contains("residual_levels")) {
        cfg.residual_levels.clear();
        if (!j["residual_levels"].is_array())
            throw ConfigError("residual_levels: expected a list");
        for (const auto& v : j["residual_levels"])
            cfg.residual_levels.push_back(integer(v, "residual_levels"));
    }
    if (j.contains("only")) {
        if (!j["only"].is_array())
            throw ConfigError("only: expected a list of check ids");
        for (const auto& v : j["only"]) {
            if (!v.is_string())
                throw ConfigError("only: expected check id strings");
            std::string id = v.get<std::string>();
            if (std::none_of(check_table.begin(), check_table.end(), [&](auto& c) { return c.id == id; }))
                throw ConfigError("only: unknown check id '" + id + "'");
            cfg.only.push_back(id);
        }
    }
    if (cfg.fixtures < 1)
        throw ConfigError("fixtures: must be at least 1");
    if (cfg.max_modes < 0)
        throw ConfigError("max_modes: must be non-negative");
    if (cfg.threads < 0)
        throw ConfigError("threads: must be non-negative");
    if (cfg.residual_levels.size() < 2 ||
        std::any_of(cfg.residual_levels.begin(), cfg.residual_levels.end(), [](int n) { return n < 20; }))
        throw ConfigError("residual_levels: need at least two levels of 20 steps or more");
    return cfg;
}

std::vector<double> output_times(const ProblemConfig& cfg)
{
    std::vector<double> t(cfg.time_points);
    const int n = cfg.time_points - 1;
    for (int i = 0; i <= n; ++i)
        t[i] = TimeGrid{cfg.problem.T, n}.t(i);
    return t;
}

std::vector<std::filesystem::path> write_outputs(const ProblemConfig& cfg, const SolutionField& field,
                                                 const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto times = output_times(cfg);
    auto tab = field.tabulate(times);
    const int K = field.K();
    const auto& eig = field.problem().op.eigenvalues();

    std::vector<FieldNorms> norms;
    for (std::size_t j = 0; j < times.size(); ++j) {
        ModalState s{times[j], {}, {}, {}};
        for (int k = 0; k < K; ++k) {
            s.u.push_back(tab.u[k][j]);
            s.du.push_back(tab.du[k][j]);
            s.d2u.push_back(tab.d2u[k][j]);
        }
        norms.push_back(field.norms(s));
    }

    if (cfg.write_solution) {
        std::string out = "t";
        for (int k = 1; k <= K; ++k)
            out += ",re_T" + std::to_string(k) + ",im_T" + std::to_string(k);
        out += ",norm_u,norm_Au,norm_Du\n";
        for (std::size_t j = 0; j < times.size(); ++j) {
            out += csv_number(times[j]);
            for (int k = 0; k < K; ++k)
                out += "," + csv_number(tab.u[k][j].real()) + "," + csv_number(tab.u[k][j].imag());
            out += "," + csv_number(norms[j].u) + "," + csv_number(norms[j].Au) + "," + csv_number(norms[j].du) + "\n";
        }
        written.push_back(out_dir / "solution.csv");
        write_file(written.back(), out);
    }

    if (cfg.write_norms) {
        json j;
        j["schema_version"] = schema_version;
        j["rho"] = field.problem().rho;
        j["alpha"] = field.problem().alpha;
        j["T"] = field.problem().T;
        j["K"] = K;
        j["operator"] = std::string(to_string(field.problem().op.kind()));
        j["critical_modes"] = field.critical_modes();
        j["eigenvalues"] = eig;
        j["times"] = times;
        json n;
        for (const char* key : {"u", "Au", "Du", "D2u"})
            n[key] = json::array();
        for (const auto& v : norms) {
            n["u"].push_back(v.u);
            n["Au"].push_back(v.Au);
            n["Du"].push_back(v.du);
            n["D2u"].push_back(v.d2u);
        }
        j["norms"] = n;
        written.push_back(out_dir / "norms.json");
        write_file(written.back(), j.dump(2) + "\n");
    }

    if (cfg.write_field && field.problem().op.kind() == OperatorKind::laplacian_1d_dirichlet) {
        const double L = field.problem().op.length();
        std::vector<double> x(cfg.x_points);
        for (int i = 0; i < cfg.x_points; ++i)
            x[i] = i + 1 == cfg.x_points ? L : L * i / (cfg.x_points - 1);
        auto phys = assemble_physical(field, x, times);
        std::string out = "x,t,re_u,im_u\n";
        for (std::size_t j = 0; j < times.size(); ++j)
            for (std::size_t i = 0; i < x.size(); ++i) {
                cplx u = phys.at(i, j);
                out += csv_number(x[i]) + "," + csv_number(times[j]) + "," + csv_number(u.real()) + "," +
                       csv_number(u.imag()) + "\n";
            }
        written.push_back(out_dir / "field.csv");
        write_file(written.back(), out);
    }
    return written;
}

namespace {

int cmd_solve(const std::string& config, const std::string& out_dir, std::optional<int> modes,
              std::optional<int> steps, std::ostream& out)
{
    auto cfg = load_problem(config, modes);
    if (steps) {
        if (*steps < 1)
            throw ConfigError("--time-steps: must be at least 1");
        cfg.time_points = *steps + 1;
    }
    auto field = solve(cfg.problem, cfg.options);
    for (const auto& p : write_outputs(cfg, field, out_dir))
        out << "wrote " << p.string() << "\n";
    return 0;
}

int cmd_verify(const std::string& config, const std::string& report, std::optional<std::uint64_t> seed,
               std::optional<int> modes, std::optional<int> steps, bool fault, std::ostream& out)
{
    SuiteConfig cfg;
    if (!config.empty()) {
        std::ifstream f(config);
        if (!f)
            throw ConfigError("cannot read config " + config);
        try {
            cfg = parse_suite(json::parse(f));
        } catch (const json::parse_error& e) {
            throw ConfigError("config is not valid JSON: " + std::string(e.what()));
        }
    }
    if (seed)
        cfg.seed = *seed;
    if (modes) {
        if (*modes < 1)
            throw ConfigError("--modes: must be at least 1");
        cfg.max_modes = *modes;
    }
    if (steps) {
        if (*steps < 200)
            throw ConfigError("--time-steps: the residual sweep needs at least 200 steps");
        cfg.residual_levels = {*steps / 10, (3 * *steps) / 10, *steps};
    }
    cfg.fault_inject = cfg.fault_inject || fault;
    auto reports = run_suite(cfg);
    std::filesystem::path path(report);
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    write_file(path, to_json_lines(reports));
    out << summary_table(reports);
    return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; }) ? 0 : 1;
}

int cmd_ml(double rho, double mu, double re, double im, double tol, std::ostream& out)
{
    auto r = ml(rho, mu, cplx(re, im), tol);
    std::string v = format_double(r.value.real());
    if (r.value.imag() != 0.0)
        v += (r.value.imag() < 0.0 || std::signbit(r.value.imag()) ? "" : "+") + format_double(r.value.imag()) + "j";
    out << v << " " << to_string(r.regime) << "\n";
    return 0;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fractional telegraph equation solver and verification suite", "fractel"};
    app.require_subcommand(1);

    std::string config, out_dir, report;
    std::optional<int> modes, steps;
    std::optional<std::uint64_t> seed;
    bool fault = false;
    double rho = 0, mu = 0, re = 0, im = 0, tol = 1e-12;

    auto* solve_cmd = app.add_subcommand("solve", "solve a problem configuration and write its artifacts");
    solve_cmd->add_option("--config", config, "problem configuration (JSON)")->required();
    solve_cmd->add_option("--out", out_dir, "output directory")->required();
    solve_cmd->add_option("--modes", modes, "override the operator mode count");
    solve_cmd->add_option("--time-steps", steps, "output time steps on [0, T]");

    auto* verify_cmd = app.add_subcommand("verify", "run the conformance suite");
    verify_cmd->add_option("--config", config, "suite configuration (JSON)");
    verify_cmd->add_option("--out", report, "JSON-lines report path")->required();
    verify_cmd->add_option("--seed", seed, "fixture seed");
    verify_cmd->add_option("--modes", modes, "cap on fixture mode counts");
    verify_cmd->add_option("--time-steps", steps, "finest residual grid; levels n/10, 3n/10, n");
    verify_cmd->add_flag("--fault-inject", fault, "corrupt Mittag-Leffler values in the estimate checks");

    auto* ml_cmd = app.add_subcommand("ml", "evaluate E_{rho,mu}(re + i im)");
    ml_cmd->add_option("rho", rho)->required();
    ml_cmd->add_option("mu", mu)->required();
    ml_cmd->add_option("re", re)->required();
    ml_cmd->add_option("im", im)->required();
    ml_cmd->add_option("tol", tol);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*solve_cmd)
            return cmd_solve(config, out_dir, modes, steps, out);
        if (*verify_cmd)
            return cmd_verify(config, report, seed, modes, steps, fault, out);
        return cmd_ml(rho, mu, re, im, tol, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const SectorViolation& e) {
        err << "invalid parameter: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "solver failure: " << e.what() << "\n";
        return 3;
    }
}

} // namespace fractel::cli
