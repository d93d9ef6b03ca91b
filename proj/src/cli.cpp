#include "lsol/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "lsol/blowup.hpp"
#include "lsol/claims.hpp"
#include "lsol/error.hpp"
#include "lsol/ladders.hpp"
#include "lsol/phase.hpp"
#include "lsol/shoot.hpp"
#include "lsol/spectral.hpp"
#include "lsol/sweeps.hpp"

namespace lsol {

using nlohmann::json;

namespace {

const json& member(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) throw Error(Errc::ParseError, "expected an object", path);
    auto it = obj.find(key);
    std::string field = path.empty() ? key : path + "." + key;
    if (it == obj.end()) throw Error(Errc::ParseError, "missing field", field);
    return *it;
}

double number(const json& obj, const char* key, const std::string& path) {
    const json& v = member(obj, key, path);
    std::string field = path.empty() ? key : path + "." + key;
    if (!v.is_number()) throw Error(Errc::ParseError, "expected a number", field);
    return v.get<double>();
}

std::vector<double> numbers(const json& obj, const char* key, const std::string& path) {
    const json& v = member(obj, key, path);
    std::string field = path + "." + key;
    if (!v.is_array()) throw Error(Errc::ParseError, "expected an array", field);
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw Error(Errc::ParseError, "expected numbers", field);
        out.push_back(e.get<double>());
    }
    return out;
}

std::string text(const json& obj, const char* key, const std::string& path) {
    const json& v = member(obj, key, path);
    if (!v.is_string()) throw Error(Errc::ParseError, "expected a string", path + "." + key);
    return v.get<std::string>();
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_validation(Errc c) {
    switch (c) {
        case Errc::NonPositiveWeight:
        case Errc::BadExponent:
        case Errc::BadDomain:
        case Errc::BadTable:
        case Errc::OutOfDomain:
        case Errc::BelowThreshold:
        case Errc::BadMesh:
        case Errc::MeshMismatch:
        case Errc::SubcriticalLambda:
        case Errc::HypothesisViolation:
        case Errc::ParseError:
        case Errc::ValidationError: return true;
        default: return false;
    }
}

std::vector<double> parse_list(const std::string& s, const char* field) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw Error(Errc::ValidationError, "not a number list: " + s, field);
        }
    }
    if (out.empty()) throw Error(Errc::ValidationError, "empty list", field);
    return out;
}

// Sends a table to --out or stdout.
void emit(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& header,
          const std::string& format, const std::string& path, std::ostream& out) {
    TableFormat f = format == "json" ? TableFormat::Json : TableFormat::Csv;
    if (path.empty()) {
        write_table(rows, header, f, out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(Errc::IoError, "cannot open output file", path);
    write_table(rows, header, f, file);
}

struct ProblemFlags {
    double lambda = 0.0, p = 3.0, a = 1.0, R = 1.0;
    std::string bc = "neumann";

    void add(CLI::App* app) {
        app->add_option("--lambda", lambda, "bifurcation parameter")->required();
        app->add_option("--p", p, "exponent p > 1")->required();
        app->add_option("--a-const", a, "constant weight a > 0")->required();
        app->add_option("--R", R, "interval length")->required();
        app->add_option("--bc", bc, "dirichlet | neumann | robin:<beta>")->required();
    }
    Problem problem() const {
        Problem pr;
        pr.lambda = lambda;
        pr.p = p;
        pr.weight = Weight::constant(a);
        pr.R = R;
        pr.bc = parse_bc(bc);
        return validate_problem(pr);
    }
};

struct OutputFlags {
    std::string out, format = "csv";
    void add(CLI::App* app) {
        app->add_option("--out", out, "output file (default stdout)");
        app->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    }
};

// T_{R_β}(u₊(β)) = R: the β > 0 whose solution runs along the unstable manifold of u₀*.
std::vector<double> unstable_beta(double lambda, double a, double p, double R) {
    if (!(lambda > 0.0)) throw Error(Errc::ValidationError, "needs lambda > 0", "lambda");
    auto T = [&](double beta) {
        double up = robin_line_crossings(lambda, a, p, beta).second;
        return blowup_time(lambda, a, p, BoundaryOp::robin(beta), up).value;
    };
    double lo = std::log(1e-4), hi = std::log(1e4);
    if (!(T(std::exp(lo)) > R && T(std::exp(hi)) < R))
        throw Error(Errc::NoBracket, "no beta in [1e-4, 1e4] reaches R");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        double m = 0.5 * (lo + hi);
        (T(std::exp(m)) > R ? lo : hi) = m;
    }
    double beta = std::exp(0.5 * (lo + hi));
    return {beta, robin_line_crossings(lambda, a, p, beta).second, T(beta)};
}

}  // namespace

Problem parse_config(const std::string& src) {
    json j;
    try {
        j = json::parse(src);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, e.what(), "");
    }
    Problem pr;
    pr.lambda = number(j, "lambda", "");
    pr.p = number(j, "p", "");
    pr.R = number(j, "R", "");
    const json& bc = member(j, "bc", "");
    std::string kind = text(bc, "kind", "bc");
    if (kind == "dirichlet") pr.bc = BoundaryOp::dirichlet();
    else if (kind == "neumann") pr.bc = BoundaryOp::neumann();
    else if (kind == "robin") pr.bc = BoundaryOp::robin(number(bc, "beta", "bc"));
    else throw Error(Errc::ValidationError, "unknown boundary kind " + kind, "bc.kind");
    const json& w = member(j, "weight", "");
    std::string wk = text(w, "kind", "weight");
    if (wk == "constant") pr.weight = Weight::constant(number(w, "a0", "weight"));
    else if (wk == "affine") pr.weight = Weight::affine(number(w, "a0", "weight"), number(w, "a1", "weight"));
    else if (wk == "tabulated") pr.weight = Weight::tabulated(numbers(w, "xs", "weight"), numbers(w, "ys", "weight"));
    else throw Error(Errc::ValidationError, "unknown weight kind " + wk, "weight.kind");
    try {
        return validate_problem(pr);
    } catch (const Error& e) {
        throw Error(Errc::ValidationError, e.what(), e.field());
    }
}

Problem load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::IoError, "cannot read config file", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void write_table(const std::vector<std::vector<double>>& rows, const std::vector<std::string>& header,
                 TableFormat format, std::ostream& sink) {
    for (const auto& r : rows)
        if (r.size() != header.size()) throw Error(Errc::ValidationError, "ragged table row", "rows");
    if (format == TableFormat::Csv) {
        for (std::size_t k = 0; k < header.size(); ++k) sink << (k ? "," : "") << header[k];
        sink << '\n';
        for (const auto& r : rows) {
            for (std::size_t k = 0; k < r.size(); ++k) sink << (k ? "," : "") << fmt17(r[k]);
            sink << '\n';
        }
    } else {
        // Columns keep header order; NaN cells become null.
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json o = nlohmann::ordered_json::object();
            for (std::size_t k = 0; k < r.size(); ++k) o[header[k]] = r[k];
            arr.push_back(std::move(o));
        }
        sink << arr.dump() << '\n';
    }
    sink.flush();
    if (!sink) throw Error(Errc::IoError, "write failed", "out");
}

BoundaryOp parse_bc(const std::string& s) {
    if (s == "dirichlet") return BoundaryOp::dirichlet();
    if (s == "neumann") return BoundaryOp::neumann();
    if (s.rfind("robin:", 0) == 0) {
        try {
            std::size_t used = 0;
            double b = std::stod(s.substr(6), &used);
            if (used == s.size() - 6 && std::isfinite(b)) return BoundaryOp::robin(b);
        } catch (const std::exception&) {
        }
    }
    throw Error(Errc::ValidationError, "boundary operator must be dirichlet, neumann or robin:<beta>", "bc");
}

std::vector<double> profile_samples(double R, int N) {
    if (N < 2) throw Error(Errc::ValidationError, "need at least 2 samples", "samples");
    std::vector<double> xs(static_cast<std::size_t>(N));
    for (int k = 0; k < N; ++k) {
        double s = static_cast<double>(k) / (N - 1);
        double c = std::cos(M_PI * s);
        // Left half on [0, R/2], right half compressed to end at 0.98R.
        xs[k] = 0.5 * R - (s <= 0.5 ? 0.5 * R : 0.48 * R) * c;
    }
    xs.front() = 0.0;
    xs.back() = 0.98 * R;
    if (N % 2 == 1) xs[N / 2] = 0.5 * R;
    return xs;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Large solutions of -u'' = lambda u - a(x) u^p on [0, R)"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "large solution for constant weight, sampled on [0, 0.98R]");
    ProblemFlags sp;
    OutputFlags so;
    int samples = 257;
    sp.add(solve);
    so.add(solve);
    solve->add_option("--samples", samples, "number of sample points");

    auto* svar = app.add_subcommand("solve-var", "minimal/maximal large solutions for a weight from a JSON config");
    std::string config;
    bool want_min = false, want_max = false, want_both = false;
    double window = 0.9, tol = 1e-4;
    LadderOptions lopt;
    OutputFlags vo;
    svar->add_option("--config", config, "problem JSON")->required();
    svar->add_flag("--minimal", want_min);
    svar->add_flag("--maximal", want_max);
    svar->add_flag("--both", want_both);
    svar->add_option("--window", window, "window end as a fraction of R");
    svar->add_option("--tol", tol, "ladder stopping tolerance");
    svar->add_option("--n", lopt.n, "mesh cells");
    vo.add(svar);

    auto* btab = app.add_subcommand("blowup-table", "blow-up time and its derivatives along the initial datum");
    ProblemFlags bp;
    OutputFlags bo;
    double init_from = 0.0, init_to = 0.0;
    int steps = 11;
    bp.add(btab);
    bo.add(btab);
    btab->add_option("--init-from", init_from)->required();
    btab->add_option("--init-to", init_to)->required();
    btab->add_option("--steps", steps, "number of rows");

    auto* sweep = app.add_subcommand("sweep", "large solution values along lambda");
    double lam_from = 0.0, lam_to = 0.0, sp_p = 3.0, sp_a = 1.0, sp_R = 1.0;
    int lam_steps = 5;
    std::string xs_text = "0.25,0.5", sp_bc = "neumann", sweep_config;
    OutputFlags wo;
    sweep->add_option("--lambda-from", lam_from)->required();
    sweep->add_option("--lambda-to", lam_to)->required();
    sweep->add_option("--steps", lam_steps, "number of lambda values");
    sweep->add_option("--xs", xs_text, "comma-separated sample points");
    sweep->add_option("--p", sp_p);
    sweep->add_option("--a-const", sp_a);
    sweep->add_option("--R", sp_R);
    sweep->add_option("--bc", sp_bc);
    sweep->add_option("--config", sweep_config, "problem JSON (its lambda is ignored)");
    wo.add(sweep);

    auto* eig = app.add_subcommand("eigen", "principal eigenvalue of -D^2 + q");
    double qc = 0.0;
    std::string bl = "dirichlet", br = "dirichlet", interval = "0,1";
    int en = 1024;
    bool rich = false;
    OutputFlags eo;
    eig->add_option("--q-const", qc);
    eig->add_option("--bc-left", bl);
    eig->add_option("--bc-right", br);
    eig->add_option("--interval", interval, "c,d");
    eig->add_option("--n", en);
    eig->add_flag("--richardson", rich);
    eo.add(eig);

    auto* ver = app.add_subcommand("verify", "run the executable property suites");
    std::string suite = "all";
    ver->add_option("--suite", suite)->check(CLI::IsMember({"phase", "blowup", "bvp", "spectral", "ladders", "all"}));

    auto* ub = app.add_subcommand("unstable-beta", "Robin beta > 0 whose solution rides the saddle's unstable manifold");
    double ub_l = 1.0, ub_a = 1.0, ub_p = 3.0, ub_R = 1.0;
    OutputFlags uo;
    ub->add_option("--lambda", ub_l)->required();
    ub->add_option("--a-const", ub_a);
    ub->add_option("--p", ub_p);
    ub->add_option("--R", ub_R);
    uo.add(ub);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*solve) {
            Problem pr = sp.problem();
            LargeSolution s = solve_init(pr);
            std::vector<std::vector<double>> rows;
            for (double x : profile_samples(pr.R, samples)) rows.push_back({x, eval_profile(s, x)});
            emit(rows, {"x", "u"}, so.format, so.out, out);
        } else if (*svar) {
            Problem pr = load_config(config);
            if (!want_min && !want_max) want_both = true;
            bool mn = want_min || want_both, mx = want_max || want_both;
            std::optional<LadderResult> a, b;
            if (mn) a = minimal_solution(pr, window * pr.R, tol, lopt);
            if (mx) b = maximal_solution(pr, window * pr.R, tol, lopt);
            const GridFunction& g = a ? a->window : b->window;
            std::vector<std::string> header{"x"};
            if (mn) header.push_back("minimal");
            if (mx) header.push_back("maximal");
            std::vector<std::vector<double>> rows;
            for (int i = 0; i <= g.n; ++i) {
                std::vector<double> r{g.x(i)};
                if (a) r.push_back(a->window.values[i]);
                if (b) r.push_back(b->window.values[i]);
                rows.push_back(std::move(r));
            }
            emit(rows, header, vo.format, vo.out, out);
            auto report = [&](const char* label, const LadderResult& r) {
                err << label << ": rungs " << r.report.steps.size() << ", converged " << r.report.converged
                    << ", capped " << r.report.capped << ", mesh error " << r.report.mesh_error << "\n";
            };
            if (a) report("minimal", *a);
            if (b) report("maximal", *b);
        } else if (*btab) {
            Problem pr = bp.problem();
            if (steps < 2) throw Error(Errc::ValidationError, "need at least 2 rows", "steps");
            double a = pr.weight.constant_value();
            std::vector<std::vector<double>> rows;
            for (int k = 0; k < steps; ++k) {
                double init = init_from + (init_to - init_from) * k / (steps - 1);
                rows.push_back({init, blowup_time(pr.lambda, a, pr.p, pr.bc, init).value,
                                dT_dinit(pr.lambda, a, pr.p, pr.bc, init), dT_dlambda(pr.lambda, a, pr.p, pr.bc, init)});
            }
            emit(rows, {"init", "T", "dT_dinit", "dT_dlambda"}, bo.format, bo.out, out);
        } else if (*sweep) {
            Problem pr;
            if (!sweep_config.empty()) {
                pr = load_config(sweep_config);
            } else {
                pr.p = sp_p;
                pr.weight = Weight::constant(sp_a);
                pr.R = sp_R;
                pr.bc = parse_bc(sp_bc);
            }
            if (lam_steps < 1) throw Error(Errc::ValidationError, "need at least 1 lambda", "steps");
            std::vector<double> lams;
            for (int k = 0; k < lam_steps; ++k)
                lams.push_back(lam_steps == 1 ? lam_from : lam_from + (lam_to - lam_from) * k / (lam_steps - 1));
            std::vector<double> xs = parse_list(xs_text, "xs");
            SweepTable t = lambda_sweep(pr, lams, xs);
            std::vector<std::string> header{"lambda", "init"};
            for (double x : xs) header.push_back("L@" + fmt17(x));
            for (double x : xs) header.push_back("ratio@" + fmt17(x));
            std::vector<std::vector<double>> rows;
            for (const auto& r : t.rows) {
                std::vector<double> row{r.lambda, r.init};
                row.insert(row.end(), r.values.begin(), r.values.end());
                row.insert(row.end(), r.ratios.begin(), r.ratios.end());
                rows.push_back(std::move(row));
            }
            emit(rows, header, wo.format, wo.out, out);
            for (std::size_t j = 0; j < xs.size(); ++j)
                err << "x=" << xs[j] << (t.increasing[j] ? " increasing" : " NOT increasing") << " in lambda\n";
        } else if (*eig) {
            std::vector<double> cd = parse_list(interval, "interval");
            if (cd.size() != 2) throw Error(Errc::ValidationError, "interval must be c,d", "interval");
            EigenResult r = principal_eigenvalue(qc, parse_bc(bl), parse_bc(br), cd[0], cd[1], en, rich);
            emit({{r.sigma1, static_cast<double>(r.iterations)}}, {"sigma1", "iterations"}, eo.format, eo.out, out);
        } else if (*ver) {
            auto runs = run_suite(suite);
            int failed = 0;
            for (const auto& r : runs) {
                out << (r.outcome.pass ? "PASS  " : "FAIL  ") << r.claim->name << "  [" << r.claim->suite << "] "
                    << r.outcome.detail << "\n";
                failed += r.outcome.pass ? 0 : 1;
            }
            out << runs.size() - failed << "/" << runs.size() << " claims hold\n";
            return failed ? 3 : 0;
        } else if (*ub) {
            emit({unstable_beta(ub_l, ub_a, ub_p, ub_R)}, {"beta", "u_plus", "T"}, uo.format, uo.out, out);
        }
    } catch (const Error& e) {
        err << errc_name(e.code()) << (e.field().empty() ? "" : " at " + e.field()) << ": " << e.what() << "\n";
        return is_validation(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace lsol
