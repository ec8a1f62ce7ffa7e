#include "qsd/cli.hpp"

#include "qsd/distribution.hpp"
#include "qsd/errors.hpp"
#include "qsd/moments.hpp"
#include "qsd/oracle.hpp"
#include "qsd/report.hpp"
#include "qsd/spectral.hpp"
#include "qsd/suite.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <string>
#include <vector>

namespace qsd::cli {

namespace {

struct Options {
    double A = 0.0;
    std::vector<double> A_list;
    std::vector<double> s_list;
    std::vector<double> x_list;
    double tol = 1e-12;
    std::string format = "json";
    bool check = false;
    double perturb = 1.0;
};

std::string tagged(const char* name, double s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s(s=%.17g)", name, s);
    return buf;
}

// Evaluates fn over items concurrently, returning results in input order.
template <class T, class F>
auto ordered_map(const std::vector<T>& items, F fn) {
    using R = decltype(fn(items.front()));
    std::vector<std::future<R>> futures;
    futures.reserve(items.size());
    for (const T& item : items) {
        futures.push_back(std::async(std::launch::async, fn, item));
    }
    std::vector<R> out;
    out.reserve(items.size());
    for (auto& f : futures) {
        out.push_back(f.get());
    }
    return out;
}

int cmd_eig(const Options& o, std::ostream& out) {
    const EigenSystem eig = solve_lambda(o.A, o.tol);
    const LambdaBracket b = lambda_bounds(o.A);
    EvalReport r;
    r.command = "eig";
    r.inputs = {{"A", o.A}, {"tol", o.tol}};
    r.results = {
        {"lambda", eig.lambda(), Provenance::closed_form, {}},
        {"xi_re", eig.xi().real(), Provenance::closed_form, {}},
        {"xi_im", eig.xi().imag(), Provenance::closed_form, {}},
        {"C", eig.C(), Provenance::closed_form, {}},
        {"residual", eig.residual(), Provenance::identity, {}},
        {"bracket_lo", b.lo, Provenance::closed_form, {}},
        {"bracket_hi", b.hi, Provenance::closed_form, {}},
    };
    const bool inside = eig.lambda() > b.lo && eig.lambda() < b.hi;
    r.checks.push_back({"bracket", inside, inside ? 0.0 : 1.0, 0.0});
    r.checks.push_back(make_check("eigencondition", eig.residual() / eig.scale(), 1e-9));
    out << r.to_json() << '\n';
    return r.all_pass() ? exit_ok : exit_invariant_failure;
}

int cmd_density(const Options& o, bool cdf, std::ostream& out) {
    const EigenSystem eig = solve_lambda(o.A, o.tol);
    std::vector<double> xs = o.x_list;
    if (xs.empty()) {
        for (int i = 1; i <= 20; ++i) {
            xs.push_back(o.A * i / 20.0);
        }
    }
    const char* field = cdf ? "cdf" : "pdf";
    const char* limit_field = cdf ? "stationary_cdf" : "stationary_pdf";
    if (o.format == "csv") {
        out << "A,lambda,x," << field << ',' << limit_field << '\n';
    }
    for (double x : xs) {
        const double v = cdf ? qsd_cdf(eig, x) : qsd_pdf(eig, x);
        const double h = cdf ? stationary_cdf(x) : stationary_pdf(x);
        if (o.format == "csv") {
            out << format_number(o.A) << ',' << format_number(eig.lambda()) << ',' << format_number(x)
                << ',' << format_number(v) << ',' << format_number(h) << '\n';
        } else {
            JsonWriter w;
            w.begin_object();
            w.key("schema_version");
            w.value(schema_version);
            w.key("command");
            w.value(field);
            w.key("A");
            w.value(o.A);
            w.key("lambda");
            w.value(eig.lambda());
            w.key("x");
            w.value(x);
            w.key(field);
            w.value(v);
            w.key(limit_field);
            w.value(h);
            w.end_object();
            out << w.str() << '\n';
        }
    }
    return exit_ok;
}

int cmd_moment(const Options& o, std::ostream& out) {
    const EigenSystem eig = solve_lambda(o.A, o.tol);
    EvalReport r;
    r.command = "moment";
    r.inputs = {{"A", o.A}, {"s", o.s_list}, {"tol", o.tol}, {"check", o.check ? "true" : "false"}};
    r.results.push_back({"lambda", eig.lambda(), Provenance::closed_form, {}});
    struct Row {
        MomentResult m;
        double quad = 0.0;
    };
    const auto rows = ordered_map(o.s_list, [&](double s) {
        Row row{moment_frac(eig, s)};
        if (o.check) {
            row.quad = quad_moment(eig, s);
        }
        return row;
    });
    for (const Row& row : rows) {
        const double s = row.m.s;
        r.results.push_back({tagged("M", s), row.m.value, Provenance::closed_form, method_name(row.m)});
        if (s < 1.0) {
            r.results.push_back({tagged("limit", s), limit_moment(s), Provenance::closed_form, {}});
        }
        if (row.m.recurrence_residual) {
            const double scale = std::max(1.0, eig.lambda() * std::pow(eig.A(), s));
            r.checks.push_back(make_check(tagged("recurrence", s), *row.m.recurrence_residual / scale, 1e-8));
        }
        r.checks.push_back(make_check(tagged("im_residue", s), row.m.im_residue,
                                      1e-9 * std::max(1.0, std::abs(row.m.value))));
        if (o.check) {
            r.results.push_back({tagged("M_quad", s), row.quad, Provenance::quadrature, {}});
            r.checks.push_back(make_check(tagged("oracle", s),
                                          std::abs(row.m.value - row.quad) / std::abs(row.quad), 1e-8));
        }
    }
    out << r.to_json() << '\n';
    return r.all_pass() ? exit_ok : exit_invariant_failure;
}

int cmd_table(const Options& o, std::ostream& out) {
    struct Cell {
        double A;
        double lambda;
        MomentResult m;
    };
    const auto blocks = ordered_map(o.A_list, [&](double A) {
        const EigenSystem eig = solve_lambda(A, o.tol);
        std::vector<Cell> cells;
        for (double s : o.s_list) {
            cells.push_back({A, eig.lambda(), moment_frac(eig, s)});
        }
        return cells;
    });
    const bool csv = o.format == "csv";
    if (csv) {
        out << "A,lambda,s,moment,method,residual,limit\n";
    }
    for (const auto& block : blocks) {
        for (const Cell& c : block) {
            const bool has_limit = c.m.s < 1.0;
            const double limit = has_limit ? limit_moment(c.m.s) : 0.0;
            if (csv) {
                out << format_number(c.A) << ',' << format_number(c.lambda) << ',' << format_number(c.m.s)
                    << ',' << format_number(c.m.value) << ',' << csv_field(method_name(c.m)) << ','
                    << (c.m.recurrence_residual ? format_number(*c.m.recurrence_residual) : "") << ','
                    << (has_limit ? format_number(limit) : "") << '\n';
            } else {
                JsonWriter w;
                w.begin_object();
                w.key("schema_version");
                w.value(schema_version);
                w.key("A");
                w.value(c.A);
                w.key("lambda");
                w.value(c.lambda);
                w.key("s");
                w.value(c.m.s);
                w.key("moment");
                w.value(c.m.value);
                w.key("method");
                w.value(method_name(c.m));
                w.key("residual");
                if (c.m.recurrence_residual) {
                    w.value(*c.m.recurrence_residual);
                } else {
                    w.null();
                }
                w.key("limit");
                if (has_limit) {
                    w.value(limit);
                } else {
                    w.null();
                }
                w.end_object();
                out << w.str() << '\n';
            }
        }
    }
    return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out) {
    std::vector<double> grid = o.A_list;
    if (grid.empty()) {
        grid = {1.0, 5.0, 20.0, 100.0};
    }
    const auto suites = ordered_map(grid, [&](double A) {
        const EigenSystem solved = solve_lambda(A, o.tol);
        if (o.perturb == 1.0) {
            return verify_barrier(solved);
        }
        return verify_barrier(solved.with_lambda(solved.lambda() * o.perturb));
    });
    EvalReport r;
    r.command = "verify";
    r.inputs = {{"A", grid}, {"tol", o.tol}};
    if (o.perturb != 1.0) {
        r.inputs.emplace_back("perturb_lambda", o.perturb);
    }
    for (const auto& s : suites) {
        r.results.insert(r.results.end(), s.results.begin(), s.results.end());
        r.checks.insert(r.checks.end(), s.checks.begin(), s.checks.end());
    }
    out << r.to_json() << '\n';
    return r.all_pass() ? exit_ok : exit_invariant_failure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasi-stationary distribution of the Shiryaev diffusion on [0, A]"};
    app.require_subcommand(1, 1);
    Options o;

    auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", o.tol, "relative tolerance on lambda")
            ->check(CLI::Range(1e-14, 1e-6))
            ->capture_default_str();
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };

    auto* eig = app.add_subcommand("eig", "solve for the eigenvalue, xi and the normalizer");
    eig->add_option("--A", o.A, "barrier level")->required();
    add_tol(eig);

    auto* pdf = app.add_subcommand("pdf", "quasi-stationary density at x");
    auto* cdf = app.add_subcommand("cdf", "quasi-stationary distribution function at x");
    for (auto* sub : {pdf, cdf}) {
        sub->add_option("--A", o.A, "barrier level")->required();
        sub->add_option("--x", o.x_list, "evaluation points (default: 20 points on (0, A])");
        add_tol(sub);
        add_format(sub);
    }

    auto* moment = app.add_subcommand("moment", "fractional moments M_s");
    moment->add_option("--A", o.A, "barrier level")->required();
    moment->add_option("--s", o.s_list, "moment order (repeatable)")->required();
    moment->add_flag("--check", o.check, "cross-check against quadrature");
    add_tol(moment);

    auto* table = app.add_subcommand("table", "moment table over an A x s grid");
    table->add_option("--A", o.A_list, "barrier levels (repeatable)")->required();
    table->add_option("--s", o.s_list, "moment orders (repeatable)")->required();
    add_tol(table);
    add_format(table);

    auto* verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--A", o.A_list, "barrier levels (default 1 5 20 100)");
    verify->add_option("--perturb-lambda", o.perturb, "multiply lambda before checking")->group("");
    add_tol(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (eig->parsed()) {
            return cmd_eig(o, out);
        }
        if (pdf->parsed()) {
            return cmd_density(o, false, out);
        }
        if (cdf->parsed()) {
            return cmd_density(o, true, out);
        }
        if (moment->parsed()) {
            return cmd_moment(o, out);
        }
        if (table->parsed()) {
            return cmd_table(o, out);
        }
        return cmd_verify(o, out);
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return exit_usage;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << '\n';
        return exit_usage;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << '\n';
        return exit_convergence;
    } catch (const std::exception& e) {
        err << "invariant failure: " << e.what() << '\n';
        return exit_invariant_failure;
    }
}

}  // namespace qsd::cli
