#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "knots/contour.hpp"
#include "knots/hankel.hpp"
#include "knots/metric.hpp"
#include "knots/shoot.hpp"
#include "knots/spectrum.hpp"

namespace {

using knots::Complex;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Cell {
    std::string name;
    std::string value;
    bool quoted = false;
};
using Row = std::vector<Cell>;

Cell num(std::string name, double v) { return Cell{std::move(name), fmt_double(v), false}; }
Cell num(std::string name, long long v) { return Cell{std::move(name), std::to_string(v), false}; }
Cell text(std::string name, std::string v) { return Cell{std::move(name), std::move(v), true}; }

void write_table(std::ostream& os, const std::vector<Row>& rows, const std::string& format) {
    if (format == "json") {
        os << "[\n";
        for (size_t r = 0; r < rows.size(); ++r) {
            os << "  {";
            for (size_t i = 0; i < rows[r].size(); ++i) {
                const Cell& c = rows[r][i];
                os << '"' << c.name << "\": ";
                if (c.quoted) os << '"' << c.value << '"';
                else os << c.value;
                if (i + 1 < rows[r].size()) os << ", ";
            }
            os << '}' << (r + 1 < rows.size() ? "," : "") << '\n';
        }
        os << "]\n";
        return;
    }
    if (!rows.empty()) {
        for (size_t i = 0; i < rows[0].size(); ++i)
            os << rows[0][i].name << (i + 1 < rows[0].size() ? "," : "\n");
    }
    for (const Row& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << row[i].value << (i + 1 < row.size() ? "," : "\n");
    }
}

std::string resolve_output(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    if (const char* dir = std::getenv("KNOTS_OUTPUT_DIR"))
        return std::string(dir) + "/" + path;
    return path;
}

void emit(const std::vector<Row>& rows, const std::string& format, const std::string& output) {
    if (output.empty()) {
        write_table(std::cout, rows, format);
        return;
    }
    std::ofstream os(resolve_output(output));
    if (!os) throw knots::ValidationError("cannot open output file: " + output);
    write_table(os, rows, format);
}

struct ContourArgs {
    int N = 1;
    double s0 = 5.0, eps = 0.25, r0 = 1.0;
};

void add_contour_flags(CLI::App* cmd, ContourArgs& a) {
    cmd->add_option("--N", a.N, "winding number");
    cmd->add_option("--s0", a.s0, "junction parameter");
    cmd->add_option("--eps", a.eps, "branch tilt");
    cmd->add_option("--r0", a.r0, "turn radius");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum-knot bound-state laboratory"};
    app.require_subcommand(1);

    std::string format = "csv";
    std::string output;
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--output", output, "output file (default stdout)");

    // contour
    auto* c_cmd = app.add_subcommand("contour", "export a knot contour polyline");
    ContourArgs c_args;
    add_contour_flags(c_cmd, c_args);
    double s_min = 0.0, s_max = 0.0;
    int samples = 400;
    c_cmd->add_option("--s-min", s_min, "start of the parameter range");
    c_cmd->add_option("--s-max", s_max, "end of the parameter range");
    c_cmd->add_option("--samples", samples, "number of samples");

    // spectrum
    auto* sp_cmd = app.add_subcommand("spectrum", "enumerate quantized angular momenta");
    int sp_N = 1, sp_Mmax = 10, sp_D = 3, sp_m = 0;
    sp_cmd->add_option("--N", sp_N, "winding number");
    sp_cmd->add_option("--m-max", sp_Mmax, "largest label M");
    sp_cmd->add_option("--D", sp_D, "spatial dimension for the coupling column");
    sp_cmd->add_option("--partial-wave", sp_m, "partial wave m for the coupling column");

    // hankel
    auto* h_cmd = app.add_subcommand("hankel", "tabulate Hankel values on the surface");
    double h_nu = 0.5, h_theta = 0.0, h_rho_min = 0.5, h_rho_max = 20.0;
    int h_samples = 40;
    h_cmd->add_option("--nu", h_nu, "order")->required();
    h_cmd->add_option("--theta", h_theta, "unwrapped argument angle");
    h_cmd->add_option("--rho-min", h_rho_min, "smallest modulus");
    h_cmd->add_option("--rho-max", h_rho_max, "largest modulus");
    h_cmd->add_option("--samples", h_samples, "number of rows");

    // shoot
    auto* sh_cmd = app.add_subcommand("shoot", "ODE admissibility verification");
    ContourArgs sh_args;
    add_contour_flags(sh_cmd, sh_args);
    std::vector<double> sh_nus;
    double sh_kappa = 1.0, sh_tol = 1e-12;
    std::string sh_dump;
    sh_cmd->add_option("--nu", sh_nus, "order(s) to test")->required()->expected(-1);
    sh_cmd->add_option("--kappa", sh_kappa, "sqrt(E)");
    sh_cmd->add_option("--tol", sh_tol, "integrator tolerance");
    sh_cmd->add_option("--dump-trajectory", sh_dump, "trajectory CSV for the last run");

    // metric
    auto* m_cmd = app.add_subcommand("metric", "truncated-metric residual demo");
    int m_dim = 10;
    unsigned m_seed = 1;
    double m_skew = 0.5;
    std::string m_summary;
    m_cmd->add_option("--dim", m_dim, "model dimension");
    m_cmd->add_option("--seed", m_seed, "RNG seed");
    m_cmd->add_option("--skew", m_skew, "non-unitarity strength");
    m_cmd->add_option("--summary", m_summary, "write a JSON model summary to this file");

    try {
        app.parse(argc, argv);

        std::vector<Row> rows;
        if (*c_cmd) {
            knots::Contour c = knots::build_contour(c_args.N, c_args.s0, c_args.eps, c_args.r0);
            if (s_min == 0.0 && s_max == 0.0) {
                s_max = c.middle_half + 10.0;
                s_min = -s_max;
            }
            for (const auto& r : knots::export_polyline(c, s_min, s_max, samples)) {
                rows.push_back(Row{num("s", r.s), num("x", r.x), num("y", r.y),
                                   num("theta", r.theta),
                                   num("sector", static_cast<long long>(r.sector))});
            }
        } else if (*sp_cmd) {
            for (const auto& e : knots::enumerate_spectrum(sp_N, sp_Mmax)) {
                knots::Rational g = knots::gamma_for(sp_D, sp_m, e.winding, e.label);
                rows.push_back(Row{num("N", static_cast<long long>(e.winding)),
                                   num("M", static_cast<long long>(e.label)),
                                   num("ell_num", static_cast<long long>(e.ell.num())),
                                   num("ell_den", static_cast<long long>(e.ell.den())),
                                   num("nu_num", static_cast<long long>(e.nu.num())),
                                   num("nu_den", static_cast<long long>(e.nu.den())),
                                   num("gamma_num", static_cast<long long>(g.num())),
                                   num("gamma_den", static_cast<long long>(g.den()))});
            }
        } else if (*h_cmd) {
            if (h_samples < 1) throw knots::ValidationError("need at least one sample");
            for (int i = 0; i < h_samples; ++i) {
                double rho = h_samples == 1
                                 ? h_rho_min
                                 : h_rho_min + (h_rho_max - h_rho_min) * i / (h_samples - 1.0);
                knots::HankelValue v =
                    knots::hankel_on_surface(h_nu, knots::SurfacePoint{rho, h_theta});
                rows.push_back(Row{num("nu", h_nu), num("rho", rho), num("theta", h_theta),
                                   num("re_h1", v.h1.real()), num("im_h1", v.h1.imag()),
                                   num("re_h2", v.h2.real()), num("im_h2", v.h2.imag())});
            }
        } else if (*sh_cmd) {
            knots::Contour c =
                knots::build_contour(sh_args.N, sh_args.s0, sh_args.eps, sh_args.r0);
            knots::ShootOptions opts;
            opts.tol = sh_tol;
            for (double nu : sh_nus) {
                knots::ShootResult r =
                    knots::verify_admissibility(nu, sh_args.N, sh_kappa, c, opts);
                const char* verdict =
                    r.classification == knots::Admissibility::Admissible     ? "true"
                    : r.classification == knots::Admissibility::Rejected     ? "false"
                                                                             : "indeterminate";
                rows.push_back(Row{num("nu", r.nu), num("N", static_cast<long long>(r.winding)),
                                   num("kappa", r.kappa), num("ratio", r.ratio),
                                   text("admissible", verdict),
                                   num("wronskian_drift", r.wronskian_drift)});
                if (!sh_dump.empty() && nu == sh_nus.back()) {
                    const double span = knots::shooting_span(c, sh_kappa, opts);
                    auto run = knots::integrate(nu, sh_kappa, c, -span, span, opts.tol);
                    std::vector<Row> traj;
                    for (const auto& p : run.trajectory) {
                        knots::Complex z = knots::sample(c, p.s).point.principal();
                        traj.push_back(Row{num("s", p.s), num("x", z.real()), num("y", z.imag()),
                                           num("re_psi", p.psi.real()),
                                           num("im_psi", p.psi.imag()),
                                           num("scale_log", p.scale_log)});
                    }
                    std::ofstream ts(resolve_output(sh_dump));
                    if (!ts) throw knots::ValidationError("cannot open trajectory file");
                    write_table(ts, traj, "csv");
                }
            }
        } else if (*m_cmd) {
            knots::MetricModel model = knots::build_model(m_dim, m_seed, m_skew);
            std::vector<double> weights(static_cast<size_t>(m_dim), 1.0);
            for (const auto& [M, residual] : knots::residual_curve(model, weights))
                rows.push_back(Row{num("M", static_cast<long long>(M)),
                                   num("residual", residual)});
            if (!m_summary.empty()) {
                std::ofstream ss(resolve_output(m_summary));
                if (!ss) throw knots::ValidationError("cannot open summary file");
                ss << "{\n  \"dim\": " << m_dim << ",\n  \"skew\": " << fmt_double(m_skew)
                   << ",\n  \"seed\": " << m_seed << ",\n  \"spectrum\": [";
                for (int i = 0; i < m_dim; ++i)
                    ss << fmt_double(model.levels(i)) << (i + 1 < m_dim ? ", " : "");
                ss << "]\n}\n";
            }
        }
        emit(rows, format, output);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const knots::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const knots::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
}
