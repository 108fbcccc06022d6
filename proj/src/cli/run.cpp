#include "cli/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "cli/figures.hpp"
#include "cylvdw/errors.hpp"
#include "cylvdw/guided_modes.hpp"
#include "cylvdw/materials.hpp"
#include "cylvdw/pec_modesum.hpp"
#include "cylvdw/specfun.hpp"

namespace cylvdw::cli {

namespace {

cplx project(const greens::AxialGreen& g, potential::Orientation o)
{
    return o == potential::Orientation::axial ? g.zz : g.perp;
}

std::string join(const std::vector<std::string>& lines)
{
    std::string s;
    for (const auto& l : lines) s += l + "\n";
    return s;
}

std::string green_csv(const Resolved& r)
{
    const double k0 = 1.0 / r.length_unit;
    const cplx w = r.xi ? cplx(0.0, *r.xi * r.emitter.omega) : cplx(r.emitter.omega, 0.0);
    greens::GreenOptions go;
    go.rel_tol = r.options.green_rel_tol;
    auto rows = parallel_map<std::string>(r.z.size(), r.jobs, [&](std::size_t i) {
        const double x = r.z[i] / r.length_unit;
        try {
            const auto g = greens::total_green_onaxis(w, r.z[i], r.geometry, go);
            return format_number(x) + "," + format_number(g.perp.real() / k0) + "," + format_number(g.perp.imag() / k0) + "," +
                   format_number(g.zz.real() / k0) + "," + format_number(g.zz.imag() / k0) + ",ok\n";
        } catch (const std::exception& e) {
            throw PointFailure(e.what(), x);
        }
    });
    std::string s = "# green function in units of Omega/c at " + std::string(r.xi ? "omega = i xi" : "omega = Omega") + "\n";
    s += "z_over_cOmega,Re_g_perp,Im_g_perp,Re_g_zz,Im_g_zz,flags\n";
    for (const auto& l : rows) s += l;
    return s;
}

std::string modes_csv(const Resolved& r)
{
    const double w = r.emitter.omega, k0 = w / si::c;
    std::string s = "channel,status,n_eff,h_re_over_k0,h_im_over_k0,beta\n";
    for (auto ch : {guided::Channel::radial, guided::Channel::axial}) {
        const std::string name = ch == guided::Channel::radial ? "radial" : "axial";
        try {
            const auto m = guided::find_fundamental_mode(w, r.geometry, ch);
            if (!m) {
                s += name + ",none,nan,nan,nan,nan\n";
                continue;
            }
            s += name + ",guided," + format_number(m->n_eff) + "," + format_number(m->h_pole.real() / k0) + "," +
                 format_number(m->h_pole.imag() / k0) + "," + format_number(m->beta) + "\n";
        } catch (const MaterialError&) {
            try {
                const auto m = guided::estimate_lossy_pole(w, r.geometry, ch);
                s += name + ",lossy," + format_number(m.n_eff) + "," + format_number(m.h_pole.real() / k0) + "," +
                     format_number(m.h_pole.imag() / k0) + ",nan\n";
            } catch (const FitError&) {
                s += name + ",none,nan,nan,nan,nan\n";
            }
        }
    }
    return s;
}

std::string materials_csv(double omega)
{
    std::string s = "name,model,eps_re,eps_im,provenance\n";
    for (const auto& n : materials::preset_names()) {
        const auto p = materials::preset(n);
        const auto e = materials::permittivity(p.model, omega);
        std::string prov = p.provenance;
        for (char& c : prov)
            if (c == ',' || c == '\n') c = ';';
        std::string model = materials::describe(p.model);
        for (char& c : model)
            if (c == ',') c = ';';
        s += n + "," + model + "," + (e.perfect_conductor ? "-inf" : format_number(e.value.real())) + "," +
             (e.perfect_conductor ? "0" : format_number(e.value.imag())) + "," + prov + "\n";
    }
    return s;
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Check> selftest_checks()
{
    std::vector<Check> out;
    auto add = [&](const std::string& n, bool p, double v) {
        std::ostringstream d;
        d.precision(6);
        d << v;
        out.push_back({n, p, d.str()});
    };
    {
        double worst = 0.0;
        for (double re : {0.5, 3.0, 15.0, 40.0})
            for (double im : {-2.0, 0.0, 2.0}) {
                const cplx z(re, im);
                const cplx w = specfun::bessel_j(1, z) * specfun::hankel1(0, z) - specfun::bessel_j(0, z) * specfun::hankel1(1, z);
                const cplx ref = cplx(0.0, 2.0) / (pi * z);
                worst = std::max(worst, std::abs(w - ref) / std::abs(ref));
            }
        add("bessel wronskian", worst < 1e-12, worst);
    }
    {
        const double om = wavelength_to_omega(780e-9), R = 0.8 * si::c / om;
        greens::Geometry g;
        g.radius = R;
        g.cladding = materials::PerfectConductor{};
        const cplx w(0.0, om);
        const auto a = greens::total_green_onaxis(w, R, g);
        const auto b = pec::pec_green_onaxis(w, R, R).green;
        const double e = std::max(std::abs(a.zz - b.zz) / std::abs(b.zz), std::abs(a.perp - b.perp) / std::abs(b.perp));
        add("pec reflection integral vs mode sum", e < 1e-6, e);
    }
    {
        potential::Emitter em;
        em.omega = wavelength_to_omega(780e-9);
        const double l = si::c / em.omega;
        const double u1 = potential::free_space_potential(1e-3 * l, materials::Constant{1.0}, em);
        const double u2 = potential::free_space_potential(2e-3 * l, materials::Constant{1.0}, em);
        const double slope = std::log(u2 / u1) / std::log(2.0);
        add("free-space near-field slope", std::abs(slope + 6.0) < 0.05, slope);
    }
    {
        const double om = wavelength_to_omega(780e-9);
        greens::Geometry g;
        g.radius = 0.8 * si::c / om;
        g.core = materials::Constant{13.5};
        const auto m = guided::find_fundamental_mode(om, g, guided::Channel::radial, false);
        const double n = m ? m->n_eff : 0.0;
        add("silicon guide n_eff", m && n > 1.0 && n < std::sqrt(13.5), n);
    }
    return out;
}

int handle(const std::function<void()>& body, std::ostream& err)
{
    try {
        body();
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "vdw: config error: " << e.what() << "\n";
        return exit_config;
    } catch (const IoError& e) {
        err << "vdw: i/o error: " << e.what() << "\n";
        return exit_io;
    } catch (const PointFailure& e) {
        err << "vdw: numerical failure at z Omega/c = " << format_number(e.z) << ": " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "vdw: numerical failure: " << e.what() << "\n";
        return exit_numerical;
    }
}

}  // namespace

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string format_row(const Row& r)
{
    return format_number(r.x) + "," + format_number(r.total) + "," + format_number(r.u0) + "," + format_number(r.usc) + "," +
           format_number(r.ucross) + "," + format_number(r.normalized) + "," + r.flags;
}

std::vector<Row> potential_rows(const Resolved& r)
{
    const bool resonant = r.computation == Computation::resonant_init || r.computation == Computation::resonant_steady;
    if (!resonant && r.computation != Computation::ground) throw ConfigError("potential rows need a ground or resonant computation");
    const auto form = r.computation == Computation::resonant_init ? potential::ResonantForm::init : potential::ResonantForm::steady;
    return parallel_map<Row>(r.z.size(), r.jobs, [&](std::size_t i) {
        Row row;
        row.x = r.z[i] / r.length_unit;
        try {
            if (!resonant) {
                const auto b = potential::vdw_potential(r.z[i], r.geometry, r.emitter, r.decomposition, r.options);
                row.total = b.Utotal;
                row.u0 = b.U0;
                row.usc = b.Usc;
                row.ucross = b.Ucross;
                row.normalized = b.normalized();
            } else {
                potential::ResonantOptions ro;
                ro.green.rel_tol = r.options.green_rel_tol;
                const double u = potential::resonant_potential(r.z[i], r.geometry, r.emitter, r.emitter, form, ro);
                const cplx k2 = greens::core_wavenumber(r.emitter.omega, r.geometry);
                const cplx g0 = project(greens::bulk_green(k2, r.z[i]), r.emitter.orientation);
                const double ufree = potential::resonant_potential(g0, r.emitter, r.emitter, form, ro);
                row.total = u;
                row.u0 = row.usc = row.ucross = std::nan("");
                row.normalized = u / ufree;
                row.flags = form == potential::ResonantForm::init ? "resonant-init" : "resonant-steady";
            }
        } catch (const std::exception& e) {
            throw PointFailure(e.what(), row.x);
        }
        return row;
    });
}

std::string run_to_string(const RunConfig& config)
{
    const Resolved r = resolve(config);
    std::string s = join(header_lines(config));
    switch (r.computation) {
        case Computation::green:
            return s + green_csv(r);
        case Computation::modes:
            return s + modes_csv(r);
        default:
            break;
    }
    s += std::string(csv_columns) + "\n";
    for (const auto& row : potential_rows(r)) s += format_row(row) + "\n";
    return s;
}

void write_output(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path == "-" || path.empty()) {
        out << text;
        if (!out) throw IoError("cannot write to stdout");
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw IoError("write to '" + path + "' failed");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"vdw: dispersion potentials between emitters on the axis of a cylindrical waveguide"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("vdw ") + CYLVDW_VERSION);

    // run commands share every config key as a flag
    struct RunCommand {
        CLI::App* app;
        std::map<std::string, std::string> flags;
        std::map<std::string, CLI::Option*> options;
        std::string preset, config_path;
        CLI::Option* preset_opt = nullptr;
    };
    std::vector<std::unique_ptr<RunCommand>> runs;
    for (const char* name : {"potential", "green", "modes"}) {
        auto rc = std::make_unique<RunCommand>();
        const std::string desc = std::string(name) == "potential" ? "potential curve U(z) as CSV"
                                 : std::string(name) == "green"   ? "on-axis Green function as CSV"
                                                                  : "fundamental guided modes";
        rc->app = app.add_subcommand(name, desc);
        for (const auto& k : config_keys()) {
            if (k.name == "command") continue;
            rc->options[k.name] = rc->app->add_option("--" + k.name, rc->flags[k.name], k.help);
        }
        rc->preset_opt = rc->app->add_option("--preset", rc->preset, "alias of --clad");
        rc->app->add_option("--config", rc->config_path, "key=value file; flags override it");
        runs.push_back(std::move(rc));
    }

    double mat_lambda_nm = 780.0;
    auto* mats = app.add_subcommand("materials", "list material presets with eps at the given wavelength");
    mats->add_option("--lambda", mat_lambda_nm, "wavelength in nm");

    std::string fig_name, fig_dir = ".";
    int fig_points = 60, fig_jobs = 1;
    auto* fig = app.add_subcommand("figure", "write the datasets of one figure (one CSV per curve)");
    fig->add_option("name", fig_name, "fig2a fig2b fig3a fig3b fig4a fig4b fig5 fig6")->required();
    fig->add_option("--points", fig_points, "samples per curve");
    fig->add_option("--outdir", fig_dir, "output directory");
    fig->add_option("--jobs", fig_jobs, "worker threads");

    auto* self = app.add_subcommand("selftest", "quick internal consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    for (auto& rc : runs) {
        if (!rc->app->parsed()) continue;
        return handle(
            [&] {
                RunConfig c;
                c.set("command", rc->app->get_name());
                if (!rc->config_path.empty()) apply_file(c, rc->config_path);
                if (rc->preset_opt->count() > 0) {
                    if (rc->options["clad"]->count() > 0) throw ConfigError("give either --preset or --clad");
                    c.set("clad", rc->preset);
                }
                for (auto& [k, opt] : rc->options)
                    if (opt->count() > 0) c.set(k, rc->flags[k]);
                const std::string text = run_to_string(c);
                write_output(text, c.get("output"), out);
            },
            err);
    }
    if (mats->parsed()) {
        return handle(
            [&] {
                if (!(mat_lambda_nm > 0.0)) throw ConfigError("--lambda must be positive");
                write_output(materials_csv(wavelength_to_omega(mat_lambda_nm * 1e-9)), "-", out);
            },
            err);
    }
    if (fig->parsed()) {
        return handle(
            [&] {
                if (fig_points < 2) throw ConfigError("--points must be >= 2");
                if (fig_jobs < 1) throw ConfigError("--jobs must be >= 1");
                const auto files = make_figure(fig_name, fig_points, fig_jobs);
                std::error_code ec;
                std::filesystem::create_directories(fig_dir, ec);
                if (ec) throw IoError("cannot create '" + fig_dir + "': " + ec.message());
                for (const auto& f : files) {
                    const std::string path = fig_dir + "/" + f.name;
                    write_output(f.text, path, out);
                    out << path << "\n";
                }
            },
            err);
    }
    if (self->parsed()) {
        int code = exit_ok;
        const int h = handle(
            [&] {
                for (const auto& c : selftest_checks()) {
                    out << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
                    if (!c.pass) code = exit_numerical;
                }
            },
            err);
        return h != exit_ok ? h : code;
    }
    return exit_config;
}

}  // namespace cylvdw::cli
