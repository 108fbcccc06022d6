#include "cli/figures.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "cli/config.hpp"
#include "cli/run.hpp"
#include "cylvdw/errors.hpp"
#include "cylvdw/pec_modesum.hpp"

namespace cylvdw::cli {

namespace {

enum class Extra { none, asymptote, tail_fit };

struct Curve {
    std::string file;
    std::string label;
    std::map<std::string, std::string> keys;
    Extra extra = Extra::none;
};

struct Figure {
    std::string name;
    std::string caption;
    std::vector<Curve> curves;
};

std::string fmt_r(double r)
{
    char b[16];
    std::snprintf(b, sizeof b, "%.1f", r);
    return b;
}

Curve curve(const std::string& file, const std::string& label, const std::string& core, const std::string& clad, const std::string& R,
            const std::string& orient, const std::string& zmin, const std::string& zmax, const std::string& zunit, const std::string& spacing,
            Extra extra = Extra::none)
{
    Curve c;
    c.file = file;
    c.label = label;
    c.keys = {{"core", core},  {"clad", clad}, {"R", R},         {"orient", orient},   {"zmin", zmin},
              {"zmax", zmax},  {"zunit", zunit}, {"spacing", spacing}, {"lambda", "780nm"}};
    c.extra = extra;
    return c;
}

std::vector<Figure> build()
{
    std::vector<Figure> f;
    for (const char* o : {"radial", "axial"}) {
        const std::string panel = std::string(o) == "radial" ? "fig2a" : "fig2b";
        Figure fig{panel, std::string("contributions U0, U_sc, U_cross; ") + o + " dipoles; R = 0.8 c/Omega; hollow PEC and silicon in vacuum", {}};
        fig.curves.push_back(curve(panel + "_pec.csv", "hollow perfect conductor", "vacuum", "pec", "0.8", o, "0.01", "100", "cOmega", "log"));
        fig.curves.push_back(curve(panel + "_silicon.csv", "undoped silicon in vacuum", "silicon-undoped", "vacuum", "0.8", o, "0.01", "100", "cOmega", "log"));
        f.push_back(fig);
    }
    for (const char* o : {"axial", "radial"}) {
        const bool ax = std::string(o) == "axial";
        const std::string panel = ax ? "fig3a" : "fig3b";
        Figure fig{panel, std::string("perfectly reflecting hollow cylinder, ") + o + " dipoles, R Omega/c = 0.4, 0.8, 1.6, normalized to free space", {}};
        for (double r : {0.4, 0.8, 1.6})
            fig.curves.push_back(curve(panel + "_R" + fmt_r(r) + ".csv", "R Omega/c = " + fmt_r(r), "vacuum", "pec", fmt_r(r), o, "0.1", "8", "R", "linear",
                                       ax ? Extra::asymptote : Extra::tail_fit));
        f.push_back(fig);
    }
    for (const char* o : {"axial", "radial"}) {
        const bool ax = std::string(o) == "axial";
        const std::string panel = ax ? "fig4a" : "fig4b";
        Figure fig{panel, std::string("hollow conducting cylinder, Omega = 2 pi c/780nm, R Omega/c = 0.8, ") + o + " dipoles, normalized to free space", {}};
        for (const char* clad : {"pec", "gold", "vo2-metallic", "silicon-doped"})
            fig.curves.push_back(curve(panel + "_" + clad + ".csv", clad, "vacuum", clad, "0.8", o, "0.1", "8", "R", "linear",
                                       ax ? Extra::asymptote : Extra::tail_fit));
        f.push_back(fig);
    }
    {
        Figure fig{"fig5", "silicon cylinder in vacuum vs hollow PEC, Omega = 2 pi c/780nm, R Omega/c = 0.8; normalization: bulk potential in the core medium", {}};
        for (const char* o : {"axial", "radial"}) {
            fig.curves.push_back(curve(std::string("fig5_silicon_") + o + ".csv", std::string("silicon, ") + o, "silicon-undoped", "vacuum", "0.8", o, "0.1", "30",
                                       "cOmega", "log"));
            fig.curves.push_back(curve(std::string("fig5_pec_") + o + ".csv", std::string("hollow PEC, ") + o, "vacuum", "pec", "0.8", o, "0.1", "30", "cOmega", "log"));
        }
        f.push_back(fig);
    }
    {
        Figure fig{"fig6", "silicon cylinder in VO2, Omega = 2 pi c/780nm, R Omega/c = 0.8; T < Tc insulating, T > Tc metallic cladding", {}};
        for (const char* clad : {"vo2-insulating", "vo2-metallic"})
            for (const char* o : {"axial", "radial"})
                fig.curves.push_back(curve(std::string("fig6_") + (std::string(clad) == "vo2-insulating" ? "below_tc_" : "above_tc_") + o + ".csv",
                                           std::string(clad) + ", " + o, "silicon-undoped", clad, "0.8", o, "0.1", "30", "cOmega", "log"));
        f.push_back(fig);
    }
    return f;
}

const std::vector<Figure>& figures()
{
    static const std::vector<Figure> f = build();
    return f;
}

}  // namespace

const std::vector<std::string>& figure_names()
{
    static const std::vector<std::string> n = [] {
        std::vector<std::string> v;
        for (const auto& f : figures()) v.push_back(f.name);
        return v;
    }();
    return n;
}

std::vector<CsvFile> make_figure(const std::string& name, int points, int jobs)
{
    const Figure* fig = nullptr;
    for (const auto& f : figures())
        if (f.name == name) fig = &f;
    if (!fig) {
        std::string list;
        for (const auto& n : figure_names()) list += " " + n;
        throw ConfigError("unknown figure '" + name + "' (available:" + list + ")");
    }
    std::vector<CsvFile> out;
    for (const auto& cv : fig->curves) {
        RunConfig c;
        for (const auto& [k, v] : cv.keys) c.set(k, v);
        c.set("points", std::to_string(points));
        c.set("jobs", std::to_string(jobs));
        const Resolved r = resolve(c);

        std::string text;
        for (const auto& l : header_lines(c)) text += l + "\n";
        text += "# figure=" + fig->name + "\n# caption=" + fig->caption + "\n# curve=" + cv.label + "\n";
        const double R = r.geometry.radius;
        potential::TailFit fit;
        if (cv.extra == Extra::tail_fit) {
            std::vector<double> z, u;
            for (int i = 0; i <= 10; ++i) z.push_back((3.0 + 0.2 * i) * R);
            Resolved rf = r;
            rf.z = z;
            rf.decomposition = false;
            for (const auto& row : potential_rows(rf)) u.push_back(row.normalized);
            fit = potential::fit_radial_tail(z, u, R, 2.999 * R, 5.001 * R);
            text += "# tail_fit window_z_over_R=[3,5] model=" + std::string(fit.model == potential::TailModel::power6 ? "power6" : "pure_exponential") +
                    " effective_radius_m=" + format_number(fit.effective_radius) + " residual=" + format_number(fit.residual) + "\n";
        }
        text += std::string(csv_columns) + ",z_over_R";
        if (cv.extra == Extra::asymptote) text += ",asymptote";
        if (cv.extra == Extra::tail_fit) text += ",tail_fit";
        text += "\n";
        for (const auto& row : potential_rows(r)) {
            const double zr = row.x * r.length_unit / R;
            text += format_row(row) + "," + format_number(zr);
            if (cv.extra == Extra::asymptote) text += "," + format_number(pec::uzz_suppression_ratio(zr));
            if (cv.extra == Extra::tail_fit) text += "," + format_number(fit.prefactor * std::pow(zr, fit.power) * std::exp(-zr * R / fit.decay_length));
            text += "\n";
        }
        out.push_back({cv.file, text});
    }
    return out;
}

}  // namespace cylvdw::cli
