#include "cylvdw/materials.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cylvdw/errors.hpp"

namespace cylvdw::materials {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_nonneg(double v, const char* what)
{
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be finite and >= 0");
}

cplx drude_term(double wp, double gamma, cplx w)
{
    if (w == 0.0) throw DomainError("Drude permittivity diverges at omega = 0");
    return -wp * wp / (w * (w + cplx(0.0, gamma)));
}

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

// Free-carrier plasma frequency and damping for n-type silicon.
Drude doped_silicon_carriers()
{
    const double n = 1.3e24;            // m^-3 (1.3e18 cm^-3)
    const double m_eff = 0.26 * si::m_e;  // conductivity effective mass
    const double mobility = 0.02;       // m^2/(V s)
    return {std::sqrt(n * si::e * si::e / (si::eps0 * m_eff)), si::e / (m_eff * mobility)};
}

std::optional<std::filesystem::path> data_file(const std::string& name)
{
    const char* dir = std::getenv("VDW_DATA_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir) / (name + ".dat");
    if (std::filesystem::exists(p)) return p;
    return std::nullopt;
}

}  // namespace

void validate(const PermittivityModel& model)
{
    std::visit(overloaded{
                   [](const Constant& m) {
                       if (!(m.eps >= 1.0) || !std::isfinite(m.eps)) throw DomainError("constant permittivity must be >= 1");
                   },
                   [](const Drude& m) {
                       require_nonneg(m.omega_p, "plasma frequency");
                       require_nonneg(m.gamma, "damping rate");
                   },
                   [](const MeissnerLondon& m) { require_nonneg(m.omega_p, "plasma frequency"); },
                   [](const LorentzDrude& m) {
                       if (!(m.eps_inf >= 1.0) || !std::isfinite(m.eps_inf)) throw DomainError("epsilon_inf must be >= 1");
                       for (const auto& o : m.oscillators) {
                           require_nonneg(o.strength, "oscillator strength");
                           require_nonneg(o.omega, "oscillator frequency");
                           require_nonneg(o.gamma, "oscillator damping");
                       }
                       if (m.free_carriers) {
                           require_nonneg(m.free_carriers->omega_p, "plasma frequency");
                           require_nonneg(m.free_carriers->gamma, "damping rate");
                       }
                   },
                   [](const PerfectConductor&) {},
               },
               model);
}

Permittivity permittivity(const PermittivityModel& model, cplx w)
{
    return std::visit(overloaded{
                          [](const Constant& m) { return Permittivity{m.eps, false}; },
                          [w](const Drude& m) { return Permittivity{1.0 + drude_term(m.omega_p, m.gamma, w), false}; },
                          [w](const MeissnerLondon& m) { return Permittivity{1.0 + drude_term(m.omega_p, 0.0, w), false}; },
                          [w](const LorentzDrude& m) {
                              cplx e = m.eps_inf;
                              for (const auto& o : m.oscillators)
                                  e += o.strength * o.omega * o.omega / (o.omega * o.omega - w * w - cplx(0.0, o.gamma) * w);
                              if (m.free_carriers) e += drude_term(m.free_carriers->omega_p, m.free_carriers->gamma, w);
                              return Permittivity{e, false};
                          },
                          [](const PerfectConductor&) { return Permittivity{0.0, true}; },
                      },
                      model);
}

bool is_perfect_conductor(const PermittivityModel& model)
{
    return std::holds_alternative<PerfectConductor>(model);
}

double skin_depth(double omega_p, double gamma, double omega)
{
    if (!(omega_p > 0.0 && gamma > 0.0 && omega > 0.0)) throw DomainError("skin depth needs positive wp, gamma and omega");
    return std::sqrt(2.0 * gamma * si::c * si::c / (omega_p * omega_p * omega));
}

double london_length(double omega_p)
{
    if (!(omega_p > 0.0)) throw DomainError("London length needs a positive plasma frequency");
    return si::c / omega_p;
}

std::vector<std::string> preset_names()
{
    return {"vacuum", "gold", "niobium-normal", "niobium-sc", "silicon-undoped", "silicon-doped", "vo2-metallic", "vo2-insulating", "pec"};
}

MaterialPreset preset(const std::string& name)
{
    const double au_wp = ev_to_rad_per_s(8.5);
    const double nb_wp = ev_to_rad_per_s(10.0);
    if (name == "vacuum") return {name, Constant{1.0}, "exact"};
    if (name == "pec") return {name, PerfectConductor{}, "ideal boundary"};
    if (name == "gold") return {name, Drude{au_wp, 5e-3 * au_wp}, "Drude, hbar wp = 8.5 eV, gamma = 5e-3 wp"};
    if (name == "niobium-normal") return {name, Drude{nb_wp, 6.5e-3 * nb_wp}, "Drude, hbar wp = 10 eV, gamma = 6.5e-3 wp"};
    if (name == "niobium-sc") return {name, MeissnerLondon{nb_wp}, "Meissner-London, hbar wp = 10 eV"};

    const bool tabulated = name == "silicon-undoped" || name == "silicon-doped" || name == "vo2-metallic" || name == "vo2-insulating";
    if (!tabulated) throw MaterialError("unknown material preset '" + name + "'");
    if (auto file = data_file(name)) return {name, load_oscillator_table(*file), "oscillator table " + file->string()};

    // Built-in surrogates used when no oscillator table is installed.
    if (name == "silicon-undoped") return {name, Constant{13.5}, "surrogate: constant index eps = 13.5"};
    if (name == "silicon-doped") {
        LorentzDrude m;
        m.eps_inf = 11.7;
        m.free_carriers = doped_silicon_carriers();
        return {name, m, "surrogate: eps = 11.7 plus free carriers (n = 1.3e18 cm^-3, m* = 0.26 m_e, mu = 200 cm^2/Vs)"};
    }
    if (name == "vo2-insulating") return {name, Constant{9.0}, "surrogate: constant index n = 3"};
    return {name, Drude{ev_to_rad_per_s(3.33), ev_to_rad_per_s(0.66)}, "surrogate: Drude hbar wp = 3.33 eV, hbar gamma = 0.66 eV"};
}

LorentzDrude parse_oscillator_table(std::istream& in, const std::string& source)
{
    LorentzDrude m;
    bool have_eps = false;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) { throw MaterialError(source + ":" + std::to_string(lineno) + ": " + why); };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "epsilon_inf") {
            if (!(ls >> m.eps_inf)) fail("epsilon_inf needs a value");
            have_eps = true;
        } else if (first == "drude") {
            double wp, g;
            if (!(ls >> wp >> g)) fail("drude needs wp_eV gamma_eV");
            m.free_carriers = Drude{ev_to_rad_per_s(wp), ev_to_rad_per_s(g)};
        } else {
            Oscillator o;
            double w, g;
            try {
                o.strength = std::stod(first);
            } catch (const std::exception&) {
                fail("unrecognised entry '" + first + "'");
            }
            if (!(ls >> w >> g)) fail("oscillator line needs s_j omega_j_eV gamma_j_eV");
            o.omega = ev_to_rad_per_s(w);
            o.gamma = ev_to_rad_per_s(g);
            m.oscillators.push_back(o);
        }
        std::string extra;
        if (ls >> extra) fail("trailing text '" + extra + "'");
    }
    if (!have_eps) throw MaterialError(source + ": missing epsilon_inf header");
    validate(m);
    return m;
}

LorentzDrude load_oscillator_table(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw MaterialError("cannot open oscillator table " + path.string());
    return parse_oscillator_table(in, path.string());
}

std::string describe(const PermittivityModel& model)
{
    return std::visit(overloaded{
                          [](const Constant& m) { return "constant(eps=" + fmt(m.eps) + ")"; },
                          [](const Drude& m) {
                              return "drude(wp=" + fmt(rad_per_s_to_ev(m.omega_p)) + " eV, gamma=" + fmt(rad_per_s_to_ev(m.gamma)) + " eV)";
                          },
                          [](const MeissnerLondon& m) { return "meissner_london(wp=" + fmt(rad_per_s_to_ev(m.omega_p)) + " eV)"; },
                          [](const LorentzDrude& m) {
                              std::string s = "lorentz_drude(eps_inf=" + fmt(m.eps_inf) + ", oscillators=" + std::to_string(m.oscillators.size());
                              if (m.free_carriers)
                                  s += ", drude wp=" + fmt(rad_per_s_to_ev(m.free_carriers->omega_p)) +
                                       " eV gamma=" + fmt(rad_per_s_to_ev(m.free_carriers->gamma)) + " eV";
                              return s + ")";
                          },
                          [](const PerfectConductor&) { return std::string("perfect_conductor"); },
                      },
                      model);
}

}  // namespace cylvdw::materials
