#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cylvdw/errors.hpp"
#include "cylvdw/materials.hpp"

namespace cylvdw::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& text, const std::string& key)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw ConfigError("'" + key + "': not a number: '" + text + "'");
    return v;
}

int to_int(const std::string& text, const std::string& key)
{
    const double v = to_number(text, key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("'" + key + "': not an integer: '" + text + "'");
    return int(v);
}

// splits "780nm" into (780, "nm")
std::pair<double, std::string> split_unit(const std::string& text, const std::string& key)
{
    std::size_t i = text.size();
    while (i > 0 && std::isalpha(static_cast<unsigned char>(text[i - 1]))) --i;
    const std::string num = text.substr(0, i), unit = text.substr(i);
    if (num.empty()) throw ConfigError("'" + key + "': missing number in '" + text + "'");
    return {to_number(num, key), unit};
}

double length_factor(const std::string& unit, const std::string& key)
{
    if (unit == "nm") return 1e-9;
    if (unit == "um") return 1e-6;
    if (unit == "mm") return 1e-3;
    if (unit == "m") return 1.0;
    throw ConfigError("'" + key + "': unknown length unit '" + unit + "' (nm, um, mm, m)");
}

void one_of(const std::string& key, const std::string& v, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (v == a) return;
    std::string list;
    for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
    throw ConfigError("'" + key + "' must be one of {" + list + "}, got '" + v + "'");
}

materials::PermittivityModel material(const std::string& name, const std::string& key)
{
    try {
        return materials::preset(name).model;
    } catch (const MaterialError& e) {
        throw ConfigError("'" + key + "': " + std::string(e.what()) + " (see `vdw materials`; tabulated presets are read from $VDW_DATA_DIR)");
    }
}

}  // namespace

const std::vector<KeySpec>& config_keys()
{
    static const std::vector<KeySpec> keys = {
        {"command", "potential", "potential | green | modes"},
        {"clad", "pec", "cladding preset (eps1)"},
        {"core", "vacuum", "core preset (eps2)"},
        {"R", "0.8", "radius: R Omega/c, or a length with nm/um/mm/m"},
        {"lambda", "780nm", "transition wavelength"},
        {"omega", "", "transition frequency: rad/s or with eV/GHz/THz; overrides lambda"},
        {"orient", "axial", "axial | radial"},
        {"dipole", "", "transition dipole in C m (default e a0)"},
        {"linewidth", "", "emitter linewidth in rad/s"},
        {"zmin", "0.1", "first separation in zunit"},
        {"zmax", "8", "last separation in zunit"},
        {"points", "60", "number of separations"},
        {"spacing", "linear", "linear | log"},
        {"zunit", "cOmega", "cOmega | R | nm"},
        {"computation", "ground", "ground | resonant-init | resonant-steady"},
        {"rel_tol", "1e-6", "relative tolerance of the frequency integral"},
        {"green_rel_tol", "1e-9", "relative tolerance of the Green function"},
        {"decomposition", "on", "on | off"},
        {"xi", "", "green: imaginary frequency xi/Omega (empty: real Omega)"},
        {"output", "-", "output file, - for stdout", false},
        {"jobs", "1", "worker threads", false},
    };
    return keys;
}

RunConfig::RunConfig()
{
    for (const auto& k : config_keys()) values_[k.name] = k.default_value;
}

const std::string& RunConfig::get(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
    return it->second;
}

void RunConfig::set(const std::string& key, const std::string& value)
{
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
    it->second = trim(value);
}

void apply_file(RunConfig& config, std::istream& in, const std::string& source)
{
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(source + ":" + std::to_string(no) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        try {
            config.set(key, line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(no) + ": " + e.what());
        }
    }
}

void apply_file(RunConfig& config, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    apply_file(config, in, path);
}

double parse_omega(const RunConfig& c)
{
    const std::string& om = c.get("omega");
    double w = 0.0;
    if (!om.empty()) {
        const auto [v, unit] = split_unit(om, "omega");
        if (unit.empty()) w = v;
        else if (unit == "eV") w = ev_to_rad_per_s(v);
        else if (unit == "GHz") w = 2.0 * pi * v * 1e9;
        else if (unit == "THz") w = 2.0 * pi * v * 1e12;
        else throw ConfigError("'omega': unknown unit '" + unit + "' (rad/s, eV, GHz, THz)");
    } else {
        const auto [v, unit] = split_unit(c.get("lambda"), "lambda");
        const double lam = v * (unit.empty() ? 1e-9 : length_factor(unit, "lambda"));
        if (!(lam > 0.0)) throw ConfigError("'lambda' must be positive");
        w = wavelength_to_omega(lam);
    }
    if (!(w > 0.0)) throw ConfigError("transition frequency must be positive");
    return w;
}

double parse_length(const std::string& text, double length_unit, const std::string& key)
{
    const auto [v, unit] = split_unit(text, key);
    const double r = unit.empty() ? v * length_unit : v * length_factor(unit, key);
    if (!(r > 0.0)) throw ConfigError("'" + key + "' must be positive");
    return r;
}

Resolved resolve(const RunConfig& c)
{
    Resolved r;
    const std::string& cmd = c.get("command");
    one_of("command", cmd, {"potential", "green", "modes"});
    const double omega = parse_omega(c);
    r.length_unit = si::c / omega;

    r.core_name = c.get("core");
    r.cladding_name = c.get("clad");
    r.geometry.core = material(r.core_name, "core");
    r.geometry.cladding = material(r.cladding_name, "clad");
    r.geometry.radius = parse_length(c.get("R"), r.length_unit, "R");
    try {
        greens::validate(r.geometry);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("geometry: ") + e.what());
    }

    r.emitter.omega = omega;
    one_of("orient", c.get("orient"), {"axial", "radial"});
    r.emitter.orientation = c.get("orient") == "axial" ? potential::Orientation::axial : potential::Orientation::radial;
    if (!c.get("dipole").empty()) {
        r.emitter.dipole = to_number(c.get("dipole"), "dipole");
        if (!(r.emitter.dipole > 0.0)) throw ConfigError("'dipole' must be positive");
    }
    if (!c.get("linewidth").empty()) {
        const double g = to_number(c.get("linewidth"), "linewidth");
        if (!(g >= 0.0)) throw ConfigError("'linewidth' must be non-negative");
        r.emitter.linewidth = g;
    }

    one_of("computation", c.get("computation"), {"ground", "resonant-init", "resonant-steady"});
    if (cmd == "green") r.computation = Computation::green;
    else if (cmd == "modes") r.computation = Computation::modes;
    else if (c.get("computation") == "ground") r.computation = Computation::ground;
    else if (c.get("computation") == "resonant-init") r.computation = Computation::resonant_init;
    else r.computation = Computation::resonant_steady;

    one_of("spacing", c.get("spacing"), {"linear", "log"});
    one_of("zunit", c.get("zunit"), {"cOmega", "R", "nm"});
    const double zmin = to_number(c.get("zmin"), "zmin"), zmax = to_number(c.get("zmax"), "zmax");
    const int points = to_int(c.get("points"), "points");
    if (points < 1) throw ConfigError("'points' must be >= 1");
    if (!(zmin > 0.0) || !(zmax >= zmin)) throw ConfigError("need 0 < zmin <= zmax");
    if (points == 1 && zmax != zmin) throw ConfigError("a single point needs zmin == zmax");
    const std::string& zu = c.get("zunit");
    const double unit = zu == "cOmega" ? r.length_unit : zu == "R" ? r.geometry.radius : 1e-9;
    const bool log = c.get("spacing") == "log";
    for (int i = 0; i < points; ++i) {
        const double t = points == 1 ? 0.0 : double(i) / double(points - 1);
        const double v = log ? zmin * std::pow(zmax / zmin, t) : zmin + (zmax - zmin) * t;
        r.z.push_back(v * unit);
    }

    r.options.rel_tol = to_number(c.get("rel_tol"), "rel_tol");
    r.options.green_rel_tol = to_number(c.get("green_rel_tol"), "green_rel_tol");
    if (!(r.options.rel_tol > 0.0 && r.options.rel_tol < 1.0)) throw ConfigError("'rel_tol' must lie in (0, 1)");
    if (!(r.options.green_rel_tol > 0.0 && r.options.green_rel_tol < 1.0)) throw ConfigError("'green_rel_tol' must lie in (0, 1)");
    one_of("decomposition", c.get("decomposition"), {"on", "off"});
    r.decomposition = c.get("decomposition") == "on";
    if (!c.get("xi").empty()) {
        const double xi = to_number(c.get("xi"), "xi");
        if (!(xi > 0.0)) throw ConfigError("'xi' must be positive");
        r.xi = xi;
    }
    r.output = c.get("output");
    r.jobs = to_int(c.get("jobs"), "jobs");
    if (r.jobs < 1) throw ConfigError("'jobs' must be >= 1");
    return r;
}

std::string canonical(const RunConfig& c)
{
    std::string s;
    for (const auto& k : config_keys())
        if (k.hashed) s += k.name + "=" + c.get(k.name) + "\n";
    return s;
}

std::uint64_t config_hash(const RunConfig& c)
{
    // FNV-1a
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canonical(c)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(const RunConfig& c)
{
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << config_hash(c);
    return s.str();
}

std::vector<std::string> header_lines(const RunConfig& c)
{
    std::vector<std::string> lines;
    lines.push_back(std::string("# vdw ") + CYLVDW_VERSION);
    lines.push_back("# config_hash=" + hash_hex(c));
    for (const auto& k : config_keys()) lines.push_back("# " + k.name + "=" + c.get(k.name));
    return lines;
}

RunConfig parse_header(std::istream& in)
{
    RunConfig c;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) != 0) break;
        const std::string body = line.substr(2);
        const auto eq = body.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = body.substr(0, eq);
        if (key == "config_hash") continue;
        c.set(key, body.substr(eq + 1));
    }
    return c;
}

}  // namespace cylvdw::cli
