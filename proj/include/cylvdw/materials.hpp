#pragma once

// Dielectric response models evaluable at complex frequency (rad/s).

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cylvdw/units.hpp"

namespace cylvdw::materials {

struct Constant {
    double eps = 1.0;
};

/// eps = 1 - wp^2 / (w (w + i gamma))
struct Drude {
    double omega_p = 0.0;
    double gamma = 0.0;
};

/// Drude with gamma = 0.
struct MeissnerLondon {
    double omega_p = 0.0;
};

struct Oscillator {
    double strength = 0.0;
    double omega = 0.0;
    double gamma = 0.0;
};

/// eps_inf + sum_j s_j w_j^2/(w_j^2 - w^2 - i g_j w)  [- wp^2/(w (w + i gamma)) if a free-carrier term is present]
struct LorentzDrude {
    double eps_inf = 1.0;
    std::vector<Oscillator> oscillators;
    std::optional<Drude> free_carriers;
};

struct PerfectConductor {};

using PermittivityModel = std::variant<Constant, Drude, MeissnerLondon, LorentzDrude, PerfectConductor>;

/// Value of eps(omega), or the perfect-conductor marker.
struct Permittivity {
    cplx value{1.0, 0.0};
    bool perfect_conductor = false;
};

/// Throws DomainError for invalid parameters (negative rates, eps < 1 constant).
void validate(const PermittivityModel& model);

Permittivity permittivity(const PermittivityModel& model, cplx omega);
bool is_perfect_conductor(const PermittivityModel& model);

/// delta = sqrt(2 gamma c^2 / (wp^2 w))
double skin_depth(double omega_p, double gamma, double omega);
/// Lambda_L = c / wp
double london_length(double omega_p);

struct MaterialPreset {
    std::string name;
    PermittivityModel model;
    std::string provenance;
};

std::vector<std::string> preset_names();
/// Named material. Oscillator-table presets are read from $VDW_DATA_DIR/<name>.dat when present.
MaterialPreset preset(const std::string& name);

/// Oscillator table: "epsilon_inf <v>", lines "s_j omega_j_eV gamma_j_eV", optional "drude wp_eV gamma_eV", '#' comments.
LorentzDrude parse_oscillator_table(std::istream& in, const std::string& source = "<stream>");
LorentzDrude load_oscillator_table(const std::filesystem::path& path);

/// Short human-readable description, e.g. "drude(wp=8.5 eV, gamma=0.0425 eV)".
std::string describe(const PermittivityModel& model);

}  // namespace cylvdw::materials
