#include "vibronic/presets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace vibronic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MoleculePreset make(std::string name, double e0, double hbar_omega, double j,
                    double lambda, double r1, double r2, double r3,
                    double s0, double s1, std::string notes) {
    MoleculePreset p;
    p.name = std::move(name);
    p.params =
        ModelParams::from_reorganization(e0, hbar_omega, j, lambda, "cm^-1");
    p.r1 = r1;
    p.r2 = r2;
    p.r3 = r3;
    p.reference_s0 = s0;
    p.reference_s1 = s1;
    p.notes = std::move(notes);
    return p;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

const std::vector<MoleculePreset>& builtin_presets() {
    static const std::vector<MoleculePreset> presets = {
        make("ammonia", 0.0, 1700.0, -60000.0, 160000.0, 0.8, 0.01, 0.0,
             0.43, 0.44,
             "umbrella inversion; the textbook symmetric double well"),
        make("benzene", 0.0, 1300.0, -25000.0, 40000.0, 1.3, 0.02, 0.0,
             0.07, 0.16, "aromatic ground state; delocalized single well"),
        make("3pyr", 2100.0, 1620.0, -2700.0, 16400.0, 0.3, 0.09, 1.3,
             0.03, 0.21,
             "pyridine excited triplet pair; chemically induced asymmetry, "
             "one-mode reduction of a multi-mode multi-state system"),
        make("ct", 0.0, 800.0, -2900.0, 7100.0, 0.8, 0.10, 0.0, 0.37, 0.61,
             "Creutz-Taube ion; frequency is the water libration mode that "
             "carries the distortion, J and lambda are debated"),
        make("prc", 556.0, 980.0, -1020.0, 1120.0, 1.8, 0.4, 0.6, 0.18, 0.56,
             "photosynthetic reaction centre special-pair radical cation; "
             "one-mode stand-in for ~70 modes, protein-induced asymmetry"),
        make("semibullvalene", 0.0, 1549.0, -20800.0, 45800.0, 0.9, 0.03,
             0.0, 0.22, 0.37, "Cope rearrangement double well"),
        make("ct-xps", 22000.0, 800.0, -2900.0, 7100.0, 0.8, 0.10, 27.5,
             kNaN, 0.0007,
             "Creutz-Taube ion with an X-ray core hole localizing the "
             "charge: a 22000 cm^-1 asymmetry switches the entanglement off"),
    };
    return presets;
}

ModelParams preset_model(const MoleculePreset& preset) {
    return from_dimensionless({preset.r1, preset.r2, preset.r3},
                              preset.params.hbar_omega,
                              preset.params.unit_label);
}

const MoleculePreset& find_preset(const std::string& name) {
    const std::string key = lower(name);
    for (const MoleculePreset& p : builtin_presets())
        if (lower(p.name) == key) return p;
    std::string known;
    for (const MoleculePreset& p : builtin_presets()) {
        if (!known.empty()) known += ", ";
        known += p.name;
    }
    throw std::invalid_argument("unknown preset '" + name +
                                "' (known: " + known + ")");
}

namespace {

nlohmann::json to_json(const MoleculePreset& p) {
    nlohmann::json j;
    j["name"] = p.name;
    j["e0"] = p.params.e0;
    j["hbar_omega"] = p.params.hbar_omega;
    j["j"] = p.params.j;
    j["delta"] = p.params.delta;
    j["unit"] = p.params.unit_label;
    j["r1"] = p.r1;
    j["r2"] = p.r2;
    j["r3"] = p.r3;
    j["reference_s0"] = std::isnan(p.reference_s0)
                            ? nlohmann::json()
                            : nlohmann::json(p.reference_s0);
    j["reference_s1"] = std::isnan(p.reference_s1)
                            ? nlohmann::json()
                            : nlohmann::json(p.reference_s1);
    j["notes"] = p.notes;
    return j;
}

double number_or_nan(const nlohmann::json& j) {
    return j.is_null() ? kNaN : j.get<double>();
}

MoleculePreset from_json(const nlohmann::json& j) {
    MoleculePreset p;
    p.name = j.at("name").get<std::string>();
    p.params.e0 = j.at("e0").get<double>();
    p.params.hbar_omega = j.at("hbar_omega").get<double>();
    p.params.j = j.at("j").get<double>();
    p.params.delta = j.at("delta").get<double>();
    p.params.unit_label = j.at("unit").get<std::string>();
    if (j.contains("r1")) {
        p.r1 = j.at("r1").get<double>();
        p.r2 = j.at("r2").get<double>();
        p.r3 = j.at("r3").get<double>();
    } else {  // user file without quoted ratios: use the exact ones
        const DerivedQuantities d = derive(p.params);
        p.r1 = d.r1.value_or(0.0);
        p.r2 = d.r2.value_or(0.0);
        p.r3 = d.r3;
    }
    p.reference_s0 = number_or_nan(j.at("reference_s0"));
    p.reference_s1 = number_or_nan(j.at("reference_s1"));
    p.notes = j.value("notes", "");
    return p;
}

}  // namespace

std::string presets_to_json(const std::vector<MoleculePreset>& presets) {
    nlohmann::json arr = nlohmann::json::array();
    for (const MoleculePreset& p : presets) arr.push_back(to_json(p));
    return arr.dump(2);
}

std::vector<MoleculePreset> presets_from_json(const std::string& json_text) {
    const nlohmann::json arr = nlohmann::json::parse(json_text);
    if (!arr.is_array())
        throw std::invalid_argument("preset file must hold a JSON array");
    std::vector<MoleculePreset> out;
    out.reserve(arr.size());
    for (const auto& j : arr) out.push_back(from_json(j));
    return out;
}

}  // namespace vibronic
