#pragma once

// Sectioned key = value configuration. Keys carry their unit as a suffix
// (radius_nm, lambda_sn_MHz, ...); values are converted to SI / rad/s here.
// Frequencies and rates given in Hz units are cyclic and become 2 pi f.

#include <json.hpp>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "skybus/skybus.h"

namespace cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DynamicsConfig {
    std::string kind = "coherent";   // coherent | nonreciprocal
    std::string direction = "both";  // nv_to_tr | tr_to_nv | both
    std::string route = "full";      // full | effective | both
    std::string coupling_source = "explicit";  // explicit | geometry
    int gm_cutoff = 8;
    skb_tripartite model{};
    double duration = 0.0;  // s
    int samples = 0;
    skb_evolve_options evolve{};
};

struct ThieleConfig {
    skb_thiele params{};
    bool gyrocoupling_from_texture = true;
    bool pulse_enabled = true;
    skb_sinc_pulse pulse{};
    bool susceptibility_auto = true;
    std::string initial = "rest";  // rest | circular
    double initial_offset = 0.0;   // m
    double duration = 0.0;
    double sample_step = 0.0;
    int substeps = 1;
    std::vector<double> sample_times;  // explicit grid; overrides duration / sample_step
    skb_window window = SKB_WINDOW_HANN;
};

struct FieldMapConfig {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    int nx = 0, ny = 0;
    double height = 0.0;  // above the top face
};

struct SweepConfig {
    std::vector<double> standoff, disk_radius, reduced_radius;
    std::vector<double> squid_center_x, squid_center_z, squid_radius;
    std::vector<double> asymmetry, bias_flux;
    std::vector<double> damping_ratio;
};

struct Config {
    skb_material material{};
    skb_skyrmion skyrmion{};
    skb_nv nv{};
    skb_transmon transmon{};
    skb_squid squid{};
    skb_quadrature quad{};
    DynamicsConfig dynamics;
    ThieleConfig thiele;
    FieldMapConfig field_map;
    SweepConfig sweep;
    nlohmann::json echo;  // resolved values under their unit-suffixed keys
    std::set<std::string> sections;  // sections present in the file
};

// Empty path gives the built-in defaults.
Config load_config(const std::string& path);

}  // namespace cli
