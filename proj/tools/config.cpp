#include "config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Reader {
public:
    explicit Reader(const boost::property_tree::ptree& tree) {
        for (const auto& [section, body] : tree) {
            if (body.empty() && !body.data().empty())
                throw ConfigError("key '" + section + "' appears outside any section");
            for (const auto& [key, value] : body) {
                if (!value.empty()) throw ConfigError("nested key in [" + section + "]");
                entries_[section][key] = value.data();
            }
        }
    }

    double number(const std::string& section, const std::string& key, double fallback, double scale = 1.0) {
        double v = fallback;
        if (auto s = take(section, key)) v = parse_number(section, key, *s);
        echo_[section][key] = v;
        return v * scale;
    }

    int integer(const std::string& section, const std::string& key, int fallback) {
        const double v = number(section, key, fallback);
        if (v != std::floor(v) || std::abs(v) > 1e9)
            throw ConfigError("[" + section + "] " + key + " must be an integer");
        echo_[section][key] = static_cast<int>(v);
        return static_cast<int>(v);
    }

    bool boolean(const std::string& section, const std::string& key, bool fallback) {
        bool v = fallback;
        if (auto s = take(section, key)) {
            if (*s == "true" || *s == "1" || *s == "yes") v = true;
            else if (*s == "false" || *s == "0" || *s == "no") v = false;
            else throw ConfigError("[" + section + "] " + key + " must be true or false");
        }
        echo_[section][key] = v;
        return v;
    }

    std::string choice(const std::string& section, const std::string& key, const std::string& fallback,
                       const std::set<std::string>& allowed) {
        std::string v = fallback;
        if (auto s = take(section, key)) v = *s;
        if (!allowed.count(v)) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw ConfigError("[" + section + "] " + key + " must be one of: " + list);
        }
        echo_[section][key] = v;
        return v;
    }

    // Comma-separated values, or start:stop:count for an inclusive linear range.
    std::vector<double> list(const std::string& section, const std::string& key, double scale = 1.0) {
        std::vector<double> out;
        auto s = take(section, key);
        if (!s) return out;
        if (s->find(':') != std::string::npos) {
            std::vector<std::string> parts;
            std::stringstream ss(*s);
            for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
            if (parts.size() != 3) throw ConfigError("[" + section + "] " + key + " range must be start:stop:count");
            const double a = parse_number(section, key, parts[0]), b = parse_number(section, key, parts[1]);
            const double n = parse_number(section, key, parts[2]);
            if (n < 1 || n != std::floor(n) || n > 100000)
                throw ConfigError("[" + section + "] " + key + " range count must be a positive integer");
            for (int i = 0; i < static_cast<int>(n); ++i)
                out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
        } else {
            std::stringstream ss(*s);
            for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_number(section, key, p));
        }
        echo_[section][key] = out;
        for (double& v : out) v *= scale;
        return out;
    }

    void reject_unknown() const {
        for (const auto& [section, keys] : entries_)
            for (const auto& [key, value] : keys)
                if (!used_.count(section + "." + key))
                    throw ConfigError("unknown key '" + key + "' in section [" + section + "]");
    }

    nlohmann::json echo() const { return echo_; }


private:
    std::optional<std::string> take(const std::string& section, const std::string& key) {
        used_.insert(section + "." + key);
        auto s = entries_.find(section);
        if (s == entries_.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        return k->second;
    }

    static double parse_number(const std::string& section, const std::string& key, std::string text) {
        const auto b = text.find_first_not_of(" \t");
        const auto e = text.find_last_not_of(" \t");
        text = b == std::string::npos ? "" : text.substr(b, e - b + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
            throw ConfigError("[" + section + "] " + key + ": '" + text + "' is not a number");
        return v;
    }

    std::map<std::string, std::map<std::string, std::string>> entries_;
    std::set<std::string> used_;
    nlohmann::json echo_ = nlohmann::json::object();
};

// Section headers are collected separately since the INI reader drops empty sections.
boost::property_tree::ptree read_tree(const std::string& path, std::set<std::string>& sections) {
    boost::property_tree::ptree tree;
    if (path.empty()) return tree;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    // '#' comments are accepted alongside ';'.
    std::stringstream filtered;
    for (std::string line; std::getline(in, line);) {
        const auto p = line.find_first_not_of(" \t");
        if (p != std::string::npos && line[p] == '#') continue;
        if (p != std::string::npos && line[p] == '[') {
            const auto q = line.find(']', p);
            if (q != std::string::npos) sections.insert(line.substr(p + 1, q - p - 1));
        }
        filtered << line << '\n';
    }
    try {
        boost::property_tree::ini_parser::read_ini(filtered, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("config parse error: " + std::string(e.message()) + " (line " +
                          std::to_string(e.line()) + ")");
    }
    return tree;
}

}  // namespace

Config load_config(const std::string& path) {
    Config c;
    Reader r(read_tree(path, c.sections));
    constexpr double nm = 1e-9, ns = 1e-9;
    const double MHz = kTwoPi * 1e6, GHz = kTwoPi * 1e9, kHz = kTwoPi * 1e3;
    const double half_pi = std::numbers::pi / 2.0;

    c.material.saturation_magnetization = r.number("material", "saturation_magnetization_A_per_m", 1e6);
    c.material.g_factor = r.number("material", "g_factor", 2.0);
    c.material.gilbert_damping = r.number("material", "gilbert_damping", 0.0);

    c.skyrmion.disk_radius = r.number("disk", "radius_nm", 100.0, nm);
    c.skyrmion.disk_thickness = r.number("disk", "thickness_nm", 5.0, nm);
    c.skyrmion.reduced_radius = r.number("skyrmion", "reduced_radius", 0.1);
    c.skyrmion.phase = r.number("skyrmion", "phase_rad", half_pi);
    c.skyrmion.chirality = r.integer("skyrmion", "chirality", 1);
    c.skyrmion.polarity = r.integer("skyrmion", "polarity", -1);
    c.skyrmion.topological_charge = r.integer("skyrmion", "topological_charge", -1);

    c.nv.standoff = r.number("nv", "standoff_nm", 5.0, nm);
    c.nv.zero_field_splitting = r.number("nv", "zero_field_splitting_GHz", 2.87, GHz);
    c.nv.axial_field = r.number("nv", "axial_field_mT", 0.0, 1e-3);

    c.transmon.ej_max = r.number("transmon", "ej_max_GHz", 50.0, GHz);
    c.transmon.ec = r.number("transmon", "ec_GHz", 0.2, GHz);
    c.transmon.asymmetry = r.number("transmon", "asymmetry", 0.06);
    c.transmon.bias_flux = r.number("transmon", "bias_flux_rad", half_pi);

    c.squid.center.x = r.number("squid", "center_x_nm", 50.0, nm);
    c.squid.center.y = r.number("squid", "center_y_nm", 0.0, nm);
    c.squid.center.z = r.number("squid", "center_z_nm", -10.0, nm);
    c.squid.radius = r.number("squid", "radius_nm", 50.0, nm);

    skb_quadrature_default(&c.quad);
    c.quad.radial_points = r.integer("quadrature", "radial_points", c.quad.radial_points);
    c.quad.azimuthal_points = r.integer("quadrature", "azimuthal_points", c.quad.azimuthal_points);
    c.quad.thickness_points = r.integer("quadrature", "thickness_points", c.quad.thickness_points);
    c.quad.loop_radial_points = r.integer("quadrature", "loop_radial_points", c.quad.loop_radial_points);
    c.quad.loop_azimuthal_points = r.integer("quadrature", "loop_azimuthal_points", c.quad.loop_azimuthal_points);
    c.quad.relative_tolerance = r.number("quadrature", "relative_tolerance", c.quad.relative_tolerance);
    c.quad.scheme = r.choice("quadrature", "scheme", "fixed", {"fixed", "adaptive"}) == "adaptive"
                        ? SKB_SCHEME_ADAPTIVE
                        : SKB_SCHEME_FIXED;
    c.quad.max_refinements = r.integer("quadrature", "max_refinements", c.quad.max_refinements);

    auto& d = c.dynamics;
    d.kind = r.choice("dynamics", "kind", "coherent", {"coherent", "nonreciprocal"});
    d.direction = r.choice("dynamics", "direction", "both", {"nv_to_tr", "tr_to_nv", "both"});
    d.route = r.choice("dynamics", "route", "full", {"full", "effective", "both"});
    d.coupling_source = r.choice("dynamics", "coupling_source", "explicit", {"explicit", "geometry"});
    d.gm_cutoff = r.integer("dynamics", "gm_cutoff", 8);
    auto& m = d.model;
    m.omega_nv = r.number("dynamics", "nv_frequency_GHz", 2.87, GHz);
    m.omega_tr = r.number("dynamics", "tr_frequency_GHz", 2.87, GHz);
    m.omega_gm = r.number("dynamics", "gm_frequency_GHz", 2.995, GHz);
    m.lambda_sn = r.number("dynamics", "lambda_sn_MHz", 12.5, MHz);
    m.lambda_st_t = r.number("dynamics", "lambda_st_MHz", 12.5, MHz);
    m.lambda_st_l = r.number("dynamics", "lambda_st_l_MHz", 0.0, MHz);
    m.include_longitudinal = r.boolean("dynamics", "include_longitudinal", false) ? 1 : 0;
    m.gamma_gm = r.number("dynamics", "gamma_gm_MHz", 0.0, MHz);
    m.gamma_nv_dc = r.number("dynamics", "gamma_nv_dc_kHz", 0.0, kHz);
    m.gamma_nv_dp = r.number("dynamics", "gamma_nv_dp_kHz", 10.0, kHz);
    m.gamma_tr_dc = r.number("dynamics", "gamma_tr_dc_kHz", 1.0 / (kTwoPi * 50e-6) * 1e-3, kHz);
    m.gamma_tr_dp = r.number("dynamics", "gamma_tr_dp_kHz", 0.5 / (kTwoPi * 50e-6) * 1e-3, kHz);
    const double drive1_amp = r.number("dynamics", "drive1_amplitude_MHz", 50.0, MHz);
    const double drive1_freq = r.number("dynamics", "drive1_frequency_GHz", 2.87, GHz);
    const double drive2_amp = r.number("dynamics", "drive2_amplitude_MHz", 3.125, MHz);
    const double drive2_default = (drive1_freq - 2.0 * drive1_amp) / GHz;
    const double drive2_freq = r.number("dynamics", "drive2_frequency_GHz", drive2_default, GHz);
    if (d.kind == "nonreciprocal") {
        m.n_drives = 2;
        m.drive_amplitude[0] = drive1_amp;
        m.drive_frequency[0] = drive1_freq;
        m.drive_amplitude[1] = drive2_amp;
        m.drive_frequency[1] = drive2_freq;
    }
    d.duration = r.number("dynamics", "duration_ns", 400.0, ns);
    d.samples = r.integer("dynamics", "samples", 801);
    skb_evolve_options_default(&d.evolve);
    d.evolve.rel_tol = r.number("dynamics", "rel_tol", d.evolve.rel_tol);
    d.evolve.abs_tol = r.number("dynamics", "abs_tol", d.evolve.abs_tol);
    if (d.samples < 2) throw ConfigError("[dynamics] samples must be at least 2");
    if (!(d.duration > 0.0)) throw ConfigError("[dynamics] duration_ns must be positive");

    auto& t = c.thiele;
    t.params.inertial_mass = r.number("thiele", "inertial_mass_kg", 5e-23);
    t.params.stiffness = r.number("thiele", "stiffness_N_per_m", 1e-3);
    t.params.damping = r.number("thiele", "damping_kg_per_s", 3.57e-16);
    const double g_override = r.number("thiele", "gyrocoupling_kg_per_s", 0.0);
    t.gyrocoupling_from_texture = g_override == 0.0;
    t.params.gyrocoupling = t.gyrocoupling_from_texture
                                ? skb_gyrocoupling(c.skyrmion.disk_thickness, c.material.saturation_magnetization,
                                                   c.skyrmion.topological_charge)
                                : g_override;
    t.pulse_enabled = r.boolean("thiele", "pulse", true);
    t.pulse.field_amplitude = r.number("thiele", "pulse_field_mT", 1.0, 1e-3);
    t.pulse.cutoff_frequency = r.number("thiele", "pulse_cutoff_GHz", 5.0, 1e9);
    t.pulse.time_shift = r.number("thiele", "pulse_shift_ns", 1.0, ns);
    const double chi = r.number("thiele", "susceptibility_N_per_T", 0.0);
    t.susceptibility_auto = chi == 0.0;
    // Static displacement chi B0 / k of 5% of the disk radius.
    t.pulse.susceptibility = t.susceptibility_auto && t.pulse.field_amplitude != 0.0
                                 ? 0.05 * c.skyrmion.disk_radius * t.params.stiffness / t.pulse.field_amplitude
                                 : chi;
    t.initial = r.choice("thiele", "initial", "rest", {"rest", "circular"});
    t.initial_offset = r.number("thiele", "initial_offset_nm", 5.0, nm);
    t.duration = r.number("thiele", "duration_ns", 200.0, ns);
    t.sample_step = r.number("thiele", "sample_step_ns", 0.01, ns);
    t.substeps = r.integer("thiele", "substeps", 1);
    t.sample_times = r.list("thiele", "sample_times_ns", ns);
    t.window = r.choice("thiele", "window", "hann", {"hann", "rectangular"}) == "rectangular" ? SKB_WINDOW_RECTANGULAR
                                                                                              : SKB_WINDOW_HANN;
    if (!(t.duration > 0.0) || !(t.sample_step > 0.0))
        throw ConfigError("[thiele] duration_ns and sample_step_ns must be positive");

    auto& f = c.field_map;
    f.x_min = r.number("field_map", "x_min_nm", -50.0, nm);
    f.x_max = r.number("field_map", "x_max_nm", 50.0, nm);
    f.nx = r.integer("field_map", "nx", 21);
    f.y_min = r.number("field_map", "y_min_nm", -50.0, nm);
    f.y_max = r.number("field_map", "y_max_nm", 50.0, nm);
    f.ny = r.integer("field_map", "ny", 21);
    f.height = r.number("field_map", "height_nm", 5.0, nm);
    if (f.nx < 1 || f.ny < 1) throw ConfigError("[field_map] nx and ny must be positive");

    auto& s = c.sweep;
    s.standoff = r.list("sweep", "standoff_nm", nm);
    s.disk_radius = r.list("sweep", "disk_radius_nm", nm);
    s.reduced_radius = r.list("sweep", "reduced_radius");
    s.squid_center_x = r.list("sweep", "squid_center_x_nm", nm);
    s.squid_center_z = r.list("sweep", "squid_center_z_nm", nm);
    s.squid_radius = r.list("sweep", "squid_radius_nm", nm);
    s.asymmetry = r.list("sweep", "asymmetry");
    s.bias_flux = r.list("sweep", "bias_flux_rad");
    s.damping_ratio = r.list("sweep", "damping_ratio");

    r.reject_unknown();
    static const std::set<std::string> known = {"material", "disk",     "skyrmion", "nv",         "squid", "transmon",
                                                "dynamics", "thiele",   "field_map", "quadrature", "sweep"};
    for (const auto& name : c.sections)
        if (!known.count(name)) throw ConfigError("unknown section [" + name + "]");
    c.echo = r.echo();

    return c;
}

}  // namespace cli
