#include "lambdisp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lambdisp/dispersion_io.hpp"

namespace lambdisp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                          value + "'");
    }
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    if (v != std::floor(v))
        throw ConfigError("config: key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"material",
     {"model", "E_GPa", "nu", "rho", "ell_GPa", "m_GPa", "n_GPa"}},
    {"geometry", {"d_mm", "dx1_mm", "nx", "ny"}},
    {"sweep", {"k_min", "k_max", "n_k", "n_modes", "spacing"}},
    {"loads", {"sigma_MPa"}},
    {"wavefield",
     {"f_start_Hz", "f_step_Hz", "f_max_Hz", "n_shifts", "shift_Hz",
      "duration_ms", "l_mes_mm", "dl_mm", "sample_rate_Hz", "seed",
      "noise_std"}},
    {"output", {"dir"}},
};

}  // namespace

std::vector<double> RunConfig::k_grid() const {
    if (!has_sweep) throw ConfigError("config: [sweep] section required");
    std::vector<double> grid(n_k);
    if (log_spacing) {
        const double l0 = std::log(k_min), l1 = std::log(k_max);
        for (int i = 0; i < n_k; ++i)
            grid[i] = std::exp(l0 + (l1 - l0) * i / (n_k - 1));
    } else {
        for (int i = 0; i < n_k; ++i)
            grid[i] = k_min + (k_max - k_min) * i / (n_k - 1);
    }
    return grid;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");

    std::map<std::string, std::map<std::string, std::string>> raw;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!kKnownKeys.count(section))
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value' inside a section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kKnownKeys.at(section).count(key))
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "' in [" + section +
                              "]");
        if (raw[section].count(key))
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": duplicate key '" + key + "'");
        raw[section][key] = value;
    }

    RunConfig cfg;
    try {
        if (raw.count("material")) {
            const auto& m = raw.at("material");
            auto get = [&](const std::string& k) -> const std::string& {
                auto it = m.find(k);
                if (it == m.end())
                    throw ConfigError("config: [material] missing key '" + k +
                                      "'");
                return it->second;
            };
            cfg.kind = model_from_name(get("model"));
            const double E = to_double("E_GPa", get("E_GPa")) * 1e9;
            const double nu = to_double("nu", get("nu"));
            const double rho = to_double("rho", get("rho"));
            const auto [lambda, mu] = from_engineering(E, nu);
            double ell = 0.0, m3 = 0.0, n3 = 0.0;
            if (cfg.kind == MaterialKind::Murnaghan) {
                ell = to_double("ell_GPa", get("ell_GPa")) * 1e9;
                m3 = to_double("m_GPa", get("m_GPa")) * 1e9;
                n3 = to_double("n_GPa", get("n_GPa")) * 1e9;
            } else {
                for (const char* k : {"ell_GPa", "m_GPa", "n_GPa"})
                    if (m.count(k) && to_double(k, m.at(k)) != 0.0)
                        throw ConfigError(
                            "config: third-order constants require "
                            "model = murnaghan");
            }
            cfg.material = Material::make(cfg.kind, lambda, mu, rho, ell, m3,
                                          n3);
            cfg.has_material = true;
        }
        if (raw.count("geometry")) {
            const auto& g = raw.at("geometry");
            for (const char* k : {"d_mm", "dx1_mm", "nx", "ny"})
                if (!g.count(k))
                    throw ConfigError("config: [geometry] missing key '" +
                                      std::string(k) + "'");
            cfg.d = to_double("d_mm", g.at("d_mm")) * 1e-3;
            cfg.dx1 = to_double("dx1_mm", g.at("dx1_mm")) * 1e-3;
            cfg.nx = to_int("nx", g.at("nx"));
            cfg.ny = to_int("ny", g.at("ny"));
            if (cfg.d <= 0.0 || cfg.dx1 <= 0.0 || cfg.nx < 1 || cfg.ny < 2)
                throw ConfigError(
                    "config: [geometry] requires d, dx1 > 0, nx >= 1, "
                    "ny >= 2");
            cfg.has_geometry = true;
        }
        if (raw.count("sweep")) {
            const auto& s = raw.at("sweep");
            for (const char* k : {"k_min", "k_max", "n_k"})
                if (!s.count(k))
                    throw ConfigError("config: [sweep] missing key '" +
                                      std::string(k) + "'");
            cfg.k_min = to_double("k_min", s.at("k_min"));
            cfg.k_max = to_double("k_max", s.at("k_max"));
            cfg.n_k = to_int("n_k", s.at("n_k"));
            if (s.count("n_modes"))
                cfg.n_modes = to_int("n_modes", s.at("n_modes"));
            if (s.count("spacing")) {
                const std::string& sp = s.at("spacing");
                if (sp == "log")
                    cfg.log_spacing = true;
                else if (sp == "linear")
                    cfg.log_spacing = false;
                else
                    throw ConfigError(
                        "config: spacing must be 'log' or 'linear'");
            }
            if (cfg.k_min <= 0.0 || cfg.k_max <= cfg.k_min || cfg.n_k < 2 ||
                cfg.n_modes < 1)
                throw ConfigError(
                    "config: [sweep] requires 0 < k_min < k_max, n_k >= 2, "
                    "n_modes >= 1");
            cfg.has_sweep = true;
        }
        if (raw.count("loads")) {
            const auto& l = raw.at("loads");
            if (!l.count("sigma_MPa"))
                throw ConfigError("config: [loads] missing key 'sigma_MPa'");
            for (double s : to_list("sigma_MPa", l.at("sigma_MPa")))
                cfg.sigmas.push_back(s * 1e6);
            if (cfg.sigmas.empty())
                throw ConfigError("config: [loads] sigma_MPa list is empty");
            std::sort(cfg.sigmas.begin(), cfg.sigmas.end());
            if (std::adjacent_find(cfg.sigmas.begin(), cfg.sigmas.end()) !=
                cfg.sigmas.end())
                throw ConfigError("config: duplicate sigma_MPa entries");
            cfg.has_loads = true;
        }
        if (raw.count("wavefield")) {
            const auto& w = raw.at("wavefield");
            for (const char* k :
                 {"f_start_Hz", "f_step_Hz", "f_max_Hz", "n_shifts",
                  "shift_Hz", "duration_ms", "l_mes_mm", "dl_mm"})
                if (!w.count(k))
                    throw ConfigError("config: [wavefield] missing key '" +
                                      std::string(k) + "'");
            cfg.excitation.f_start = to_double("f_start_Hz", w.at("f_start_Hz"));
            cfg.excitation.f_step = to_double("f_step_Hz", w.at("f_step_Hz"));
            cfg.excitation.f_max = to_double("f_max_Hz", w.at("f_max_Hz"));
            cfg.excitation.n_shifts = to_int("n_shifts", w.at("n_shifts"));
            cfg.excitation.shift = to_double("shift_Hz", w.at("shift_Hz"));
            cfg.excitation.duration =
                to_double("duration_ms", w.at("duration_ms")) * 1e-3;
            cfg.path.l_mes = to_double("l_mes_mm", w.at("l_mes_mm")) * 1e-3;
            cfg.path.dl = to_double("dl_mm", w.at("dl_mm")) * 1e-3;
            if (w.count("sample_rate_Hz"))
                cfg.sample_rate =
                    to_double("sample_rate_Hz", w.at("sample_rate_Hz"));
            if (w.count("seed"))
                cfg.seed = static_cast<unsigned>(to_int("seed", w.at("seed")));
            if (w.count("noise_std"))
                cfg.noise_std = to_double("noise_std", w.at("noise_std"));
            cfg.excitation.validate();
            if (cfg.path.dl <= 0.0 || cfg.path.l_mes <= 20.0 * cfg.path.dl)
                throw ConfigError(
                    "config: [wavefield] requires dl > 0 and "
                    "l_mes > 20 dl");
            cfg.has_wavefield = true;
        }
        if (raw.count("output")) {
            const auto& o = raw.at("output");
            if (o.count("dir")) cfg.out_dir = o.at("dir");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

}  // namespace lambdisp
