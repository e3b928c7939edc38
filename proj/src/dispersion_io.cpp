#include "lambdisp/dispersion_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lambdisp {

std::string model_name(MaterialKind kind) {
    switch (kind) {
        case MaterialKind::Linear: return "linear";
        case MaterialKind::NeoHooke: return "neo_hooke";
        case MaterialKind::Murnaghan: return "murnaghan";
    }
    return "unknown";
}

MaterialKind model_from_name(const std::string& name) {
    if (name == "linear") return MaterialKind::Linear;
    if (name == "neo_hooke") return MaterialKind::NeoHooke;
    if (name == "murnaghan") return MaterialKind::Murnaghan;
    throw SchemaError("unknown material model '" + name + "'");
}

static const char* kHeader =
    "model,sigma_MPa,mode,k_rad_per_m,f_Hz,cp_m_per_s,fd_MHzmm";

void write_dispersion_csv(std::ostream& os, const DispersionSet& set) {
    os << kHeader << "\n";
    std::ostringstream buf;
    buf.precision(12);
    const std::string model = model_name(set.material.kind);
    const double sigma_mpa = set.sigma / 1e6;
    for (const auto& br : set.branches)
        for (const auto& s : br.samples) {
            buf.str("");
            // fd in MHz*mm = 1e-3 * Hz*m
            buf << model << ',' << sigma_mpa << ',' << br.label << ',' << s.k
                << ',' << s.f << ',' << s.cp << ','
                << s.f * set.thickness * 1e-3;
            os << buf.str() << "\n";
        }
}

void write_dispersion_csv(const std::string& path, const DispersionSet& set) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_dispersion_csv(os, set);
}

DispersionTable read_dispersion_csv(std::istream& is,
                                    const std::string& origin) {
    std::string line;
    if (!std::getline(is, line) || line != kHeader)
        throw SchemaError(origin + ": missing or wrong header, expected '" +
                          kHeader + "'");
    DispersionTable tab;
    bool first = true;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string model, sigma_s, mode, k_s, f_s, cp_s, fd_s;
        if (!std::getline(ss, model, ',') || !std::getline(ss, sigma_s, ',') ||
            !std::getline(ss, mode, ',') || !std::getline(ss, k_s, ',') ||
            !std::getline(ss, f_s, ',') || !std::getline(ss, cp_s, ',') ||
            !std::getline(ss, fd_s, ','))
            throw SchemaError(origin + ":" + std::to_string(row) +
                              ": expected 7 columns");
        double sigma, f, cp, fd;
        try {
            sigma = std::stod(sigma_s);
            std::stod(k_s);
            f = std::stod(f_s);
            cp = std::stod(cp_s);
            fd = std::stod(fd_s);
        } catch (const std::exception&) {
            throw SchemaError(origin + ":" + std::to_string(row) +
                              ": non-numeric field");
        }
        if (first) {
            tab.model = model;
            tab.sigma_mpa = sigma;
            first = false;
        } else if (model != tab.model || sigma != tab.sigma_mpa) {
            throw SchemaError(origin + ":" + std::to_string(row) +
                              ": mixed model/sigma within one file");
        }
        if (f > 0.0) tab.thickness = fd * 1e3 / f;
        tab.modes[mode].emplace_back(fd * 1e3, cp);  // fd stored in Hz*m
    }
    if (first) throw SchemaError(origin + ": no data rows");
    for (auto& [mode, samples] : tab.modes)
        std::sort(samples.begin(), samples.end());
    return tab;
}

DispersionTable read_dispersion_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_dispersion_csv(is, path);
}

}  // namespace lambdisp
