#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "lambdisp/sweep.hpp"

namespace lambdisp {

class SchemaError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string model_name(MaterialKind kind);
MaterialKind model_from_name(const std::string& name);

/// Row set of a dispersion CSV, grouped for the analysis pipeline.
struct DispersionTable {
    std::string model;
    double sigma_mpa = 0.0;
    double thickness = 0.0;  // m, recovered from fd/f
    // mode label -> (fd [Hz*m], cp [m/s]) samples, ascending in fd
    std::map<std::string, std::vector<std::pair<double, double>>> modes;
};

void write_dispersion_csv(std::ostream& os, const DispersionSet& set);
void write_dispersion_csv(const std::string& path, const DispersionSet& set);

DispersionTable read_dispersion_csv(std::istream& is,
                                    const std::string& origin = "<stream>");
DispersionTable read_dispersion_csv(const std::string& path);

}  // namespace lambdisp
