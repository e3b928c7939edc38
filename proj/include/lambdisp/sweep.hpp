#pragma once

#include <optional>
#include <string>

#include "lambdisp/eigensolver.hpp"

namespace lambdisp {

struct DispersionSample {
    double k;   // rad/m
    double f;   // Hz
    double cp;  // m/s
};

struct ModeBranch {
    std::string label;  // "S0", "A0", "S1", ... or "U<n>" when unclassified
    std::vector<DispersionSample> samples;
};

struct DispersionSet {
    Material material;
    double sigma = 0.0;  // Pa
    double thickness = 0.0;
    double dx1 = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> k_grid;
    std::vector<ModeBranch> branches;

    const ModeBranch* find(const std::string& label) const;
};

/// Midplane symmetry classification of a mode shape on the full dof set:
/// 'S' when u1 is even and u2 odd about x2 = 0, 'A' for the converse,
/// 'U' when neither dominates.
char classify_mode(const VecC& eigvec_full, const UnitCellMesh& mesh,
                   double score_threshold = 0.95);

struct SweepOptions {
    int jobs = 1;
    double mac_threshold = 0.9;
    double symmetry_threshold = 0.95;
    AssemblyOptions assembly;
    EigenSolveOptions eigen;
};

class SweepError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

DispersionSet sweep(const Material& mat, const PreStressState& state,
                    const UnitCellMesh& mesh, const std::vector<double>& k_grid,
                    int n_modes, const SweepOptions& opts = {});

}  // namespace lambdisp
