#include "lambdisp/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace lambdisp {

const ModeBranch* DispersionSet::find(const std::string& label) const {
    for (const auto& b : branches)
        if (b.label == label) return &b;
    return nullptr;
}

char classify_mode(const VecC& eigvec_full, const UnitCellMesh& mesh,
                   double score_threshold) {
    const int nxn = mesh.nodes_x();
    const int nyn = mesh.nodes_y();
    double sym_energy = 0.0, total = 0.0;
    for (int iy = 0; iy < nyn; ++iy) {
        const int iym = nyn - 1 - iy;  // mirror row about the midplane
        for (int ix = 0; ix < nxn; ++ix) {
            const int p = mesh.node_index(ix, iy);
            const int q = mesh.node_index(ix, iym);
            const std::complex<double> u1 = eigvec_full(2 * p);
            const std::complex<double> u2 = eigvec_full(2 * p + 1);
            const std::complex<double> u1m = eigvec_full(2 * q);
            const std::complex<double> u2m = eigvec_full(2 * q + 1);
            // S family: u1 even, u2 odd about x2 = 0
            sym_energy += 0.25 * (std::norm(u1 + u1m) + std::norm(u2 - u2m));
            total += std::norm(u1) + std::norm(u2);
        }
    }
    if (total <= 0.0) return 'U';
    const double score_s = sym_energy / total;
    if (score_s >= score_threshold) return 'S';
    if (1.0 - score_s >= score_threshold) return 'A';
    return 'U';
}

namespace {

double mac(const VecC& a, const VecC& b) {
    const double num = std::norm(a.dot(b));
    return num / (a.squaredNorm() * b.squaredNorm());
}

struct KPointResult {
    std::vector<double> omega;
    std::vector<VecC> vec_full;
};

struct TrackedBranch {
    std::vector<DispersionSample> samples;
    VecC last_vec;
    int votes_s = 0, votes_a = 0, votes_u = 0;
};

}  // namespace

DispersionSet sweep(const Material& mat, const PreStressState& state,
                    const UnitCellMesh& mesh, const std::vector<double>& k_grid,
                    int n_modes, const SweepOptions& opts) {
    if (k_grid.empty() || k_grid.front() <= 0.0 ||
        !std::is_sorted(k_grid.begin(), k_grid.end()))
        throw std::domain_error(
            "sweep: k_grid must be sorted ascending with k_grid[0] > 0");

    const AssembledSystem sys = assemble(mesh, mat, state, opts.assembly);
    const int nk = static_cast<int>(k_grid.size());
    std::vector<KPointResult> results(nk);

    auto solve_point = [&](int i) {
        const FloquetReduced red = floquet_reduce(sys, mesh, k_grid[i]);
        std::vector<EigenPair> pairs;
        try {
            pairs = solve_eigen(red.Kbar, red.Mbar, n_modes, opts.eigen);
        } catch (const std::exception& e) {
            throw SweepError("sweep: eigen solve failed at k=" +
                             std::to_string(k_grid[i]) + " rad/m: " + e.what());
        }
        for (const auto& p : pairs) {
            results[i].omega.push_back(p.omega);
            results[i].vec_full.push_back(expand_to_full(red, p.vec));
        }
    };

    if (opts.jobs <= 1) {
        for (int i = 0; i < nk; ++i) solve_point(i);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        std::vector<std::exception_ptr> errors(opts.jobs);
        for (int w = 0; w < opts.jobs; ++w)
            workers.emplace_back([&, w]() {
                try {
                    for (int i = next++; i < nk; i = next++) solve_point(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        for (auto& t : workers) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    // Branch continuation by MAC matching between adjacent k points.
    std::vector<TrackedBranch> branches;
    for (int i = 0; i < nk; ++i) {
        const auto& res = results[i];
        const int nm = static_cast<int>(res.omega.size());
        std::vector<int> branch_of_mode(nm, -1);
        std::vector<bool> branch_used(branches.size(), false);

        // greedy best-MAC assignment against branches extended at the
        // previous k point
        while (true) {
            double best = opts.mac_threshold;
            int bi = -1, mi = -1;
            for (std::size_t b = 0; b < branches.size(); ++b) {
                if (branch_used[b] || branches[b].last_vec.size() == 0) continue;
                for (int m = 0; m < nm; ++m) {
                    if (branch_of_mode[m] >= 0) continue;
                    const double v = mac(branches[b].last_vec, res.vec_full[m]);
                    if (v > best) {
                        best = v;
                        bi = static_cast<int>(b);
                        mi = m;
                    }
                }
            }
            if (bi < 0) break;
            branch_of_mode[mi] = bi;
            branch_used[bi] = true;
        }
        for (int m = 0; m < nm; ++m) {
            if (res.omega[m] <= 0.0) continue;
            int b = branch_of_mode[m];
            if (b < 0) {
                branches.emplace_back();
                b = static_cast<int>(branches.size()) - 1;
            }
            auto& br = branches[b];
            const double f = res.omega[m] / (2.0 * M_PI);
            br.samples.push_back({k_grid[i], f, res.omega[m] / k_grid[i]});
            br.last_vec = res.vec_full[m];
            switch (classify_mode(res.vec_full[m], mesh,
                                  opts.symmetry_threshold)) {
                case 'S': ++br.votes_s; break;
                case 'A': ++br.votes_a; break;
                default: ++br.votes_u; break;
            }
        }
    }

    DispersionSet out;
    out.material = mat;
    out.sigma = state.sigma_applied;
    out.thickness = mesh.thickness;
    out.dx1 = mesh.dx1;
    out.nx = mesh.nx;
    out.ny = mesh.ny;
    out.k_grid = k_grid;

    // Majority vote per branch, then number each family by the frequency
    // of its first sample (fundamentals enter lowest).
    struct Labeled {
        char family;
        double f0;
        std::vector<DispersionSample> samples;
    };
    std::vector<Labeled> labeled;
    for (auto& br : branches) {
        if (br.samples.empty()) continue;
        char fam = 'U';
        if (br.votes_s > br.votes_a && br.votes_s > br.votes_u) fam = 'S';
        else if (br.votes_a > br.votes_s && br.votes_a > br.votes_u) fam = 'A';
        labeled.push_back({fam, br.samples.front().f, std::move(br.samples)});
    }
    std::sort(labeled.begin(), labeled.end(),
              [](const Labeled& a, const Labeled& b) { return a.f0 < b.f0; });
    int ns = 0, na = 0, nu = 0;
    for (auto& l : labeled) {
        ModeBranch mb;
        if (l.family == 'S') mb.label = "S" + std::to_string(ns++);
        else if (l.family == 'A') mb.label = "A" + std::to_string(na++);
        else mb.label = "U" + std::to_string(nu++);
        mb.samples = std::move(l.samples);
        out.branches.push_back(std::move(mb));
    }
    return out;
}

}  // namespace lambdisp
