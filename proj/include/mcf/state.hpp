#pragma once

#include <array>
#include <vector>

#include "mcf/grid.hpp"
#include "mcf/types.hpp"

namespace mcf {

/// Per-cell conserved vector: partial densities m_k = alpha_k*rho_k, momentum,
/// mixture total energy, and the first N-1 volume fractions (the last one is
/// recovered from saturation).
struct ConservedState {
    std::vector<double> m;
    std::array<double, 2> mom{0.0, 0.0};
    double rhoE = 0.0;
    std::vector<double> alpha; // N-1 entries

    double rho() const {
        double r = 0.0;
        for (double mk : m) r += mk;
        return r;
    }
    double alpha_last() const {
        double a = 1.0;
        for (double al : alpha) a -= al;
        return a;
    }
};

/// Per-cell primitive view: phase densities, velocity, equilibrium pressure,
/// full set of volume fractions, and per-phase temperatures/energies.
struct PrimitiveState {
    std::vector<double> rho;
    std::array<double, 2> vel{0.0, 0.0};
    double p = 0.0;
    std::vector<double> alpha; // N entries, sums to one
    std::vector<double> T;
    std::vector<double> e;
};

/// Clip applied only inside divisions by alpha; stored fractions are never
/// modified.
inline constexpr double kAlphaDivisionGuard = 1e-12;

ConservedState conserved_from_primitive(const PrimitiveState& w,
                                        const std::vector<MaterialParams>& mats);

/// Pressure from the isobaric mixture closure, temperatures from each phase's
/// EOS. Throws NumericalError on non-positive fractions or failed closure.
PrimitiveState primitive_from_conserved(const ConservedState& u,
                                        const std::vector<MaterialParams>& mats);

/// Per-phase total energies alpha_k*rho_k*E_k with E_k = e_k(rho_k, p) +
/// |u|^2/2; their sum reproduces the mixture rho*E to round-off.
std::vector<double> reconstruct_phase_energies(const PrimitiveState& w,
                                               const std::vector<MaterialParams>& mats);

/// Structure-of-arrays storage for the evolved fields on a grid.
struct FlowField {
    Grid grid;
    int nphase = 0;
    std::vector<std::vector<double>> m;      // nphase arrays
    std::array<std::vector<double>, 2> mom;  // mom[1] unused in 1D
    std::vector<double> rhoE;
    std::vector<std::vector<double>> alpha;  // nphase-1 stored arrays

    static FlowField allocate(const Grid& g, int nphase);

    ConservedState gather(std::size_t c) const;
    void scatter(std::size_t c, const ConservedState& u);
};

/// Structure-of-arrays primitive scratch aligned with a FlowField.
struct PrimField {
    std::vector<std::vector<double>> rho;   // nphase
    std::array<std::vector<double>, 2> vel;
    std::vector<double> p;
    std::vector<std::vector<double>> T;     // nphase
    std::vector<std::vector<double>> e;     // nphase
    std::vector<std::vector<double>> alpha; // nphase (all N, derived last)

    static PrimField allocate(const Grid& g, int nphase);

    PrimitiveState gather(std::size_t c, int nphase) const;
    void scatter(std::size_t c, const PrimitiveState& w);
};

/// Runs the mixture closure on every interior cell. Errors carry cell indices.
void decode_all(const FlowField& U, const std::vector<MaterialParams>& mats, PrimField& W);

/// Rebuilds conserved arrays from primitives (interior cells).
void encode_all(const PrimField& W, const std::vector<MaterialParams>& mats, FlowField& U);

} // namespace mcf
