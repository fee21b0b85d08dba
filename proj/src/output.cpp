#include "mcf/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "mcf/util.hpp"

namespace mcf {

namespace {

void put(std::ofstream& o, double v, bool lead_sep = true) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (lead_sep) o << ',';
    o << buf;
}

} // namespace

double mixture_temperature(const FlowField& U, const PrimField& W,
                           const std::vector<MaterialParams>& mats, std::size_t c) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k < U.nphase; ++k) {
        num += U.m[k][c] * mats[k].cv * W.T[k][c];
        den += U.m[k][c] * mats[k].cv;
    }
    return num / den;
}

void write_csv_1d(const std::string& path, const FlowField& U, const PrimField& W,
                  const std::vector<MaterialParams>& mats) {
    const Grid& g = U.grid;
    std::ofstream o(path);
    if (!o) throw ConfigError("cannot open output file '" + path + "'");
    o << "x,rho,u,p,T";
    for (int k = 0; k < U.nphase; ++k)
        o << ",rho_" << k << ",alpha_" << k << ",T_" << k;
    o << "\n";
    for (int i = g.ib(); i < g.ie(); ++i) {
        const std::size_t c = g.idx(i, 0);
        double rho = 0.0;
        for (int k = 0; k < U.nphase; ++k) rho += U.m[k][c];
        put(o, g.xc(i), false);
        put(o, rho);
        put(o, W.vel[0][c]);
        put(o, W.p[c]);
        put(o, mixture_temperature(U, W, mats, c));
        for (int k = 0; k < U.nphase; ++k) {
            put(o, W.rho[k][c]);
            put(o, W.alpha[k][c]);
            put(o, W.T[k][c]);
        }
        o << "\n";
    }
}

void write_vtk_2d(const std::string& path, const FlowField& U, const PrimField& W,
                  const std::vector<MaterialParams>& mats) {
    const Grid& g = U.grid;
    std::ofstream o(path);
    if (!o) throw ConfigError("cannot open output file '" + path + "'");
    const std::size_t ncell = g.interior_count();

    o << "# vtk DataFile Version 3.0\nmcflow snapshot\nASCII\n";
    o << "DATASET STRUCTURED_POINTS\n";
    o << "DIMENSIONS " << g.nx + 1 << " " << g.ny + 1 << " 1\n";
    o << "ORIGIN " << g.x0 << " " << g.y0 << " 0\n";
    o << "SPACING " << g.dx << " " << g.dy << " 1\n";
    o << "CELL_DATA " << ncell << "\n";

    char buf[32];
    auto scalar = [&](const std::string& name, auto&& value_of) {
        o << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (int j = g.jb(); j < g.je(); ++j)
            for (int i = g.ib(); i < g.ie(); ++i) {
                std::snprintf(buf, sizeof buf, "%.9g", value_of(g.idx(i, j)));
                o << buf << "\n";
            }
    };

    auto mix_rho = [&](std::size_t c) {
        double r = 0.0;
        for (int k = 0; k < U.nphase; ++k) r += U.m[k][c];
        return r;
    };
    scalar("rho", mix_rho);
    scalar("p", [&](std::size_t c) { return W.p[c]; });
    scalar("T", [&](std::size_t c) { return mixture_temperature(U, W, mats, c); });
    scalar("speed", [&](std::size_t c) {
        return std::sqrt(sq(W.vel[0][c]) + sq(W.vel[1][c]));
    });
    for (int k = 0; k < U.nphase; ++k)
        scalar("alpha_" + std::to_string(k), [&](std::size_t c) { return W.alpha[k][c]; });

    // Numerical Schlieren from the mixture density gradient.
    std::vector<double> grad(g.size(), 0.0);
    double gmax = 0.0;
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            const int im = (i > g.ib()) ? i - 1 : i;
            const int ip = (i < g.ie() - 1) ? i + 1 : i;
            const int jm = (j > g.jb()) ? j - 1 : j;
            const int jp = (j < g.je() - 1) ? j + 1 : j;
            const double gx =
                (mix_rho(g.idx(ip, j)) - mix_rho(g.idx(im, j))) / ((ip - im) * g.dx);
            const double gy =
                (mix_rho(g.idx(i, jp)) - mix_rho(g.idx(i, jm))) / ((jp - jm) * g.dy);
            grad[c] = std::sqrt(gx * gx + gy * gy);
            gmax = std::max(gmax, grad[c]);
        }
    const double c_exp = 40.0;
    scalar("schlieren", [&](std::size_t c) {
        return gmax > 0.0 ? std::exp(-c_exp * grad[c] / gmax) : 1.0;
    });

    o << "VECTORS velocity double\n";
    for (int j = g.jb(); j < g.je(); ++j)
        for (int i = g.ib(); i < g.ie(); ++i) {
            const std::size_t c = g.idx(i, j);
            std::snprintf(buf, sizeof buf, "%.9g", W.vel[0][c]);
            o << buf << " ";
            std::snprintf(buf, sizeof buf, "%.9g", W.vel[1][c]);
            o << buf << " 0\n";
        }
}

} // namespace mcf
