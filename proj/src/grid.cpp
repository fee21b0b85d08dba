#include "mcf/grid.hpp"

#include "mcf/util.hpp"

namespace mcf {

Grid Grid::make_1d(int nx, double x0, double x1, BoundaryTag west, BoundaryTag east) {
    if (nx < 1 || !(x1 > x0)) throw ConfigError("grid: need nx >= 1 and x1 > x0");
    Grid g;
    g.nx = nx;
    g.ny = 1;
    g.two_d = false;
    g.x0 = x0;
    g.dx = (x1 - x0) / nx;
    g.dy = 0.0;
    g.bc = {west, east, BoundaryTag::extrapolation, BoundaryTag::extrapolation};
    return g;
}

Grid Grid::make_2d(int nx, int ny, double x0, double x1, double y0, double y1,
                   const std::array<BoundaryTag, 4>& bc) {
    if (nx < 1 || ny < 1 || !(x1 > x0) || !(y1 > y0))
        throw ConfigError("grid: need positive extents");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.two_d = true;
    g.x0 = x0;
    g.y0 = y0;
    g.dx = (x1 - x0) / nx;
    g.dy = (y1 - y0) / ny;
    g.bc = bc;
    return g;
}

namespace {

// Ghost source index and sign for one boundary layer position.
inline int mirror_lo(int gcell, int begin) { return 2 * begin - 1 - gcell; }
inline int mirror_hi(int gcell, int end) { return 2 * end - 1 - gcell; }

} // namespace

void fill_ghosts(const Grid& g, std::vector<double>& a, int parity_x, int parity_y) {
    const int ng = g.ng;
    // x sweeps (every row, including ghost rows once y is done; do x first on
    // interior rows, then y over full rows so corners are consistent).
    for (int j = g.jb(); j < g.je(); ++j) {
        double* row = a.data() + g.idx(0, j);
        const int ib = g.ib(), ie = g.ie();
        switch (g.bc[int(Side::west)]) {
            case BoundaryTag::extrapolation:
                for (int i = 0; i < ng; ++i) row[i] = row[ib];
                break;
            case BoundaryTag::periodic:
                for (int i = 0; i < ng; ++i) row[i] = row[ie - ng + i];
                break;
            case BoundaryTag::reflective:
                for (int i = 0; i < ng; ++i) row[i] = parity_x * row[mirror_lo(i, ib)];
                break;
        }
        switch (g.bc[int(Side::east)]) {
            case BoundaryTag::extrapolation:
                for (int i = ie; i < ie + ng; ++i) row[i] = row[ie - 1];
                break;
            case BoundaryTag::periodic:
                for (int i = ie; i < ie + ng; ++i) row[i] = row[ib + (i - ie)];
                break;
            case BoundaryTag::reflective:
                for (int i = ie; i < ie + ng; ++i) row[i] = parity_x * row[mirror_hi(i, ie)];
                break;
        }
    }
    if (!g.two_d) return;
    const int sx = g.sx();
    for (int i = 0; i < sx; ++i) {
        const int jb = g.jb(), je = g.je();
        auto at = [&](int j) -> double& { return a[g.idx(i, j)]; };
        switch (g.bc[int(Side::south)]) {
            case BoundaryTag::extrapolation:
                for (int j = 0; j < ng; ++j) at(j) = at(jb);
                break;
            case BoundaryTag::periodic:
                for (int j = 0; j < ng; ++j) at(j) = at(je - ng + j);
                break;
            case BoundaryTag::reflective:
                for (int j = 0; j < ng; ++j) at(j) = parity_y * at(mirror_lo(j, jb));
                break;
        }
        switch (g.bc[int(Side::north)]) {
            case BoundaryTag::extrapolation:
                for (int j = je; j < je + ng; ++j) at(j) = at(je - 1);
                break;
            case BoundaryTag::periodic:
                for (int j = je; j < je + ng; ++j) at(j) = at(jb + (j - je));
                break;
            case BoundaryTag::reflective:
                for (int j = je; j < je + ng; ++j) at(j) = parity_y * at(mirror_hi(j, je));
                break;
        }
    }
}

} // namespace mcf
