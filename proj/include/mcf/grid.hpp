#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace mcf {

enum class BoundaryTag { extrapolation, periodic, reflective };

enum class Side { west = 0, east = 1, south = 2, north = 3 };

/// Structured Cartesian grid, 1D or 2D, with a fixed two-cell ghost layer
/// (the widest stencil in use is the MUSCL reconstruction).
struct Grid {
    int nx = 0, ny = 1;
    int ng = 2;
    bool two_d = false;
    double x0 = 0.0, y0 = 0.0;
    double dx = 0.0, dy = 0.0;
    std::array<BoundaryTag, 4> bc{BoundaryTag::extrapolation, BoundaryTag::extrapolation,
                                  BoundaryTag::extrapolation, BoundaryTag::extrapolation};

    static Grid make_1d(int nx, double x0, double x1, BoundaryTag west, BoundaryTag east);
    static Grid make_2d(int nx, int ny, double x0, double x1, double y0, double y1,
                        const std::array<BoundaryTag, 4>& bc);

    int sx() const { return nx + 2 * ng; }
    int sy() const { return two_d ? ny + 2 * ng : 1; }
    std::size_t size() const { return static_cast<std::size_t>(sx()) * sy(); }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * sx() + i; }

    // Interior index ranges (ghost cells excluded).
    int ib() const { return ng; }
    int ie() const { return ng + nx; }
    int jb() const { return two_d ? ng : 0; }
    int je() const { return two_d ? ng + ny : 1; }

    double xc(int i) const { return x0 + (i - ng + 0.5) * dx; }
    double yc(int j) const { return two_d ? y0 + (j - ng + 0.5) * dy : 0.0; }

    std::size_t interior_count() const { return static_cast<std::size_t>(nx) * (two_d ? ny : 1); }
};

/// Fills ghost cells of a cell-centered array. `parity_x`/`parity_y` are +1
/// for scalars and tangential velocity components, -1 for the velocity
/// component normal to a reflective boundary.
void fill_ghosts(const Grid& g, std::vector<double>& a, int parity_x = 1, int parity_y = 1);

} // namespace mcf
