#include "shellframe/grid.hpp"

namespace shellframe {

Grid::Grid(int n1_, int n2_, const Domain& dom, bool periodic1, bool periodic2)
    : n1(n1_), n2(n2_), a1min(dom.a1min), a2min(dom.a2min), p1(periodic1), p2(periodic2) {
    if (n1 < 4 || n2 < 4) throw validation_error("Grid: need at least 4 samples per coordinate");
    d1 = dom.extent1() / (p1 ? n1 : n1 - 1);
    d2 = dom.extent2() / (p2 ? n2 : n2 - 1);
}

ScalarField grid_partial(const ScalarField& f, int dir) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const int n = dir == 1 ? g.n1 : g.n2;
    const double h = dir == 1 ? g.d1 : g.d2;
    const bool periodic = dir == 1 ? g.p1 : g.p2;
    auto value = [&](int i, int j, int s) {
        return dir == 1 ? f.at(s, j) : f.at(i, s);
    };
    for (int i = 0; i < g.n1; ++i) {
        for (int j = 0; j < g.n2; ++j) {
            int s = dir == 1 ? i : j;
            double d;
            if (periodic) {
                d = (value(i, j, (s + 1) % n) - value(i, j, (s + n - 1) % n)) / (2.0 * h);
            } else if (s == 0) {
                d = (-3.0 * value(i, j, 0) + 4.0 * value(i, j, 1) - value(i, j, 2)) / (2.0 * h);
            } else if (s == n - 1) {
                d = (3.0 * value(i, j, n - 1) - 4.0 * value(i, j, n - 2) + value(i, j, n - 3)) / (2.0 * h);
            } else {
                d = (value(i, j, s + 1) - value(i, j, s - 1)) / (2.0 * h);
            }
            out.at(i, j) = d;
        }
    }
    return out;
}

} // namespace shellframe
