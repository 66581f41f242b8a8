#include "seldkit/hungarian.hpp"

#include <algorithm>
#include <limits>

namespace seld {

AssignmentResult solve_assignment(const std::vector<double>& cost, int rows,
                                  int cols) {
    AssignmentResult result;
    result.assignment.assign(static_cast<std::size_t>(std::max(rows, 0)), -1);
    if (rows <= 0 || cols <= 0) {
        return result;
    }

    // Pad to a square matrix; dummy cells cost 0 so they never distort the
    // choice among real pairs.
    const int n = std::max(rows, cols);
    std::vector<double> a(static_cast<std::size_t>(n + 1) *
                              static_cast<std::size_t>(n + 1),
                          0.0);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            a[static_cast<std::size_t>(r + 1) * (n + 1) + (c + 1)] =
                cost[static_cast<std::size_t>(r) * cols + c];
        }
    }

    // shortest augmenting path with potentials (1-based, column 0 is a
    // virtual root)
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<double> v(static_cast<std::size_t>(n + 1), 0.0);
    std::vector<int> match(static_cast<std::size_t>(n + 1), 0);
    std::vector<int> way(static_cast<std::size_t>(n + 1), 0);

    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n + 1), inf);
        std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
        do {
            used[static_cast<std::size_t>(j0)] = 1;
            const int i0 = match[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur =
                    a[static_cast<std::size_t>(i0) * (n + 1) + j] -
                    u[static_cast<std::size_t>(i0)] -
                    v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(
                        match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] =
                match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    for (int j = 1; j <= n; ++j) {
        const int r = match[static_cast<std::size_t>(j)] - 1;
        const int c = j - 1;
        if (r >= 0 && r < rows && c < cols) {
            result.assignment[static_cast<std::size_t>(r)] = c;
            result.total_cost += cost[static_cast<std::size_t>(r) * cols + c];
        }
    }
    return result;
}

}  // namespace seld
