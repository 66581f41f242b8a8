#pragma once

#include <vector>

namespace seld {

/// Minimum-cost one-to-one assignment on a rectangular cost matrix
/// (rows x cols, row-major). Matches min(rows, cols) pairs.
/// assignment[r] is the column paired with row r, or -1 when the row is
/// left unassigned (possible only when rows > cols).
struct AssignmentResult {
    std::vector<int> assignment;
    double total_cost = 0.0;
};

AssignmentResult solve_assignment(const std::vector<double>& cost, int rows,
                                  int cols);

}  // namespace seld
