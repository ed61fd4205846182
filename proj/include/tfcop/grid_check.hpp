#ifndef TFCOP_GRID_CHECK_HPP
#define TFCOP_GRID_CHECK_HPP

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace tfcop {

// Outcome of a sampled inequality check. `worst_violation` is the most
// negative slack observed; a check passes when it stays above -tolerance.
// Point checks only use the first entries of `worst_location`.
struct GridCheckReport {
    std::string check;
    int grid_size = 0;
    double tolerance = 0.0;
    double worst_violation = 0.0;
    std::array<double, 4> worst_location{0.0, 0.0, 0.0, 0.0};
    bool passed = false;
};

// n+1 equally spaced points covering [0,1] including both endpoints.
inline std::vector<double> uniform_grid(int n) {
    std::vector<double> g(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    return g;
}

// Tracks the minimum slack and where it occurred.
class ViolationTracker {
  public:
    void observe(double slack, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
        if (std::isnan(slack)) slack = -std::numeric_limits<double>::infinity();
        if (!seen_ || slack < worst_) {
            worst_ = slack;
            loc_ = {a, b, c, d};
            seen_ = true;
        }
    }
    GridCheckReport report(std::string check, int grid_size, double tol) const {
        GridCheckReport r;
        r.check = std::move(check);
        r.grid_size = grid_size;
        r.tolerance = tol;
        r.worst_violation = seen_ ? worst_ : 0.0;
        r.worst_location = loc_;
        r.passed = r.worst_violation >= -tol;
        return r;
    }
    double worst() const { return seen_ ? worst_ : 0.0; }

  private:
    bool seen_ = false;
    double worst_ = 0.0;
    std::array<double, 4> loc_{0.0, 0.0, 0.0, 0.0};
};

} // namespace tfcop

#endif
