#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace causalsurv {

// Neumaier-compensated accumulator; keeps reduction error below 1e-14 at
// desk scale regardless of summation order.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_total(const std::vector<double>& xs) {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

inline bool approx(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace causalsurv
