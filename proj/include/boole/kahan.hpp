#pragma once

#include <cstddef>

namespace boole {

/// Compensated (Neumaier variant of Kahan) running sum.
///
/// The Neumaier update also compensates when the incoming term is larger
/// in magnitude than the running sum, which happens routinely with the
/// heavy-tailed observables used here.
class KahanSum {
public:
    constexpr KahanSum() = default;
    constexpr explicit KahanSum(double initial) : sum_(initial) {}

    constexpr KahanSum& operator+=(double x) noexcept
    {
        const double t = sum_ + x;
        if ((sum_ < 0 ? -sum_ : sum_) >= (x < 0 ? -x : x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }

    [[nodiscard]] constexpr double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace boole
