#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

namespace hqcp {

// Non-negative cost value with a distinguished saturating infinity.
// Infinity is absorbing under addition and maximal under comparison.
class Cost {
public:
    constexpr Cost() : v_(0.0) {}
    explicit constexpr Cost(double v) : v_(v) {}

    static constexpr Cost infinite() {
        return Cost(std::numeric_limits<double>::infinity());
    }

    bool isInfinite() const { return std::isinf(v_); }
    double value() const { return v_; }

    Cost operator+(Cost o) const { return Cost(v_ + o.v_); }
    Cost& operator+=(Cost o) {
        v_ += o.v_;
        return *this;
    }

    auto operator<=>(const Cost&) const = default;

    std::string str() const {
        if (isInfinite()) return "inf";
        std::string s = std::to_string(v_);
        // trim trailing zeros
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }

private:
    double v_;
};

}  // namespace hqcp
