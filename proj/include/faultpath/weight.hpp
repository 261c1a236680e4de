#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>

#include "faultpath/errors.hpp"

namespace faultpath {

// Exact edge/path weight. `base` is the scaled input weight, `tiebreak` a
// perturbation channel that makes every shortest path unique. Ordering is
// lexicographic, addition componentwise and overflow-checked.
struct CompositeWeight {
    std::uint64_t base = 0;
    std::uint64_t tiebreak = 0;

    constexpr CompositeWeight() = default;
    constexpr CompositeWeight(std::uint64_t b, std::uint64_t t) : base(b), tiebreak(t) {}

    friend constexpr auto operator<=>(const CompositeWeight&, const CompositeWeight&) = default;

    CompositeWeight& operator+=(const CompositeWeight& o) {
        if (__builtin_add_overflow(base, o.base, &base) ||
            __builtin_add_overflow(tiebreak, o.tiebreak, &tiebreak))
            throw OverflowError("composite weight overflow");
        return *this;
    }
    friend CompositeWeight operator+(CompositeWeight a, const CompositeWeight& b) { return a += b; }

    // Caller guarantees b <= a componentwise-consistently (a is a sum containing b).
    friend CompositeWeight operator-(const CompositeWeight& a, const CompositeWeight& b) {
        if (a.base < b.base || a.tiebreak < b.tiebreak)
            throw OverflowError("composite weight underflow");
        return {a.base - b.base, a.tiebreak - b.tiebreak};
    }
};

inline std::ostream& operator<<(std::ostream& os, const CompositeWeight& w) {
    return os << '(' << w.base << ',' << w.tiebreak << ')';
}

// A finite composite length or Unreachable (+inf). Unreachable compares above
// every finite value and absorbs addition.
class Length {
public:
    constexpr Length() = default;  // zero
    constexpr Length(CompositeWeight w) : w_(w), finite_(true) {}  // NOLINT(implicit)
    static constexpr Length inf() {
        Length l;
        l.finite_ = false;
        return l;
    }

    constexpr bool finite() const { return finite_; }
    constexpr bool is_inf() const { return !finite_; }
    const CompositeWeight& value() const {
        if (!finite_) throw UnreachableError("length is unreachable");
        return w_;
    }
    // Raw composite; meaningless when infinite.
    constexpr const CompositeWeight& raw() const { return w_; }

    friend constexpr bool operator==(const Length& a, const Length& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.w_ == b.w_;
    }
    friend constexpr std::strong_ordering operator<=>(const Length& a, const Length& b) {
        if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
        return a.w_ <=> b.w_;
    }

    friend Length operator+(const Length& a, const Length& b) {
        if (!a.finite_ || !b.finite_) return inf();
        return Length(a.w_ + b.w_);
    }
    friend Length operator+(const Length& a, const CompositeWeight& b) {
        if (!a.finite_) return inf();
        return Length(a.w_ + b);
    }

private:
    CompositeWeight w_{};
    bool finite_ = true;
};

inline std::ostream& operator<<(std::ostream& os, const Length& l) {
    if (l.is_inf()) return os << "inf";
    return os << l.raw();
}

}  // namespace faultpath
