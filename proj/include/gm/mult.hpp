#pragma once

#include <cstdint>
#include <string>

#include "gm/error.hpp"

namespace gm {

/// Edge multiplicity: a natural number or countable infinity. Also reused for
/// degrees, delay values and share amounts, which live in the same semiring.
class Mult {
public:
    constexpr Mult() : v_(0) {}

    static constexpr Mult fin(std::uint64_t k) {
        Mult m;
        m.v_ = static_cast<std::int64_t>(k);
        return m;
    }

    static constexpr Mult inf() {
        Mult m;
        m.v_ = -1;
        return m;
    }

    constexpr bool is_inf() const { return v_ < 0; }
    constexpr bool is_zero() const { return v_ == 0; }
    constexpr bool is_fin() const { return v_ >= 0; }

    /// Finite value accessor; calling it on infinity is a logic error.
    std::uint64_t count() const {
        if (is_inf())
            fail(errc::precondition_failed, "finite multiplicity expected");
        return static_cast<std::uint64_t>(v_);
    }

    friend constexpr bool operator==(Mult a, Mult b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Mult a, Mult b) { return a.v_ != b.v_; }

    /// Order with infinity on top, so max() doubles as supremum.
    friend constexpr bool operator<(Mult a, Mult b) {
        if (a.is_inf())
            return false;
        if (b.is_inf())
            return true;
        return a.v_ < b.v_;
    }

    friend constexpr Mult operator+(Mult a, Mult b) {
        if (a.is_inf() || b.is_inf())
            return inf();
        return fin(static_cast<std::uint64_t>(a.v_) + static_cast<std::uint64_t>(b.v_));
    }

    Mult& operator+=(Mult o) {
        *this = *this + o;
        return *this;
    }

    friend constexpr Mult operator*(Mult a, Mult b) {
        if (a.is_zero() || b.is_zero())
            return Mult();
        if (a.is_inf() || b.is_inf())
            return inf();
        return fin(static_cast<std::uint64_t>(a.v_) * static_cast<std::uint64_t>(b.v_));
    }

    static constexpr Mult max(Mult a, Mult b) { return a < b ? b : a; }

    std::string str() const { return is_inf() ? "inf" : std::to_string(v_); }

private:
    std::int64_t v_; // -1 encodes infinity
};

} // namespace gm
