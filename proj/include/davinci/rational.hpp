#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "davinci/errors.hpp"

namespace davinci {

// Exact rational arithmetic on int64 numerator/denominator. Pattern
// coordinates, lattice clipping and the replication fit all run on this
// type so that counting results are exact integers, never rounded.
class Rational {
  public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    // Largest integer <= value.
    std::int64_t floor() const {
        std::int64_t q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    std::int64_t ceil() const { return -(-*this).floor(); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw Error(ErrorCode::InvalidArgument, "rational division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num_ * b.den_ < b.num_ * a.den_;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return a < b || a == b; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

    // Fractional part in [0, 1): value - floor(value).
    Rational frac() const { return *this - Rational(floor()); }

    // Serialized form: integer "n" when den == 1, otherwise "n/d".
    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Parses "n", "n/d" and finite decimals like "-0.375".
    static Rational parse(const std::string& text);

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  private:
    void normalize() {
        if (den_ == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    std::int64_t num_;
    std::int64_t den_;
};

// 2D vector over rationals; used for fractional (lattice) coordinates.
struct RVec2 {
    Rational x, y;

    friend RVec2 operator+(const RVec2& a, const RVec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend RVec2 operator-(const RVec2& a, const RVec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend RVec2 operator*(const Rational& s, const RVec2& v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const RVec2& a, const RVec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const RVec2& a, const RVec2& b) { return !(a == b); }

    friend Rational cross(const RVec2& a, const RVec2& b) { return a.x * b.y - a.y * b.x; }
    friend Rational dot(const RVec2& a, const RVec2& b) { return a.x * b.x + a.y * b.y; }
};

// Strict weak order on directions by counterclockwise angle from +x,
// exact over rationals. Zero vectors are not valid directions.
bool ccw_direction_less(const RVec2& a, const RVec2& b);

}  // namespace davinci
