#pragma once

#include <compare>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>

namespace mwcau {

// Exact rational multiple of pi, reduced and normalized into [0, 2). The
// value "p/q" denotes p*pi/q; arithmetic is exact (no floating point state).
struct Phase {
    long long num = 0;
    long long den = 1;

    Phase() = default;

    Phase(long long n, long long d) : num(n), den(d) { normalize(); }

    static Phase zero() { return Phase(); }
    static Phase pi() { return Phase(1, 1); }

    void normalize() {
        if (den == 0) den = 1;  // guarded by parse; never constructed with 0
        if (den < 0) {
            den = -den;
            num = -num;
        }
        long long period = 2 * den;
        num %= period;
        if (num < 0) num += period;
        long long g = std::gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Phase operator+(const Phase& o) const {
        return Phase(num * o.den + o.num * den, den * o.den);
    }

    Phase operator-() const { return Phase(-num, den); }

    bool is_zero() const { return num == 0; }

    // Radian value (for the tensor oracle only; stored state stays exact).
    double radians() const;

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "p", "p/q", optional leading minus; anything else is rejected.
    static std::optional<Phase> parse(const std::string& s) {
        if (s.empty()) return std::nullopt;
        std::size_t pos = 0;
        auto read_int = [&](long long& out) -> bool {
            std::size_t start = pos;
            if (pos < s.size() && s[pos] == '-') ++pos;
            std::size_t digits = pos;
            while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
            if (pos == digits) return false;
            out = std::strtoll(s.substr(start, pos - start).c_str(), nullptr, 10);
            return true;
        };
        long long n = 0, d = 1;
        if (!read_int(n)) return std::nullopt;
        if (pos < s.size()) {
            if (s[pos] != '/') return std::nullopt;
            ++pos;
            if (!read_int(d) || d <= 0) return std::nullopt;
            if (pos != s.size()) return std::nullopt;
        }
        return Phase(n, d);
    }

    auto operator<=>(const Phase&) const = default;
};

inline double Phase::radians() const {
    return 3.14159265358979323846 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace mwcau
