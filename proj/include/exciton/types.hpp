#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exciton {

// Argument outside the domain of an operation (z <= 0 for U, x = 0 for V_eff, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Gamma/digamma poles, integer alpha in f_even.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Iterative method did not reach its target; carries what it did reach.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Cylinder radius. The only physical parameter.
class Radius {
public:
    explicit Radius(double r) : r_(r) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw DomainError("radius must be positive and finite, got " + std::to_string(r));
    }
    double value() const noexcept { return r_; }
    operator double() const noexcept { return r_; }

private:
    double r_;
};

enum class Parity { Even, Odd };

inline std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

inline Parity parity_from_string(std::string_view s) {
    if (s == "even") return Parity::Even;
    if (s == "odd") return Parity::Odd;
    throw DomainError("unknown parity '" + std::string(s) + "'");
}

// Staggered half-line grid: x_i = (i + 1/2) h, i = 0..n-1, h = L/n.
// The mirror image -x_i carries the other half of the line.
class Grid1D {
public:
    Grid1D(double half_length, int n) : L_(half_length), n_(n) {
        if (!(half_length > 0.0) || !std::isfinite(half_length))
            throw DomainError("grid half-length must be positive");
        if (n < 1) throw DomainError("grid needs at least one point");
        h_ = L_ / n_;
    }
    double half_length() const noexcept { return L_; }
    int size() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    double node(int i) const noexcept { return (i + 0.5) * h_; }
    double cell_lo(int i) const noexcept { return i * h_; }
    double cell_hi(int i) const noexcept { return (i + 1) * h_; }
    Grid1D refined(int factor = 2) const { return Grid1D(L_, n_ * factor); }

private:
    double L_;
    int n_;
    double h_;
};

}  // namespace exciton
