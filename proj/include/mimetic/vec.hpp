#pragma once
// Flat array of doubles with the vector-space operators the integrator needs.
// Arithmetic goes through the dispatched row kernels.

#include "mimetic/error.hpp"
#include "mimetic/simd.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace mimetic {

class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t n, double value = 0.0) : d_(n, value) {}
    Vec(std::initializer_list<double> xs) : d_(xs) {}
    explicit Vec(std::vector<double> xs) : d_(std::move(xs)) {}

    std::size_t size() const { return d_.size(); }
    double* data() { return d_.data(); }
    const double* data() const { return d_.data(); }
    double& operator[](std::size_t i) { return d_[i]; }
    double operator[](std::size_t i) const { return d_[i]; }
    auto begin() { return d_.begin(); }
    auto end() { return d_.end(); }
    auto begin() const { return d_.begin(); }
    auto end() const { return d_.end(); }
    const std::vector<double>& std() const { return d_; }

    Vec& axpy(double a, const Vec& x)
    {
        check_same(x);
        simd::kernels().axpy(d_.data(), x.data(), d_.size(), a);
        return *this;
    }
    Vec& operator+=(const Vec& x) { return axpy(1.0, x); }
    Vec& operator-=(const Vec& x) { return axpy(-1.0, x); }
    Vec& operator*=(double s)
    {
        for (double& v : d_) v *= s;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double s, Vec a) { return a *= s; }

private:
    void check_same(const Vec& x) const
    {
        if (x.size() != size())
            throw ShapeError("Vec: length mismatch " + std::to_string(size()) + " vs " + std::to_string(x.size()));
    }
    std::vector<double> d_;
};

// Plain sequential sum of a[i]*b[i]; the reduction order is fixed.
inline double dot(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double max_abs(const Vec& a)
{
    double m = 0.0;
    for (double v : a) {
        if (v != v) return v;
        const double av = v < 0 ? -v : v;
        if (av > m) m = av;
    }
    return m;
}

}  // namespace mimetic
