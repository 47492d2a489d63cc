#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <vector>

namespace coxsort {

using Rational = boost::multiprecision::cpp_rational;

// Power series truncated after q^order.
class Series {
public:
    explicit Series(std::size_t order) : c_(order + 1) {}
    Series(std::size_t order, std::vector<Rational> coefficients) : c_(order + 1) {
        for (std::size_t i = 0; i < coefficients.size() && i <= order; ++i) c_[i] = coefficients[i];
    }

    std::size_t order() const { return c_.size() - 1; }
    const Rational& operator[](std::size_t i) const { return c_.at(i); }
    Rational& operator[](std::size_t i) { return c_.at(i); }

    friend Series operator+(const Series& a, const Series& b) {
        Series out(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= out.order(); ++i) out[i] = a[i] + b[i];
        return out;
    }
    friend Series operator-(const Series& a, const Series& b) {
        Series out(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= out.order(); ++i) out[i] = a[i] - b[i];
        return out;
    }
    friend Series operator*(const Series& a, const Series& b) {
        Series out(std::min(a.order(), b.order()));
        for (std::size_t i = 0; i <= out.order(); ++i)
            for (std::size_t j = 0; j <= i; ++j) out[i] += a[j] * b[i - j];
        return out;
    }
    Series operator+(const Rational& x) const {
        Series out = *this;
        out[0] += x;
        return out;
    }
    Series operator-(const Rational& x) const { return *this + Rational(-x); }

    // Loses the top coefficient.
    Series derivative() const {
        Series out(order() == 0 ? 0 : order() - 1);
        for (std::size_t i = 1; i <= order(); ++i) out[i - 1] = c_[i] * static_cast<long>(i);
        return out;
    }
    Series times_q() const {
        Series out(order() + 1);
        for (std::size_t i = 0; i <= order(); ++i) out[i + 1] = c_[i];
        return out;
    }
    // Requires zero constant term; loses the top coefficient.
    Series divided_by_q() const {
        if (c_[0] != 0) throw std::invalid_argument("series has a nonzero constant term");
        Series out(order() == 0 ? 0 : order() - 1);
        for (std::size_t i = 1; i <= order(); ++i) out[i - 1] = c_[i];
        return out;
    }
    Series reciprocal() const {
        if (c_[0] == 0) throw std::invalid_argument("reciprocal of a series with zero constant term");
        Series out(order());
        out[0] = 1 / c_[0];
        for (std::size_t i = 1; i <= order(); ++i) {
            Rational s = 0;
            for (std::size_t j = 1; j <= i; ++j) s += c_[j] * out[i - j];
            out[i] = -s / c_[0];
        }
        return out;
    }

private:
    std::vector<Rational> c_;
};

}  // namespace coxsort
