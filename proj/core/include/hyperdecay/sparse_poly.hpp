#pragma once

#include <complex>
#include <compare>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hyperdecay {

using cplx = std::complex<double>;

class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int n) : e_(static_cast<std::size_t>(n), 0) {}
    MultiIndex(std::initializer_list<int> e);
    explicit MultiIndex(std::vector<int> e);

    static MultiIndex unit(int n, int j);

    int dim() const { return static_cast<int>(e_.size()); }
    int order() const;
    int operator[](int j) const { return e_[static_cast<std::size_t>(j)]; }
    int& operator[](int j) { return e_[static_cast<std::size_t>(j)]; }
    const std::vector<int>& entries() const { return e_; }

    // xi^alpha
    double power(std::span<const double> xi) const;
    cplx power(std::span<const cplx> xi) const;

    MultiIndex operator+(const MultiIndex& o) const;

    auto operator<=>(const MultiIndex&) const = default;
    bool operator==(const MultiIndex&) const = default;

private:
    std::vector<int> e_;
};

// Degree first, then reverse lexicographic so (1,0) precedes (0,1).
bool graded_less(const MultiIndex& a, const MultiIndex& b);

class SparsePoly {
public:
    SparsePoly() = default;
    explicit SparsePoly(int n) : n_(n) {}

    static SparsePoly constant(int n, cplx c);
    static SparsePoly monomial(const MultiIndex& a, cplx c);
    // c * |xi|^2
    static SparsePoly norm_squared(int n, cplx c = 1.0);

    int dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    // -1 for the zero polynomial
    int degree() const;
    int min_degree() const;

    void add_term(const MultiIndex& a, cplx c);
    cplx coeff(const MultiIndex& a) const;
    const std::map<MultiIndex, cplx>& terms() const { return terms_; }

    cplx operator()(std::span<const double> xi) const;
    cplx operator()(std::span<const cplx> xi) const;

    SparsePoly homogeneous_part(int d) const;
    bool has_real_coefficients(double tol = 0.0) const;

    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    SparsePoly& operator*=(cplx s);
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(SparsePoly a, cplx s) { return a *= s; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);

    std::string to_string() const;

private:
    int n_ = 0;
    std::map<MultiIndex, cplx> terms_;
};

}  // namespace hyperdecay
