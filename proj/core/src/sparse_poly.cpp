#include "hyperdecay/sparse_poly.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "hyperdecay/error.hpp"

namespace hyperdecay {

MultiIndex::MultiIndex(std::initializer_list<int> e) : e_(e) {
    for (int v : e_)
        if (v < 0) throw ContractViolation("multi-index entries must be non-negative");
}

MultiIndex::MultiIndex(std::vector<int> e) : e_(std::move(e)) {
    for (int v : e_)
        if (v < 0) throw ContractViolation("multi-index entries must be non-negative");
}

MultiIndex MultiIndex::unit(int n, int j) {
    MultiIndex a(n);
    a[j] = 1;
    return a;
}

int MultiIndex::order() const { return std::accumulate(e_.begin(), e_.end(), 0); }

double MultiIndex::power(std::span<const double> xi) const {
    if (xi.size() != e_.size()) throw ContractViolation("multi-index dimension mismatch");
    double r = 1.0;
    for (std::size_t j = 0; j < e_.size(); ++j)
        for (int k = 0; k < e_[j]; ++k) r *= xi[j];
    return r;
}

cplx MultiIndex::power(std::span<const cplx> xi) const {
    if (xi.size() != e_.size()) throw ContractViolation("multi-index dimension mismatch");
    cplx r = 1.0;
    for (std::size_t j = 0; j < e_.size(); ++j)
        for (int k = 0; k < e_[j]; ++k) r *= xi[j];
    return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
    if (o.dim() != dim()) throw ContractViolation("multi-index dimension mismatch");
    MultiIndex r = *this;
    for (std::size_t j = 0; j < e_.size(); ++j) r.e_[j] += o.e_[j];
    return r;
}

bool graded_less(const MultiIndex& a, const MultiIndex& b) {
    int oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.entries() > b.entries();
}

SparsePoly SparsePoly::constant(int n, cplx c) {
    SparsePoly p(n);
    p.add_term(MultiIndex(n), c);
    return p;
}

SparsePoly SparsePoly::monomial(const MultiIndex& a, cplx c) {
    SparsePoly p(a.dim());
    p.add_term(a, c);
    return p;
}

SparsePoly SparsePoly::norm_squared(int n, cplx c) {
    SparsePoly p(n);
    for (int j = 0; j < n; ++j) {
        MultiIndex a(n);
        a[j] = 2;
        p.add_term(a, c);
    }
    return p;
}

int SparsePoly::degree() const {
    int d = -1;
    for (const auto& [a, c] : terms_) d = std::max(d, a.order());
    return d;
}

int SparsePoly::min_degree() const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first.order();
    for (const auto& [a, c] : terms_) d = std::min(d, a.order());
    return d;
}

void SparsePoly::add_term(const MultiIndex& a, cplx c) {
    if (a.dim() != n_) throw ContractViolation("term dimension does not match polynomial dimension");
    if (c == cplx(0.0)) return;
    auto it = terms_.find(a);
    if (it == terms_.end()) {
        terms_.emplace(a, c);
        return;
    }
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
}

cplx SparsePoly::coeff(const MultiIndex& a) const {
    auto it = terms_.find(a);
    return it == terms_.end() ? cplx(0.0) : it->second;
}

cplx SparsePoly::operator()(std::span<const double> xi) const {
    if (static_cast<int>(xi.size()) != n_)
        throw ContractViolation("xi has length " + std::to_string(xi.size()) + ", expected " + std::to_string(n_));
    cplx s = 0.0;
    for (const auto& [a, c] : terms_) s += c * a.power(xi);
    return s;
}

cplx SparsePoly::operator()(std::span<const cplx> xi) const {
    if (static_cast<int>(xi.size()) != n_)
        throw ContractViolation("xi has length " + std::to_string(xi.size()) + ", expected " + std::to_string(n_));
    cplx s = 0.0;
    for (const auto& [a, c] : terms_) s += c * a.power(xi);
    return s;
}

SparsePoly SparsePoly::homogeneous_part(int d) const {
    SparsePoly p(n_);
    for (const auto& [a, c] : terms_)
        if (a.order() == d) p.terms_.emplace(a, c);
    return p;
}

bool SparsePoly::has_real_coefficients(double tol) const {
    for (const auto& [a, c] : terms_)
        if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c))) return false;
    return true;
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    if (o.n_ != n_) throw ContractViolation("polynomial dimension mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    if (o.n_ != n_) throw ContractViolation("polynomial dimension mismatch");
    for (const auto& [a, c] : o.terms_) add_term(a, -c);
    return *this;
}

SparsePoly& SparsePoly::operator*=(cplx s) {
    if (s == cplx(0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [a, c] : terms_) c *= s;
    return *this;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    if (a.n_ != b.n_) throw ContractViolation("polynomial dimension mismatch");
    SparsePoly r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        char buf[64];
        if (c.imag() == 0.0)
            std::snprintf(buf, sizeof buf, "%.6g", c.real());
        else
            std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", c.real(), c.imag());
        os << buf;
        for (int j = 0; j < a.dim(); ++j) {
            if (a[j] == 0) continue;
            os << "*x" << (j + 1);
            if (a[j] > 1) os << '^' << a[j];
        }
    }
    return os.str();
}

}  // namespace hyperdecay
